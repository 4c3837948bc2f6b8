use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyhedral::{lattice_normal_from_spaces, Complex, Polyhedron};
use crate::{QVector, Result};

#[derive(Clone, Debug)]
pub struct RidgeBalance {
    /// Position in [`Complex::ridges`].
    pub ridge: usize,
    pub face: Polyhedron,
    pub balanced: bool,
    /// Weighted sum of the lattice normals of the facets around the ridge.
    pub residual: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub ridges: Vec<RidgeBalance>,
}

impl BalanceReport {
    pub fn is_balanced(&self) -> bool {
        self.ridges.iter().all(|r| r.balanced)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RidgeBalance> {
        self.ridges.iter().filter(|r| !r.balanced)
    }
}

/// For every ridge `τ`, sums `weight(σ) · u(σ, τ)` over the facets `σ ⊃ τ`
/// and tests whether the sum lies in the span of `τ`.
pub fn balancing_check(c: &Complex) -> Result<BalanceReport> {
    let n = c.ambient_dim();
    let ridges = c.ridges()?;
    let mut out = Vec::with_capacity(ridges.len());
    for (i, r) in ridges.iter().enumerate() {
        let tau_dir = r.face.direction_space();
        let tau_point = r.face.relint_point();
        let mut sum = vec![BigInt::zero(); n];
        for &pos in &r.facets {
            let sigma = c.facet_polyhedron(pos);
            let u = lattice_normal_from_spaces(
                &sigma.direction_space(),
                &tau_dir,
                &sigma.relint_point().sub(&tau_point),
            )?;
            let w = BigInt::from(c.facet_weight(pos));
            for (s, x) in sum.iter_mut().zip(&u) {
                *s += &w * x;
            }
        }
        let balanced = tau_dir.contains(&QVector::from_bigints(&sum));
        out.push(RidgeBalance {
            ridge: i,
            face: r.face.clone(),
            balanced,
            residual: sum,
        });
    }
    Ok(BalanceReport { ridges: out })
}
