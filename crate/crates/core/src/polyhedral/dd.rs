//! Double description method for polyhedral cones.
//!
//! Given `{y : A y ≥ 0, E y = 0}`, computes a lineality basis and the extreme
//! rays modulo lineality. Constraints are added one at a time. While the
//! current lineality space is not contained in the new constraint's kernel it
//! is split along one lineality direction; otherwise positive and negative
//! rays are combined pairwise, restricted to adjacent pairs by the
//! combinatorial (zero-set) test.

use num_traits::{Signed, Zero};

use crate::ratlin::{kernel, primitive_or_zero, QMatrix, QVector, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ConeGenerators {
    pub lineality: Vec<QVector>,
    pub rays: Vec<QVector>,
}

struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn of(ray: &QVector, constraints: &[QVector]) -> Self {
        let mut bits = vec![0u64; constraints.len().div_ceil(64)];
        for (i, a) in constraints.iter().enumerate() {
            if a.dot(ray).is_zero() {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        ZeroSet(bits)
    }

    fn meet(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

pub(crate) fn cone_generators(dim: usize, inequalities: &[QVector], equations: &[QVector]) -> ConeGenerators {
    let mut lineality: Vec<QVector> = if equations.is_empty() {
        QMatrix::identity(dim).rows().to_vec()
    } else {
        kernel(equations, dim)
    };
    let mut rays: Vec<QVector> = Vec::new();
    let mut processed: Vec<QVector> = Vec::new();

    for a in inequalities {
        if a.is_zero() {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut al0 = a.dot(&l0);
            if al0.is_negative() {
                l0 = l0.neg();
                al0 = -al0;
            }
            let project = |v: &QVector| {
                let f: Rational = -(a.dot(v) / &al0);
                if f.is_zero() {
                    v.clone()
                } else {
                    v.add_scaled(&f, &l0)
                }
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(|r| primitive_or_zero(&project(r))).collect();
            rays.push(primitive_or_zero(&l0));
        } else {
            let values: Vec<Rational> = rays.iter().map(|r| a.dot(r)).collect();
            let zero_sets: Vec<ZeroSet> = rays.iter().map(|r| ZeroSet::of(r, &processed)).collect();
            let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            let mut next: Vec<QVector> = (0..rays.len())
                .filter(|&i| !values[i].is_negative())
                .map(|i| rays[i].clone())
                .collect();
            for &p in &positive {
                for &n in &negative {
                    let common = zero_sets[p].meet(&zero_sets[n]);
                    let adjacent =
                        (0..rays.len()).all(|r| r == p || r == n || !common.is_subset_of(&zero_sets[r]));
                    if adjacent {
                        // (a·p) n - (a·n) p has a·x = 0
                        let v = rays[n].scale(&values[p]).sub(&rays[p].scale(&values[n]));
                        next.push(primitive_or_zero(&v));
                    }
                }
            }
            rays = next;
        }
        processed.push(a.clone());
    }
    rays.retain(|r| !r.is_zero());
    rays.sort();
    rays.dedup();
    ConeGenerators { lineality, rays }
}
