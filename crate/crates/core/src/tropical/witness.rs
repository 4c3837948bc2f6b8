use num_traits::{Signed, Zero};

use super::section::{meets_relint, AffineHyperplane};
use crate::polyhedral::Polyhedron;
use crate::ratlin::{lp_feasible, LinearProgram, QVector, Rational, Relation};
use crate::{Error, Result};

/// Which side of the hyperplane `F` lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `normal·x > offset` on `F`.
    Above,
    Below,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    pub hyperplane: AffineHyperplane,
    pub side: Side,
    /// Points of `H ∩ relint P` and `H ∩ relint Q`.
    pub point_p: QVector,
    pub point_q: QVector,
}

/// Ways a hyperplane can meet the relative interior of a polyhedron.
#[derive(Clone, Debug)]
enum Meet {
    /// A generator strictly below and one strictly above.
    Mixed(Gen, Gen),
    /// A lineality direction not parallel to the hyperplane.
    Lineality(QVector),
    /// The polyhedron lies in the hyperplane.
    Inside,
}

#[derive(Clone, Debug)]
enum Gen {
    Vertex(QVector),
    Ray(QVector),
}

impl Gen {
    /// Coefficients of `(h, c)` in the generator's value.
    fn row(&self) -> QVector {
        match self {
            Gen::Vertex(v) => v.extended(Rational::from_integer((-1).into())),
            Gen::Ray(r) => r.extended(zero()),
        }
    }
}

fn generators(p: &Polyhedron) -> Vec<Gen> {
    p.vertices()
        .iter()
        .cloned()
        .map(Gen::Vertex)
        .chain(p.rays().iter().cloned().map(Gen::Ray))
        .collect()
}

fn meet_options(p: &Polyhedron) -> Vec<Meet> {
    let gens = generators(p);
    let mut out = Vec::new();
    for a in &gens {
        for b in &gens {
            if !std::ptr::eq(a, b) {
                out.push(Meet::Mixed(a.clone(), b.clone()));
            }
        }
    }
    for l in p.lineality().echelon_basis() {
        out.push(Meet::Lineality(l.clone()));
    }
    out.push(Meet::Inside);
    out
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

fn add_meet(lp: &mut LinearProgram, p: &Polyhedron, m: &Meet) -> Result<()> {
    match m {
        Meet::Mixed(lo, hi) => {
            lp.add(lo.row().neg(), Relation::Gt, zero())?;
            lp.add(hi.row(), Relation::Gt, zero())?;
        }
        Meet::Lineality(l) => {
            lp.add(l.extended(zero()), Relation::Gt, zero())?;
        }
        Meet::Inside => {
            for g in generators(p) {
                lp.add(g.row(), Relation::Eq, zero())?;
            }
            for l in p.lineality().echelon_basis() {
                lp.add(l.extended(zero()), Relation::Eq, zero())?;
            }
        }
    }
    Ok(())
}

fn add_side(lp: &mut LinearProgram, f: &Polyhedron, side: Side) -> Result<()> {
    let sign = |row: QVector| match side {
        Side::Above => row,
        Side::Below => row.neg(),
    };
    for v in f.vertices() {
        lp.add(sign(Gen::Vertex(v.clone()).row()), Relation::Gt, zero())?;
    }
    for r in f.rays() {
        lp.add(sign(Gen::Ray(r.clone()).row()), Relation::Ge, zero())?;
    }
    for l in f.lineality().echelon_basis() {
        lp.add(l.extended(zero()), Relation::Eq, zero())?;
    }
    Ok(())
}

/// A point of `relint(p)` on `h`, assuming `h` meets it in the way `m` says.
fn point_on(p: &Polyhedron, h: &AffineHyperplane, m: &Meet) -> QVector {
    let p0 = p.relint_point();
    let s = h.value(&p0);
    if s.is_zero() {
        return p0;
    }
    match m {
        Meet::Inside => p0,
        Meet::Lineality(l) => {
            let t = -s / h.normal.dot(l);
            p0.add_scaled(&t, l)
        }
        Meet::Mixed(lo, hi) => {
            let g = if s.is_positive() { lo } else { hi };
            match g {
                Gen::Vertex(v) => {
                    let t = &s / (&s - h.value(v));
                    p0.add_scaled(&t, &v.sub(&p0))
                }
                Gen::Ray(r) => {
                    let t = -&s / h.normal.dot(r);
                    p0.add_scaled(&t, r)
                }
            }
        }
    }
}

/// Searches for a hyperplane `H` disjoint from `F` that meets the relative
/// interiors of both `P` and `Q`. Tries `F` strictly above `H`, then below.
pub fn witness_hyperplane(
    p: &Polyhedron,
    q: &Polyhedron,
    f: &Polyhedron,
) -> Result<Option<SeparationWitness>> {
    if p == q || f == p || f == q {
        return Err(Error::DegenerateInput("P, Q and F must be distinct".into()));
    }
    let n = p.ambient_dim();
    for x in [q, f] {
        if x.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.ambient_dim(),
            });
        }
    }
    let p_opts = meet_options(p);
    let q_opts = meet_options(q);
    for side in [Side::Above, Side::Below] {
        for mp in &p_opts {
            for mq in &q_opts {
                let mut lp = LinearProgram::new(n + 1);
                add_side(&mut lp, f, side)?;
                add_meet(&mut lp, p, mp)?;
                add_meet(&mut lp, q, mq)?;
                let Some(sol) = lp_feasible(&lp) else { continue };
                let normal: QVector = sol.iter().take(n).cloned().collect();
                if normal.is_zero() {
                    continue;
                }
                let h = AffineHyperplane::new(normal, sol[n].clone())?.primitive();
                let w = SeparationWitness {
                    point_p: point_on(p, &h, mp),
                    point_q: point_on(q, &h, mq),
                    hyperplane: h,
                    side,
                };
                debug_assert!(meets_relint(p, &w.hyperplane) && meets_relint(q, &w.hyperplane));
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}
