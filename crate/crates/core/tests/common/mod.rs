//! Shared fixtures and independent checks for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropicon::matroid::{bergman_fine, Matroid};
use tropicon::polyhedral::Cell;
use tropicon::ratlin::{int, rank_of, Subspace};
use tropicon::tropical::{SeparationWitness, Side};
use tropicon::{Complex, Polyhedron, QVector};

pub fn v(x: &[i64]) -> QVector {
    QVector::from_ints(x)
}

pub fn k4_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
}

/// Vertex sets of full-dimensional random lattice polytopes in `R^3` with at
/// most ten points, reproducible from `seed`.
pub fn random_3_polytopes(count: usize, seed: u64) -> Vec<Vec<QVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(4..=10);
        let pts: Vec<QVector> = (0..k)
            .map(|_| {
                v(&[
                    rng.gen_range(-4..=4),
                    rng.gen_range(-4..=4),
                    rng.gen_range(-4..=4),
                ])
            })
            .collect();
        let diffs: Vec<QVector> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
        if rank_of(&diffs, 3) == 3 {
            out.push(pts);
        }
    }
    out
}

/// The Bergman fan of `M / e` with loops deleted, written in the coordinates
/// of `M` (zero on the removed elements), with lineality spanned by the
/// all-ones vector and the indicator of `cl{e}`.
pub fn embedded_contraction_fan(m: &Arc<Matroid>, e: usize) -> Complex {
    let n = m.ground_size();
    let contracted = Arc::new(m.contraction(e).unwrap());
    let loops = contracted.loops().iter().fold(0u64, |acc, &l| acc | (1 << l));
    let minor = contracted.deletion(loops);
    let indicator = |elements: &[usize]| {
        let mut x = vec![0; n];
        for &i in elements {
            x[minor.labels()[i]] = 1;
        }
        v(&x)
    };
    let mut rays = Vec::new();
    let mut cells = Vec::new();
    for chain in minor.maximal_chains().unwrap() {
        let mut idx = Vec::new();
        for f in &chain.flats {
            rays.push(indicator(&f.elements));
            idx.push(rays.len() - 1);
        }
        cells.push(Cell::cone(idx));
    }
    let mut closure = vec![0; n];
    for x in tropicon::matroid::elements_of(m.closure(1 << e)) {
        closure[x] = 1;
    }
    Complex::new(n, vec![], rays, vec![v(&vec![1; n]), v(&closure)], cells, None).unwrap()
}

/// Ray of the rank-one flat `cl{e}` of `M`.
pub fn flat_ray(m: &Matroid, e: usize) -> Polyhedron {
    let n = m.ground_size();
    let mut x = vec![0; n];
    for i in tropicon::matroid::elements_of(m.closure(1 << e)) {
        x[i] = 1;
    }
    Polyhedron::cone(n, vec![v(&x)], vec![]).unwrap()
}

pub fn bergman(m: &Matroid) -> Complex {
    bergman_fine(m).unwrap()
}

/// Substitution check of a separation witness that avoids the library's
/// own face and LP machinery: the points are written as explicit positive
/// combinations of generators.
pub fn witness_holds(p: &Polyhedron, q: &Polyhedron, f: &Polyhedron, w: &SeparationWitness) -> bool {
    let h = &w.hyperplane;
    let on = |x: &QVector| h.normal.dot(x) == h.offset;
    let sign = if w.side == Side::Above { int(1) } else { int(-1) };
    let f_ok = f
        .vertices()
        .iter()
        .all(|x| ((h.normal.dot(x) - &h.offset) * &sign).is_positive())
        && f.rays().iter().all(|r| !(h.normal.dot(r) * &sign).is_negative())
        && f.lineality()
            .echelon_basis()
            .iter()
            .all(|l| h.normal.dot(l).is_zero());
    on(&w.point_p)
        && on(&w.point_q)
        && in_relint_by_lp(p, &w.point_p)
        && in_relint_by_lp(q, &w.point_q)
        && f_ok
}

/// Membership in the relative interior, decided by finding strictly positive
/// coefficients with an exact linear solve over all sign patterns allowed.
fn in_relint_by_lp(p: &Polyhedron, x: &QVector) -> bool {
    use tropicon::ratlin::{lp_feasible, LinearProgram, Relation};
    let nv = p.vertices().len();
    let nr = p.rays().len();
    let lin = p.lineality().echelon_basis().to_vec();
    let vars = nv + nr + lin.len();
    let mut lp = LinearProgram::new(vars);
    let n = p.ambient_dim();
    for coord in 0..n {
        let row: QVector = p
            .vertices()
            .iter()
            .chain(p.rays())
            .chain(&lin)
            .map(|g| g[coord].clone())
            .collect();
        lp.add(row, Relation::Eq, x[coord].clone()).unwrap();
    }
    let mut sum = vec![0; vars];
    sum[..nv].iter_mut().for_each(|s| *s = 1);
    lp.add(v(&sum), Relation::Eq, int(1)).unwrap();
    for i in 0..nv + nr {
        let mut e = vec![0; vars];
        e[i] = 1;
        lp.add(v(&e), Relation::Gt, int(0)).unwrap();
    }
    lp_feasible(&lp).is_some()
}

pub fn span(n: usize, vs: &[QVector]) -> Subspace {
    Subspace::span(n, vs)
}
