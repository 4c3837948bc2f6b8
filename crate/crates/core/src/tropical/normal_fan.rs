use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::polyhedral::{CellKey, Complex, ComplexBuilder, HRep, Polyhedron};
use crate::ratlin::{QVector, Rational};
use crate::{Error, Result};

/// Outer normal fan of the convex hull of `points`: one maximal cone
/// `{h : h·v ≥ h·w for all w}` per vertex `v`, weights one, lineality the
/// orthogonal complement of the affine span.
pub fn normal_fan(points: &[QVector]) -> Result<Complex> {
    let n = points.first().ok_or(Error::EmptyPolyhedron)?.len();
    let p = Polyhedron::polytope(n, points.to_vec())?.canonical();
    let lin = p.direction_space().orthogonal_complement().integer_basis();
    let mut b = ComplexBuilder::new(n, lin);
    for v in p.vertices() {
        let inequalities = p
            .vertices()
            .iter()
            .filter(|w| *w != v)
            .map(|w| (v.sub(w), Rational::from_integer(0.into())))
            .collect();
        let cone = HRep::new(n, inequalities, vec![])?.to_polyhedron()?;
        b.push(&cone, 1);
    }
    b.build()
}

/// All faces of dimension `k` of the facets, as a pure `k`-dimensional
/// complex with the same lineality. Requires `ℓ ≤ k ≤ d`.
pub fn skeleton(c: &Complex, k: usize) -> Result<Complex> {
    let l = c.lineality().dim();
    if k < l {
        return Err(Error::LinealityObstruction { k, lineality: l });
    }
    let d = c.dim();
    if k > d {
        return Err(Error::DegenerateInput(format!(
            "skeleton dimension {k} exceeds {d}"
        )));
    }
    let mut layer: BTreeMap<CellKey, Polyhedron> = BTreeMap::new();
    for pos in 0..c.facets().len() {
        let p = c.facet_polyhedron(pos).canonical();
        layer.insert(p.key(), p);
    }
    for _ in k..d {
        let mut next = BTreeMap::new();
        for p in layer.values() {
            for f in p.codim1_faces() {
                next.entry(f.key()).or_insert(f);
            }
        }
        layer = next;
    }
    let mut b = ComplexBuilder::new(c.ambient_dim(), c.lineality_basis());
    for p in layer.values() {
        b.push(p, 1);
    }
    b.build()
}

/// Recession cones of all cells, deduplicated. Purity is not enforced; check
/// [`Complex::is_pure`] on the result.
pub fn recession_fan(c: &Complex) -> Result<Complex> {
    let n = c.ambient_dim();
    let lin = c.lineality_basis();
    let mut seen: BTreeMap<CellKey, Polyhedron> = BTreeMap::new();
    let mut order = Vec::new();
    for i in 0..c.cells().len() {
        let p = c.cell_polyhedron(i);
        let cone = Polyhedron::cone(n, p.rays().to_vec(), lin.clone())?.canonical();
        let key = cone.key();
        if let Entry::Vacant(e) = seen.entry(key.clone()) {
            e.insert(cone);
            order.push(key);
        }
    }
    let mut b = ComplexBuilder::new(n, lin);
    for key in &order {
        b.push(&seen[key], 1);
    }
    b.build()
}
