use num_traits::{Signed, Zero};

use crate::polyhedral::{Complex, ComplexBuilder, HRep, Polyhedron};
use crate::ratlin::{primitive_vector, QVector, Rational, Subspace};
use crate::{Error, Result};

/// The hyperplane `{x : normal·x = offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHyperplane {
    pub normal: QVector,
    pub offset: Rational,
}

impl AffineHyperplane {
    pub fn new(normal: QVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(AffineHyperplane { normal, offset })
    }

    /// `normal·x - offset`.
    pub fn value(&self, x: &QVector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    /// Rescales so the normal is a primitive integer vector.
    pub fn primitive(&self) -> Self {
        let p = primitive_vector(&self.normal).expect("normal is nonzero");
        let i = self
            .normal
            .iter()
            .position(|x| !x.is_zero())
            .expect("normal is nonzero");
        let s = Rational::from_integer(p[i].clone()) / &self.normal[i];
        AffineHyperplane {
            normal: QVector::from_bigints(&p),
            offset: &self.offset * s,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SectionResult {
    pub section: Complex,
    /// Source facet position for each section facet position.
    pub facet_provenance: Vec<usize>,
    /// Whether the section is pure of dimension `d - 1` and every facet that
    /// touches the hyperplane only at its boundary is covered by section facets.
    pub pure: bool,
}

/// Whether `h` meets the relative interior of `p`, decided from the signs of
/// `h` on the generators.
pub(crate) fn meets_relint(p: &Polyhedron, h: &AffineHyperplane) -> bool {
    if p.lineality()
        .echelon_basis()
        .iter()
        .any(|l| !h.normal.dot(l).is_zero())
    {
        return true;
    }
    let values: Vec<Rational> = p
        .vertices()
        .iter()
        .map(|v| h.value(v))
        .chain(p.rays().iter().map(|r| h.normal.dot(r)))
        .collect();
    let neg = values.iter().any(Signed::is_negative);
    let pos = values.iter().any(Signed::is_positive);
    (neg && pos) || values.iter().all(Zero::is_zero)
}

fn intersect(p: &Polyhedron, h: &AffineHyperplane) -> Result<Polyhedron> {
    let mut hrep: HRep = p.hrep().clone();
    hrep.equations.push((h.normal.clone(), h.offset.clone()));
    hrep.to_polyhedron()
}

/// Intersects every facet of `c` with a transverse hyperplane.
///
/// Transversality: no vertex of `c` lies on `H` (for cones, the apex at the
/// origin) and no cell spans an affine subspace inside `H`.
pub fn hyperplane_section(c: &Complex, h: &AffineHyperplane) -> Result<SectionResult> {
    let n = c.ambient_dim();
    if h.normal.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.normal.len(),
        });
    }
    for (i, v) in c.vertices().iter().enumerate() {
        if h.value(v).is_zero() {
            return Err(Error::NotTransverse(format!(
                "vertex {i} {v} lies on the hyperplane"
            )));
        }
    }
    if c.cells().iter().any(|cell| cell.vertices.is_empty()) && h.offset.is_zero() {
        return Err(Error::NotTransverse("the origin lies on the hyperplane".into()));
    }
    for i in 0..c.cells().len() {
        let p = c.cell_polyhedron(i);
        let inside = p.vertices().iter().all(|v| h.value(v).is_zero())
            && p.direction_space()
                .echelon_basis()
                .iter()
                .all(|d| h.normal.dot(d).is_zero());
        if inside {
            return Err(Error::NotTransverse(format!("cell {i} lies in the hyperplane")));
        }
    }

    let kernel = Subspace::span(n, std::slice::from_ref(&h.normal)).orthogonal_complement();
    let lin = c.lineality().intersection(&kernel);
    let mut b = ComplexBuilder::new(n, lin.integer_basis());
    let mut provenance = Vec::new();
    let mut boundary_touches = Vec::new();
    for pos in 0..c.facets().len() {
        let sigma = c.facet_polyhedron(pos);
        if meets_relint(sigma, h) {
            let cut = intersect(sigma, h)?;
            b.push(&cut, c.facet_weight(pos));
            provenance.push(pos);
        } else if let Ok(cut) = intersect(sigma, h) {
            boundary_touches.push(cut);
        }
    }
    if b.is_empty() {
        return Err(Error::DegenerateInput("the hyperplane misses the complex".into()));
    }
    let section = b.build()?;
    let d = c.dim();
    let mut pure = c.is_pure() && section.is_pure() && section.dim() + 1 == d;
    pure &= boundary_touches
        .iter()
        .all(|t| (0..section.facets().len()).any(|f| section.facet_polyhedron(f).contains(t)));
    let facet_provenance = section.facets().iter().map(|&cell| provenance[cell]).collect();
    Ok(SectionResult {
        section,
        facet_provenance,
        pure,
    })
}
