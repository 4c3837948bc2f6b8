//! Rational polyhedra and pure polyhedral complexes.

mod complex;
mod dd;
mod polyhedron;

pub use complex::{validate_complex, Cell, Complex, ComplexBuilder, Ridge, ValidationReport, Violation};
pub use polyhedron::{is_face_of, lattice_normal_generator, CellKey, HRep, Polyhedron};

pub(crate) use polyhedron::lattice_normal_from_spaces;

/// Converts between the two descriptions of a polyhedron.
pub fn dual_description(p: &Polyhedron) -> HRep {
    p.hrep().clone()
}

/// Vertex description of an inequality description; fails with
/// [`crate::Error::EmptyPolyhedron`] when infeasible.
pub fn primal_description(h: &HRep) -> crate::Result<Polyhedron> {
    h.to_polyhedron()
}

/// Faces of dimension one less than `p`.
pub fn codim1_faces(p: &Polyhedron) -> Vec<Polyhedron> {
    p.codim1_faces()
}

/// `(dim, lineality, pointed)` of `p`.
pub fn dim_lineality_pointed(p: &Polyhedron) -> (usize, crate::ratlin::Subspace, bool) {
    p.dim_lineality_pointed()
}

pub fn relint_point(p: &Polyhedron) -> crate::QVector {
    p.relint_point()
}
