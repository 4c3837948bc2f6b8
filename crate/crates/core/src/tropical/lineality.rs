use num_bigint::BigInt;

use crate::polyhedral::{is_face_of, Cell, Complex, ComplexBuilder, Polyhedron};
use crate::ratlin::{integer_kernel_basis, QMatrix, QVector, Subspace};
use crate::{Error, Result};

/// Largest subspace `V` with `σ + V = σ` for every cell, i.e. the
/// intersection of the facets' lineality spaces.
///
/// Fails with [`Error::DeclarationMismatch`] when the complex's declared
/// lineality is not contained in it.
pub fn complex_lineality_space(c: &Complex) -> Result<Subspace> {
    let n = c.ambient_dim();
    let mut v = Subspace::full(n);
    for pos in 0..c.facets().len() {
        let (_, lin, _) = c.facet_polyhedron(pos).dim_lineality_pointed();
        v = v.intersection(&lin);
    }
    if !v.contains_subspace(c.lineality()) {
        return Err(Error::DeclarationMismatch);
    }
    Ok(v)
}

/// Integer matrix whose rows are the Hermite basis of the lattice of integer
/// functionals vanishing on `v`. Its kernel is exactly `v`.
pub fn annihilator_projection(v: &Subspace) -> QMatrix {
    let n = v.ambient_dim();
    let rows: Vec<Vec<BigInt>> = v
        .integer_basis()
        .iter()
        .map(|b| b.to_bigints().expect("integer basis"))
        .collect();
    let pi: Vec<QVector> = integer_kernel_basis(&rows, n)
        .iter()
        .map(|r| QVector::from_bigints(r))
        .collect();
    QMatrix::new(pi, n).expect("rows have the ambient length")
}

/// Image of `c` under `pi`, which must vanish on the lineality space of every
/// cell that should become pointed. Cell order and weights are preserved.
pub fn project_complex(c: &Complex, pi: &QMatrix, lineality: &Subspace) -> Result<Complex> {
    let m = pi.nrows();
    let vertices = c.vertices().iter().map(|v| pi.mul_vec(v)).collect();
    let mut rays = Vec::new();
    let mut ray_map = Vec::with_capacity(c.rays().len());
    for r in c.rays() {
        if lineality.contains(r) {
            ray_map.push(None);
        } else {
            ray_map.push(Some(rays.len()));
            rays.push(pi.mul_vec(r));
        }
    }
    let image_lineality = lineality_image(c, pi);
    let cells = c
        .cells()
        .iter()
        .map(|cell| {
            Cell::new(
                cell.vertices.clone(),
                cell.rays.iter().filter_map(|&i| ray_map[i]).collect(),
            )
        })
        .collect();
    Complex::new(
        m,
        vertices,
        rays,
        image_lineality,
        cells,
        Some(c.weights().to_vec()),
    )
}

fn lineality_image(c: &Complex, pi: &QMatrix) -> Vec<QVector> {
    c.lineality()
        .echelon_basis()
        .iter()
        .map(|l| pi.mul_vec(l))
        .filter(|l| !l.is_zero())
        .collect()
}

/// Projects along the lineality space onto a lattice complement. Returns the
/// pointed complex and the projection matrix; facet order is preserved, so
/// facet and ridge incidences carry over by position.
pub fn quotient_by_lineality(c: &Complex) -> Result<(Complex, QMatrix)> {
    let v = complex_lineality_space(c)?;
    let pi = annihilator_projection(&v);
    let q = project_complex(c, &pi, &v)?;
    Ok((q, pi))
}

/// The star of `c` at `face` before quotienting: tangent cones of the facets
/// containing `face`, with lineality enlarged by the direction space of
/// `face`. Lives in the ambient space of `c`. The lineality space of `c` is
/// added to `face` if missing, so a ray may be given by its generator alone.
pub fn star_cones(c: &Complex, face: &Polyhedron) -> Result<Complex> {
    let n = c.ambient_dim();
    if face.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: face.ambient_dim(),
        });
    }
    // faces of cells contain the common lineality space
    let mut face_lin = face.lineality().echelon_basis().to_vec();
    face_lin.extend(c.lineality_basis());
    let face = &Polyhedron::new(n, face.vertices().to_vec(), face.rays().to_vec(), face_lin)?;
    let lin = c.lineality().sum(&face.direction_space());
    let lin_basis = lin.integer_basis();
    let p = face.relint_point();
    let mut b = ComplexBuilder::new(n, lin_basis.clone());
    for pos in 0..c.facets().len() {
        let sigma = c.facet_polyhedron(pos);
        if !is_face_of(face, sigma) {
            continue;
        }
        let mut rays: Vec<QVector> = sigma.vertices().iter().map(|v| v.sub(&p)).collect();
        rays.extend(sigma.rays().iter().cloned());
        let rays: Vec<QVector> = rays
            .into_iter()
            .map(|r| lin.reduce(&r))
            .filter(|r| !r.is_zero())
            .collect();
        let cone = Polyhedron::cone(n, rays, lin_basis.clone())?.canonical();
        b.push(&cone, c.facet_weight(pos));
    }
    if b.is_empty() {
        return Err(Error::NotInComplex);
    }
    b.build()
}

/// The star of `c` at `face`, quotiented by its lineality space.
pub fn star(c: &Complex, face: &Polyhedron) -> Result<Complex> {
    Ok(quotient_by_lineality(&star_cones(c, face)?)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::build_hypergraph;
    use crate::generators;
    use crate::matroid::{bergman_fine, Matroid};

    #[test]
    fn uniform_lineality_is_all_ones() {
        let c = bergman_fine(&Matroid::uniform(3, 4).unwrap()).unwrap();
        let v = complex_lineality_space(&c).unwrap();
        assert_eq!(v.integer_basis(), vec![QVector::from_ints(&[1, 1, 1, 1])]);
        assert!(complex_lineality_space(&generators::two_planes())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn linear_subspace_cell() {
        // {x : x1 = 2 x2 + 2 x3}
        let plane = vec![QVector::from_ints(&[2, 1, 0]), QVector::from_ints(&[2, 0, 1])];
        let c = Complex::new(3, vec![], vec![], plane.clone(), vec![Cell::cone(vec![])], None).unwrap();
        let v = complex_lineality_space(&c).unwrap();
        assert_eq!(v, Subspace::span(3, &plane));
    }

    #[test]
    fn undeclared_lineality_is_found() {
        // a halfplane declared without lineality
        let c = Complex::new(
            2,
            vec![],
            vec![
                QVector::from_ints(&[1, 0]),
                QVector::from_ints(&[0, 1]),
                QVector::from_ints(&[0, -1]),
            ],
            vec![],
            vec![Cell::cone(vec![0, 1, 2])],
            None,
        )
        .unwrap();
        assert_eq!(complex_lineality_space(&c).unwrap().dim(), 1);
        let (q, pi) = quotient_by_lineality(&c).unwrap();
        assert_eq!(pi.nrows(), 1);
        assert_eq!(q.dim(), 1);
    }

    #[test]
    fn quotient_of_u23() {
        let c = bergman_fine(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let (q, pi) = quotient_by_lineality(&c).unwrap();
        assert_eq!(pi, QMatrix::from_ints(&[&[1, 0, -1], &[0, 1, -1]]).unwrap());
        assert_eq!(q.ambient_dim(), 2);
        assert_eq!(q.rays().len(), 3);
        assert_eq!(q.facets().len(), 3);
        assert!(q.lineality().is_zero());
        let h = build_hypergraph(&c).unwrap();
        assert!(h.same_incidence(&build_hypergraph(&q).unwrap()));
    }

    #[test]
    fn trivial_lineality_quotient_is_identity() {
        let c = generators::tropical_plane();
        let (q, pi) = quotient_by_lineality(&c).unwrap();
        assert_eq!(pi, QMatrix::identity(3));
        assert!(q.same_facets(&c));
    }

    #[test]
    fn star_of_cube_fan_at_a_ray() {
        let c = generators::normal_fan_cube(3).unwrap();
        let e1 = Polyhedron::cone(3, vec![QVector::from_ints(&[1, 0, 0])], vec![]).unwrap();
        let s = star(&c, &e1).unwrap();
        assert_eq!(s.ambient_dim(), 2);
        assert_eq!(s.facets().len(), 4);
        assert_eq!(s.dim(), 2);
        assert!(s.lineality().is_zero());
    }

    #[test]
    fn star_at_a_facet_is_the_whole_quotient() {
        let c = generators::tropical_plane();
        let f = c.facet_polyhedron(0).clone();
        let s = star(&c, &f).unwrap();
        assert_eq!(s.ambient_dim(), 1);
        assert_eq!(s.facets().len(), 1);
    }

    #[test]
    fn star_outside_the_complex() {
        let c = generators::tropical_plane();
        let off = Polyhedron::cone(3, vec![QVector::from_ints(&[1, 1, 0])], vec![]).unwrap();
        assert_eq!(star(&c, &off).unwrap_err(), Error::NotInComplex);
    }
}
