use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dd::cone_generators;
use crate::ratlin::lattice::{gcd_combination, saturated_lattice_basis};
use crate::ratlin::{primitive, primitive_or_zero, rank_of, QVector, Rational, Subspace};
use crate::{Error, Result};

/// Inequality description `{x : a·x ≥ b for each inequality, a·x = b for each
/// equation}`.
///
/// Produced by [`Polyhedron::hrep`] in canonical form: equations in reduced
/// echelon form, inequalities irredundant, primitive, reduced modulo the
/// equations and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub ambient_dim: usize,
    pub inequalities: Vec<(QVector, Rational)>,
    pub equations: Vec<(QVector, Rational)>,
}

impl HRep {
    pub fn new(
        ambient_dim: usize,
        inequalities: Vec<(QVector, Rational)>,
        equations: Vec<(QVector, Rational)>,
    ) -> Result<Self> {
        for (a, _) in inequalities.iter().chain(&equations) {
            if a.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: a.len(),
                });
            }
        }
        Ok(HRep {
            ambient_dim,
            inequalities,
            equations,
        })
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.equations.iter().all(|(a, b)| a.dot(x) == *b)
            && self.inequalities.iter().all(|(a, b)| a.dot(x) >= *b)
    }

    /// True if `x` satisfies the equations and every inequality strictly. For
    /// an irredundant description this is membership in the relative interior.
    pub fn contains_strictly(&self, x: &QVector) -> bool {
        self.equations.iter().all(|(a, b)| a.dot(x) == *b)
            && self.inequalities.iter().all(|(a, b)| a.dot(x) > *b)
    }

    /// Homogeneous test for a recession direction.
    pub fn recedes_along(&self, r: &QVector) -> bool {
        self.equations.iter().all(|(a, _)| a.dot(r).is_zero())
            && self.inequalities.iter().all(|(a, _)| !a.dot(r).is_negative())
    }

    fn homogenized(&self) -> (Vec<QVector>, Vec<QVector>) {
        let hom = |(a, b): &(QVector, Rational)| a.extended(-b.clone());
        (
            self.inequalities.iter().map(hom).collect(),
            self.equations.iter().map(hom).collect(),
        )
    }

    /// Converts to a vertex/ray/lineality description.
    pub fn to_polyhedron(&self) -> Result<Polyhedron> {
        let n = self.ambient_dim;
        let (mut ineqs, eqs) = self.homogenized();
        ineqs.push(QVector::unit(n + 1, n));
        let gens = cone_generators(n + 1, &ineqs, &eqs);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for g in gens.rays {
            let t = g.last().clone();
            if t.is_positive() {
                vertices.push(g.truncated().scale(&t.recip()));
            } else {
                rays.push(g.truncated());
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let lineality: Vec<QVector> = gens.lineality.iter().map(QVector::truncated).collect();
        let p = Polyhedron::new(n, vertices, rays, lineality)?;
        Ok(p.canonicalized_generators())
    }
}

/// Sorted canonical generators; equal keys mean equal point sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
}

/// A rational polyhedron `conv(vertices) + cone(rays) + span(lineality)`.
///
/// There is always at least one vertex; cones carry the origin as their only
/// vertex. Rays are stored as primitive integer vectors. The inequality
/// description is computed on first use.
#[derive(Clone)]
pub struct Polyhedron {
    ambient_dim: usize,
    vertices: Vec<QVector>,
    rays: Vec<QVector>,
    lineality: Subspace,
    hrep: OnceLock<HRep>,
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polyhedron")
            .field("ambient_dim", &self.ambient_dim)
            .field("vertices", &self.vertices)
            .field("rays", &self.rays)
            .field("lineality", &self.lineality.integer_basis())
            .finish()
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[QVector]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        if self.is_cone() {
            write!(f, "cone[{}]", list(&self.rays))?;
        } else {
            write!(f, "conv[{}]", list(&self.vertices))?;
            if !self.rays.is_empty() {
                write!(f, "+cone[{}]", list(&self.rays))?;
            }
        }
        if !self.lineality.is_zero() {
            write!(f, "+span[{}]", list(&self.lineality.integer_basis()))?;
        }
        Ok(())
    }
}

impl PartialEq for Polyhedron {
    /// Equality of point sets.
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.key() == other.key()
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    /// Builds a polyhedron; an empty vertex list means the apex is the origin.
    /// Rays are made primitive, deduplicated, and dropped when they lie in the
    /// lineality space.
    pub fn new(
        ambient_dim: usize,
        vertices: Vec<QVector>,
        rays: Vec<QVector>,
        lineality: Vec<QVector>,
    ) -> Result<Self> {
        for v in vertices.iter().chain(&rays).chain(&lineality) {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let lineality = Subspace::span(ambient_dim, &lineality);
        let mut vertices = if vertices.is_empty() {
            vec![QVector::zeros(ambient_dim)]
        } else {
            vertices
        };
        let mut seen = Vec::with_capacity(vertices.len());
        vertices.retain(|v| {
            let fresh = !seen.contains(v);
            if fresh {
                seen.push(v.clone());
            }
            fresh
        });
        let mut clean_rays: Vec<QVector> = Vec::new();
        for r in rays {
            if lineality.contains(&r) {
                continue;
            }
            let r = primitive(&r)?;
            if !clean_rays.contains(&r) {
                clean_rays.push(r);
            }
        }
        Ok(Polyhedron {
            ambient_dim,
            vertices,
            rays: clean_rays,
            lineality,
            hrep: OnceLock::new(),
        })
    }

    pub fn cone(ambient_dim: usize, rays: Vec<QVector>, lineality: Vec<QVector>) -> Result<Self> {
        Self::new(ambient_dim, Vec::new(), rays, lineality)
    }

    pub fn polytope(ambient_dim: usize, points: Vec<QVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Self::new(ambient_dim, points, Vec::new(), Vec::new())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    /// The lineality generators of the V-description.
    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    pub fn is_cone(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].is_zero()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_zero()
    }

    /// Linear space parallel to the affine hull.
    pub fn direction_space(&self) -> Subspace {
        let base = &self.vertices[0];
        let mut dirs: Vec<QVector> = self.vertices[1..].iter().map(|v| v.sub(base)).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.echelon_basis().iter().cloned());
        Subspace::span(self.ambient_dim, &dirs)
    }

    pub fn dim(&self) -> usize {
        self.direction_space().dim()
    }

    fn homogenized_generators(&self) -> Vec<QVector> {
        let one = Rational::one();
        let zero = Rational::zero();
        self.vertices
            .iter()
            .map(|v| v.extended(one.clone()))
            .chain(self.rays.iter().map(|r| r.extended(zero.clone())))
            .collect()
    }

    fn homogenized_lineality(&self) -> Vec<QVector> {
        self.lineality
            .echelon_basis()
            .iter()
            .map(|l| l.extended(Rational::zero()))
            .collect()
    }

    /// The inequality description, computed once.
    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| self.compute_hrep())
    }

    fn compute_hrep(&self) -> HRep {
        let n = self.ambient_dim;
        let gens = self.homogenized_generators();
        let lin = self.homogenized_lineality();
        let dual = cone_generators(n + 1, &gens, &lin);
        // equations: echelon form with the homogenizing coordinate last, so
        // pivots land on x-coordinates whenever possible
        let eq_space = Subspace::span(n + 1, &dual.lineality);
        let vertex_gens = &gens[..self.vertices.len()];
        let mut inequalities: Vec<(QVector, Rational)> = dual
            .rays
            .iter()
            .filter(|y| vertex_gens.iter().any(|g| y.dot(g).is_zero()))
            .map(|y| {
                let y = primitive_or_zero(&eq_space.reduce(y));
                (y.truncated(), -y.last().clone())
            })
            .filter(|(a, _)| !a.is_zero())
            .collect();
        inequalities.sort();
        inequalities.dedup();
        let equations = eq_space
            .integer_basis()
            .into_iter()
            .map(|y| (y.truncated(), -y.last().clone()))
            .collect();
        HRep {
            ambient_dim: n,
            inequalities,
            equations,
        }
    }

    /// `(dimension, lineality space, pointed)`. The lineality space is read
    /// from the inequality description, so it also accounts for opposite
    /// rays in the V-description.
    pub fn dim_lineality_pointed(&self) -> (usize, Subspace, bool) {
        let h = self.hrep();
        let normals: Vec<QVector> = h
            .inequalities
            .iter()
            .chain(&h.equations)
            .map(|(a, _)| a.clone())
            .collect();
        let lin = Subspace::span(
            self.ambient_dim,
            &crate::ratlin::kernel(&normals, self.ambient_dim),
        );
        let pointed = lin.is_zero();
        (self.dim(), lin, pointed)
    }

    /// Barycenter of the vertices plus the sum of the rays.
    pub fn relint_point(&self) -> QVector {
        let k = Rational::from_integer(BigInt::from(self.vertices.len()));
        let mut p = self
            .vertices
            .iter()
            .fold(QVector::zeros(self.ambient_dim), |acc, v| acc.add(v))
            .scale(&k.recip());
        for r in &self.rays {
            p = p.add(r);
        }
        p
    }

    pub fn contains_point(&self, x: &QVector) -> bool {
        self.hrep().contains(x)
    }

    pub fn contains(&self, other: &Polyhedron) -> bool {
        let h = self.hrep();
        other.vertices.iter().all(|v| h.contains(v))
            && other.rays.iter().all(|r| h.recedes_along(r))
            && other
                .lineality
                .echelon_basis()
                .iter()
                .all(|l| h.recedes_along(l) && h.recedes_along(&l.neg()))
    }

    /// Whether the homogenized generators are linearly independent modulo the
    /// lineality space; then every generator is extreme.
    fn is_simplicial(&self) -> bool {
        let mut rows = self.homogenized_generators();
        let k = rows.len();
        let lin = self.homogenized_lineality();
        let l = lin.len();
        rows.extend(lin);
        rank_of(&rows, self.ambient_dim + 1) == k + l
    }

    /// Rewrites the generators in canonical form without removing any.
    fn canonicalized_generators(&self) -> Polyhedron {
        let mut vertices: Vec<QVector> = self.vertices.iter().map(|v| self.lineality.reduce(v)).collect();
        vertices.sort();
        vertices.dedup();
        let mut rays: Vec<QVector> = self
            .rays
            .iter()
            .map(|r| primitive_or_zero(&self.lineality.reduce(r)))
            .filter(|r| !r.is_zero())
            .collect();
        rays.sort();
        rays.dedup();
        Polyhedron {
            ambient_dim: self.ambient_dim,
            vertices,
            rays,
            lineality: self.lineality.clone(),
            hrep: self.hrep.clone(),
        }
    }

    /// Minimal generators, reduced modulo the lineality space and sorted.
    pub fn canonical(&self) -> Polyhedron {
        if self.is_simplicial() {
            self.canonicalized_generators()
        } else {
            let mut p = self
                .hrep()
                .to_polyhedron()
                .expect("a V-described polyhedron is nonempty");
            p.hrep = self.hrep.clone();
            p
        }
    }

    pub fn key(&self) -> CellKey {
        let c = self.canonical();
        CellKey {
            vertices: c.vertices,
            rays: c.rays,
            lineality: c.lineality.integer_basis(),
        }
    }

    /// Faces of dimension `dim - 1`, canonicalized and sorted.
    pub fn codim1_faces(&self) -> Vec<Polyhedron> {
        let mut faces = if self.is_simplicial() {
            self.codim1_faces_simplicial()
        } else {
            self.codim1_faces_hrep()
        };
        faces.sort_by_cached_key(Polyhedron::key);
        faces
    }

    /// Drops one generator at a time; dropping the only vertex would leave the
    /// face at infinity, which is not a face.
    pub(crate) fn codim1_faces_simplicial(&self) -> Vec<Polyhedron> {
        let lin = self.lineality.echelon_basis().to_vec();
        let mut faces = Vec::new();
        if self.vertices.len() > 1 {
            for i in 0..self.vertices.len() {
                let mut vs = self.vertices.clone();
                vs.remove(i);
                faces.push(Polyhedron::new(
                    self.ambient_dim,
                    vs,
                    self.rays.clone(),
                    lin.clone(),
                ));
            }
        }
        for i in 0..self.rays.len() {
            let mut rs = self.rays.clone();
            rs.remove(i);
            faces.push(Polyhedron::new(
                self.ambient_dim,
                self.vertices.clone(),
                rs,
                lin.clone(),
            ));
        }
        faces
            .into_iter()
            .map(|f| f.expect("sub-description of a valid polyhedron").canonical())
            .collect()
    }

    pub(crate) fn codim1_faces_hrep(&self) -> Vec<Polyhedron> {
        let h = self.hrep();
        let lin = self.lineality.echelon_basis().to_vec();
        h.inequalities
            .iter()
            .map(|(a, b)| {
                let vs: Vec<QVector> = self.vertices.iter().filter(|v| a.dot(v) == *b).cloned().collect();
                let rs: Vec<QVector> = self.rays.iter().filter(|r| a.dot(r).is_zero()).cloned().collect();
                Polyhedron::new(self.ambient_dim, vs, rs, lin.clone())
                    .expect("sub-description of a valid polyhedron")
                    .canonical()
            })
            .collect()
    }

    /// The face of `self` cut out by making the given inequality tight.
    pub(crate) fn face_of_inequality(&self, a: &QVector, b: &Rational) -> Polyhedron {
        let vs: Vec<QVector> = self.vertices.iter().filter(|v| a.dot(v) == *b).cloned().collect();
        let rs: Vec<QVector> = self.rays.iter().filter(|r| a.dot(r).is_zero()).cloned().collect();
        Polyhedron::new(self.ambient_dim, vs, rs, self.lineality.echelon_basis().to_vec())
            .expect("sub-description of a valid polyhedron")
    }

    /// The image under `x -> M x`, with rays re-primitivized.
    pub fn map_linear(&self, rows: &[QVector], target_dim: usize) -> Polyhedron {
        let apply = |v: &QVector| -> QVector { rows.iter().map(|r| r.dot(v)).collect() };
        let vertices = self.vertices.iter().map(apply).collect();
        let rays = self
            .rays
            .iter()
            .map(apply)
            .filter(|r: &QVector| !r.is_zero())
            .collect();
        let lin = self.lineality.echelon_basis().iter().map(apply).collect();
        Polyhedron::new(target_dim, vertices, rays, lin).expect("linear image of a valid polyhedron")
    }
}

/// Whether `tau` is a face of `sigma`: `tau ⊆ sigma` and `tau` equals the
/// subset of `sigma` where all inequalities tight on `tau` hold with equality.
pub fn is_face_of(tau: &Polyhedron, sigma: &Polyhedron) -> bool {
    if tau.ambient_dim != sigma.ambient_dim || !sigma.contains(tau) {
        return false;
    }
    let h = sigma.hrep();
    let mut face = sigma.clone();
    for (a, b) in &h.inequalities {
        let tight = tau.vertices.iter().all(|v| a.dot(v) == *b)
            && tau.rays.iter().all(|r| a.dot(r).is_zero())
            && tau.lineality.echelon_basis().iter().all(|l| a.dot(l).is_zero());
        if tight {
            face = face.face_of_inequality(a, b);
        }
    }
    tau.contains(&face)
}

/// Primitive integer vector in the direction space of `sigma` whose class
/// generates the rank-one quotient of the saturated lattices of `sigma` and
/// `tau`, oriented from `tau` into `sigma`.
pub fn lattice_normal_generator(sigma: &Polyhedron, tau: &Polyhedron) -> Result<Vec<BigInt>> {
    if !is_face_of(tau, sigma) {
        return Err(Error::NotAFace);
    }
    let ds = sigma.direction_space();
    let dt = tau.direction_space();
    let codim = ds.dim() - dt.dim();
    if codim != 1 {
        return Err(Error::WrongCodimension(codim));
    }
    lattice_normal_from_spaces(&ds, &dt, &sigma.relint_point().sub(&tau.relint_point()))
}

pub(crate) fn lattice_normal_from_spaces(
    sigma_dir: &Subspace,
    tau_dir: &Subspace,
    inward: &QVector,
) -> Result<Vec<BigInt>> {
    let n = sigma_dir.ambient_dim();
    let basis = saturated_lattice_basis(sigma_dir.echelon_basis(), n);
    // functional vanishing on tau's span but not on sigma's
    let mut f = tau_dir
        .orthogonal_complement()
        .integer_basis()
        .into_iter()
        .find(|f| sigma_dir.echelon_basis().iter().any(|b| !f.dot(b).is_zero()))
        .ok_or(Error::WrongCodimension(0))?;
    if f.dot(inward).is_negative() {
        f = f.neg();
    }
    let values: Vec<BigInt> = basis
        .iter()
        .map(|b| f.dot(&QVector::from_bigints(b)).to_integer())
        .collect();
    let (_, coeffs) = gcd_combination(&values);
    let mut u = vec![BigInt::zero(); n];
    for (c, b) in coeffs.iter().zip(&basis) {
        for (x, y) in u.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    Ok(u)
}
