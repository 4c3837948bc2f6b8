use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use super::polyhedron::{is_face_of, CellKey, HRep, Polyhedron};
use crate::ratlin::{primitive, primitive_or_zero, QVector, Subspace};
use crate::{Error, Result};

/// A cell given by indices into the complex's generator pools. An empty
/// vertex list means the cell is a cone with apex at the origin.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
}

impl Cell {
    pub fn new(mut vertices: Vec<usize>, mut rays: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        rays.sort_unstable();
        rays.dedup();
        Cell { vertices, rays }
    }

    pub fn cone(rays: Vec<usize>) -> Self {
        Self::new(Vec::new(), rays)
    }
}

/// A ridge of a pure complex together with the facets containing it
/// (positions in [`Complex::facets`]).
#[derive(Clone, Debug)]
pub struct Ridge {
    pub face: Polyhedron,
    pub facets: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Derived {
    polyhedra: Vec<Polyhedron>,
    dims: Vec<usize>,
    facets: Vec<usize>,
}

/// A polyhedral complex with shared vertex and ray pools and one lineality
/// space common to every cell. Cells may be listed facets-only; lower faces
/// are derived on demand.
#[derive(Clone)]
pub struct Complex {
    ambient_dim: usize,
    vertices: Vec<QVector>,
    rays: Vec<QVector>,
    lineality: Subspace,
    cells: Vec<Cell>,
    weights: Vec<u64>,
    derived: OnceLock<Derived>,
    ridges: OnceLock<Vec<Ridge>>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("ambient_dim", &self.ambient_dim)
            .field("vertices", &self.vertices)
            .field("rays", &self.rays)
            .field("lineality", &self.lineality.integer_basis())
            .field("cells", &self.cells)
            .field("weights", &self.weights)
            .finish()
    }
}

impl Complex {
    /// Builds a complex. Rays become primitive; pool entries equal modulo the
    /// lineality space are merged and rays inside it are dropped from cells.
    /// `weights`, when given, has one positive entry per cell.
    pub fn new(
        ambient_dim: usize,
        vertices: Vec<QVector>,
        rays: Vec<QVector>,
        lineality: Vec<QVector>,
        cells: Vec<Cell>,
        weights: Option<Vec<u64>>,
    ) -> Result<Self> {
        for x in vertices.iter().chain(&rays).chain(&lineality) {
            if x.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: x.len(),
                });
            }
        }
        if cells.is_empty() {
            return Err(Error::InvalidComplex("no cells".into()));
        }
        let weights = match weights {
            Some(w) if w.len() != cells.len() => {
                return Err(Error::InvalidComplex(format!(
                    "{} weights for {} cells",
                    w.len(),
                    cells.len()
                )))
            }
            Some(w) if w.contains(&0) => {
                return Err(Error::InvalidComplex("weights must be positive".into()))
            }
            Some(w) => w,
            None => vec![1; cells.len()],
        };
        let lineality = Subspace::span(ambient_dim, &lineality);

        let mut ray_pool: Vec<QVector> = Vec::new();
        let mut ray_classes: HashMap<QVector, usize> = HashMap::new();
        let mut ray_map: Vec<Option<usize>> = Vec::with_capacity(rays.len());
        for r in rays {
            let r = primitive(&r).map_err(|_| Error::InvalidComplex("zero ray".into()))?;
            let class = primitive_or_zero(&lineality.reduce(&r));
            if class.is_zero() {
                ray_map.push(None);
                continue;
            }
            let idx = *ray_classes.entry(class).or_insert_with(|| {
                ray_pool.push(r);
                ray_pool.len() - 1
            });
            ray_map.push(Some(idx));
        }
        let mut vertex_pool: Vec<QVector> = Vec::new();
        let mut vertex_classes: HashMap<QVector, usize> = HashMap::new();
        let mut vertex_map = Vec::with_capacity(vertices.len());
        for v in vertices {
            let class = lineality.reduce(&v);
            let idx = *vertex_classes.entry(class).or_insert_with(|| {
                vertex_pool.push(v);
                vertex_pool.len() - 1
            });
            vertex_map.push(idx);
        }
        let mut new_cells = Vec::with_capacity(cells.len());
        for c in cells {
            let mut vs = Vec::with_capacity(c.vertices.len());
            for &i in &c.vertices {
                vs.push(
                    *vertex_map
                        .get(i)
                        .ok_or_else(|| Error::InvalidComplex(format!("vertex index {i} out of range")))?,
                );
            }
            let mut rs = Vec::with_capacity(c.rays.len());
            for &i in &c.rays {
                let m = ray_map
                    .get(i)
                    .ok_or_else(|| Error::InvalidComplex(format!("ray index {i} out of range")))?;
                rs.extend(*m);
            }
            new_cells.push(Cell::new(vs, rs));
        }
        Ok(Complex {
            ambient_dim,
            vertices: vertex_pool,
            rays: ray_pool,
            lineality,
            cells: new_cells,
            weights,
            derived: OnceLock::new(),
            ridges: OnceLock::new(),
        })
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

    /// Declared lineality space.
    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    pub fn lineality_basis(&self) -> Vec<QVector> {
        self.lineality.integer_basis()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// True when every cell is a cone with apex at the origin.
    pub fn is_fan(&self) -> bool {
        self.cells.iter().all(|c| c.vertices.is_empty())
    }

    pub fn cell_polyhedron(&self, i: usize) -> &Polyhedron {
        &self.derived().polyhedra[i]
    }

    pub fn cell_dim(&self, i: usize) -> usize {
        self.derived().dims[i]
    }

    /// Maximum cell dimension.
    pub fn dim(&self) -> usize {
        self.derived().dims.iter().copied().max().unwrap_or(0)
    }

    /// Indices of inclusion-maximal cells, in cell order.
    pub fn facets(&self) -> &[usize] {
        &self.derived().facets
    }

    pub fn facet_polyhedron(&self, position: usize) -> &Polyhedron {
        self.cell_polyhedron(self.facets()[position])
    }

    pub fn facet_weight(&self, position: usize) -> u64 {
        self.weights[self.facets()[position]]
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|&f| self.cell_dim(f) == d)
    }

    fn build_polyhedron(&self, c: &Cell) -> Polyhedron {
        Polyhedron::new(
            self.ambient_dim,
            c.vertices.iter().map(|&i| self.vertices[i].clone()).collect(),
            c.rays.iter().map(|&i| self.rays[i].clone()).collect(),
            self.lineality.echelon_basis().to_vec(),
        )
        .expect("pool vectors have the ambient dimension")
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let polyhedra: Vec<Polyhedron> = self.cells.iter().map(|c| self.build_polyhedron(c)).collect();
            let dims: Vec<usize> = polyhedra.iter().map(Polyhedron::dim).collect();
            let facets = (0..self.cells.len())
                .filter(|&i| {
                    let duplicate = self.cells[..i].contains(&self.cells[i]);
                    let covered = (0..self.cells.len())
                        .any(|j| dims[j] > dims[i] && polyhedra[j].contains(&polyhedra[i]));
                    !duplicate && !covered
                })
                .collect();
            Derived {
                polyhedra,
                dims,
                facets,
            }
        })
    }

    /// Ridges (codimension-one faces of facets), deduplicated by canonical
    /// form, in order of first appearance.
    pub fn ridges(&self) -> Result<&[Ridge]> {
        if !self.is_pure() {
            return Err(Error::InvalidComplex("complex is not pure".into()));
        }
        Ok(self.ridges.get_or_init(|| {
            let mut ridges: Vec<Ridge> = Vec::new();
            let mut index: HashMap<CellKey, usize> = HashMap::new();
            for (pos, &f) in self.facets().iter().enumerate() {
                for face in self.cell_polyhedron(f).codim1_faces() {
                    let key = face.key();
                    match index.get(&key) {
                        Some(&r) => ridges[r].facets.push(pos),
                        None => {
                            index.insert(key, ridges.len());
                            ridges.push(Ridge {
                                face,
                                facets: vec![pos],
                            });
                        }
                    }
                }
            }
            ridges
        }))
    }

    /// Canonical forms of the facets, for comparing complexes as point-set
    /// fans regardless of pool order.
    pub fn facet_keys(&self) -> BTreeSet<CellKey> {
        self.facets()
            .iter()
            .map(|&f| self.cell_polyhedron(f).key())
            .collect()
    }

    /// Same facets as point sets and same lineality.
    pub fn same_facets(&self, other: &Complex) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.lineality == other.lineality
            && self.facet_keys() == other.facet_keys()
    }

    /// Keeps only the listed cells (with their weights).
    pub fn subcomplex(&self, cells: &[usize]) -> Result<Complex> {
        Complex::new(
            self.ambient_dim,
            self.vertices.clone(),
            self.rays.clone(),
            self.lineality_basis(),
            cells.iter().map(|&i| self.cells[i].clone()).collect(),
            Some(cells.iter().map(|&i| self.weights[i]).collect()),
        )
    }
}

/// Collects polyhedra into a [`Complex`], pooling their generators.
#[derive(Debug)]
pub struct ComplexBuilder {
    ambient_dim: usize,
    lineality: Vec<QVector>,
    vertices: Vec<QVector>,
    rays: Vec<QVector>,
    cells: Vec<Cell>,
    weights: Vec<u64>,
}

impl ComplexBuilder {
    pub fn new(ambient_dim: usize, lineality: Vec<QVector>) -> Self {
        ComplexBuilder {
            ambient_dim,
            lineality,
            vertices: Vec::new(),
            rays: Vec::new(),
            cells: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn index_of(pool: &mut Vec<QVector>, v: &QVector) -> usize {
        match pool.iter().position(|x| x == v) {
            Some(i) => i,
            None => {
                pool.push(v.clone());
                pool.len() - 1
            }
        }
    }

    /// Adds a cell; cones are stored with an implicit apex.
    pub fn push(&mut self, p: &Polyhedron, weight: u64) -> usize {
        let vs = if p.is_cone() {
            Vec::new()
        } else {
            p.vertices()
                .iter()
                .map(|v| Self::index_of(&mut self.vertices, v))
                .collect()
        };
        let rs = p
            .rays()
            .iter()
            .map(|r| Self::index_of(&mut self.rays, r))
            .collect();
        self.cells.push(Cell::new(vs, rs));
        self.weights.push(weight);
        self.cells.len() - 1
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn build(self) -> Result<Complex> {
        Complex::new(
            self.ambient_dim,
            self.vertices,
            self.rays,
            self.lineality,
            self.cells,
            Some(self.weights),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Impure {
        cell: usize,
        dim: usize,
        expected: usize,
    },
    MissingLineality {
        cell: usize,
    },
    DuplicateCell {
        cell: usize,
        first: usize,
    },
    BadIntersection {
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Impure { cell, dim, expected } => {
                write!(f, "maximal cell {cell} has dimension {dim}, expected {expected}")
            }
            Violation::MissingLineality { cell } => {
                write!(f, "cell {cell} does not contain the declared lineality space")
            }
            Violation::DuplicateCell { cell, first } => {
                write!(f, "cell {cell} duplicates cell {first}")
            }
            Violation::BadIntersection { first, second } => write!(
                f,
                "cells {first} and {second} meet in a set that is not a common face"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    pub pure: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks purity and lineality containment, and optionally that any two
/// cells meet in a common face. Reports the first violation found.
pub fn validate_complex(c: &Complex, check_intersections: bool) -> ValidationReport {
    let dim = c.dim();
    let pure = c.is_pure();
    let report = |violation| ValidationReport { dim, pure, violation };
    if let Some(&cell) = c.facets().iter().find(|&&f| c.cell_dim(f) != dim) {
        return report(Some(Violation::Impure {
            cell,
            dim: c.cell_dim(cell),
            expected: dim,
        }));
    }
    for i in 0..c.cells().len() {
        let (_, lin, _) = c.cell_polyhedron(i).dim_lineality_pointed();
        if !lin.contains_subspace(c.lineality()) {
            return report(Some(Violation::MissingLineality { cell: i }));
        }
        if let Some(first) = (0..i).find(|&j| c.cells()[j] == c.cells()[i]) {
            return report(Some(Violation::DuplicateCell { cell: i, first }));
        }
    }
    if check_intersections {
        let n = c.cells().len();
        for i in 0..n {
            for j in i + 1..n {
                let (p, q) = (c.cell_polyhedron(i), c.cell_polyhedron(j));
                if !meet_in_common_face(p, q) {
                    return report(Some(Violation::BadIntersection { first: i, second: j }));
                }
            }
        }
    }
    report(None)
}

fn meet_in_common_face(p: &Polyhedron, q: &Polyhedron) -> bool {
    let (hp, hq) = (p.hrep(), q.hrep());
    let h = HRep {
        ambient_dim: hp.ambient_dim,
        inequalities: hp.inequalities.iter().chain(&hq.inequalities).cloned().collect(),
        equations: hp.equations.iter().chain(&hq.equations).cloned().collect(),
    };
    match h.to_polyhedron() {
        Err(_) => true,
        Ok(meet) => is_face_of(&meet, p) && is_face_of(&meet, q),
    }
}
