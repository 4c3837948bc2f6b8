//! Matroids given by rank oracles, their lattices of flats, and Bergman fans
//! in the fine subdivision.
//!
//! Subsets of the ground set `{0, …, n-1}` are bitmasks; every rank query is
//! memoized behind a mutex so a [`Matroid`] can be shared across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::polyhedral::{Cell, Complex};
use crate::ratlin::{rank_of, QVector};
use crate::{Error, Result};

/// Default cap on ground set size.
pub const DEFAULT_GROUND_LIMIT: usize = 12;

pub type ElementSet = u64;

pub fn set_of(elements: &[usize]) -> ElementSet {
    elements.iter().fold(0, |acc, &e| acc | (1 << e))
}

pub fn elements_of(set: ElementSet) -> Vec<usize> {
    (0..64).filter(|&e| set & (1 << e) != 0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Uniform,
    Graphic,
    Linear,
    Bases,
    Minor,
}

#[derive(Clone, Debug)]
enum Source {
    Uniform {
        rank: usize,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Linear {
        columns: Vec<QVector>,
    },
    Bases {
        bases: Vec<ElementSet>,
    },
    Minor {
        parent: Arc<Matroid>,
        map: Vec<usize>,
        contracted: ElementSet,
    },
}

pub struct Matroid {
    ground: usize,
    /// element labels in the matroid this one was derived from
    labels: Vec<usize>,
    source: Source,
    memo: Mutex<HashMap<ElementSet, usize>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid::from_source(self.ground, self.labels.clone(), self.source.clone())
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("rank", &self.rank())
            .field("provenance", &self.provenance())
            .finish()
    }
}

/// A flat with its rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub elements: Vec<usize>,
}

impl Flat {
    pub fn mask(&self) -> ElementSet {
        set_of(&self.elements)
    }
}

/// Strictly increasing chain of proper nonempty flats.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagChain {
    pub flats: Vec<Flat>,
}

fn check_ground(n: usize) -> Result<()> {
    if n > DEFAULT_GROUND_LIMIT {
        return Err(Error::InvalidMatroid(format!(
            "ground set of size {n} exceeds the limit of {DEFAULT_GROUND_LIMIT}"
        )));
    }
    Ok(())
}

impl Matroid {
    fn from_source(ground: usize, labels: Vec<usize>, source: Source) -> Self {
        Matroid {
            ground,
            labels,
            source,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        check_ground(n)?;
        if rank > n {
            return Err(Error::InvalidMatroid(format!(
                "rank {rank} exceeds ground size {n}"
            )));
        }
        Ok(Self::from_source(n, (0..n).collect(), Source::Uniform { rank }))
    }

    /// The cycle matroid of a graph; element `i` is `edges[i]`.
    pub fn graphic(edges: &[(usize, usize)]) -> Result<Self> {
        check_ground(edges.len())?;
        let vertices = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        Ok(Self::from_source(
            edges.len(),
            (0..edges.len()).collect(),
            Source::Graphic {
                vertices,
                edges: edges.to_vec(),
            },
        ))
    }

    /// The vector matroid of the given columns.
    pub fn linear(columns: Vec<QVector>) -> Result<Self> {
        check_ground(columns.len())?;
        if let Some(len) = columns.first().map(QVector::len) {
            if columns.iter().any(|c| c.len() != len) {
                return Err(Error::InvalidMatroid("columns of different lengths".into()));
            }
        }
        Ok(Self::from_source(
            columns.len(),
            (0..columns.len()).collect(),
            Source::Linear { columns },
        ))
    }

    /// A matroid from its list of bases.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self> {
        check_ground(n)?;
        let Some(first) = bases.first() else {
            return Err(Error::InvalidMatroid("no bases".into()));
        };
        let size = first.len();
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            if b.iter().any(|&e| e >= n) {
                return Err(Error::InvalidMatroid(format!(
                    "basis {b:?} leaves the ground set"
                )));
            }
            let m = set_of(b);
            if m.count_ones() as usize != size {
                return Err(Error::InvalidMatroid("bases of different sizes".into()));
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(Self::from_source(
            n,
            (0..n).collect(),
            Source::Bases { bases: masks },
        ))
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn ground_set(&self) -> ElementSet {
        if self.ground == 64 {
            u64::MAX
        } else {
            (1u64 << self.ground) - 1
        }
    }

    /// Labels of the elements in the matroid this one was derived from
    /// (identity for matroids built directly).
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        match self.source {
            Source::Uniform { .. } => Provenance::Uniform,
            Source::Graphic { .. } => Provenance::Graphic,
            Source::Linear { .. } => Provenance::Linear,
            Source::Bases { .. } => Provenance::Bases,
            Source::Minor { .. } => Provenance::Minor,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_of(self.ground_set())
    }

    pub fn rank_of(&self, set: ElementSet) -> usize {
        let set = set & self.ground_set();
        if let Some(&r) = self.memo.lock().unwrap().get(&set) {
            return r;
        }
        let r = self.compute_rank(set);
        self.memo.lock().unwrap().insert(set, r);
        r
    }

    fn compute_rank(&self, set: ElementSet) -> usize {
        match &self.source {
            Source::Uniform { rank } => (set.count_ones() as usize).min(*rank),
            Source::Graphic { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                let mut r = 0;
                for e in elements_of(set) {
                    let (a, b) = edges[e];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                        r += 1;
                    }
                }
                r
            }
            Source::Linear { columns } => {
                let cols: Vec<QVector> = elements_of(set).into_iter().map(|e| columns[e].clone()).collect();
                let len = columns.first().map(QVector::len).unwrap_or(0);
                rank_of(&cols, len)
            }
            Source::Bases { bases } => bases
                .iter()
                .map(|b| (b & set).count_ones() as usize)
                .max()
                .unwrap_or(0),
            Source::Minor {
                parent,
                map,
                contracted,
            } => {
                let lifted = elements_of(set).into_iter().fold(0, |acc, e| acc | (1 << map[e]));
                parent.rank_of(lifted | contracted) - parent.rank_of(*contracted)
            }
        }
    }

    /// Closure of `set` and its rank.
    pub fn closure_and_rank(&self, set: ElementSet) -> (Flat, usize) {
        let r = self.rank_of(set);
        let closure = (0..self.ground)
            .filter(|&e| set & (1 << e) != 0 || self.rank_of(set | (1 << e)) == r)
            .collect();
        (
            Flat {
                rank: r,
                elements: closure,
            },
            r,
        )
    }

    pub fn closure(&self, set: ElementSet) -> ElementSet {
        self.closure_and_rank(set).0.mask()
    }

    /// `(parallel classes, loops)`.
    pub fn parallel_classes_and_loops(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let loops: Vec<usize> = (0..self.ground).filter(|&e| self.rank_of(1 << e) == 0).collect();
        let loop_mask = set_of(&loops);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for e in 0..self.ground {
            if loop_mask & (1 << e) != 0 || classes.iter().any(|c| c.contains(&e)) {
                continue;
            }
            classes.push(elements_of(self.closure(1 << e) & !loop_mask));
        }
        (classes, loops)
    }

    pub fn loops(&self) -> Vec<usize> {
        self.parallel_classes_and_loops().1
    }

    /// Flats of rank `1..rank()-1`, sorted by rank and then elements.
    ///
    /// Built upward: rank-one flats are closures of single non-loops, and each
    /// flat's covers are closures of the flat plus one outside element.
    pub fn proper_flats(&self) -> Vec<Flat> {
        let full = self.rank();
        let mut layer: Vec<ElementSet> = (0..self.ground)
            .filter(|&e| self.rank_of(1 << e) == 1)
            .map(|e| self.closure(1 << e))
            .collect();
        let mut flats = Vec::new();
        let mut rank = 1;
        while rank < full {
            layer.sort_unstable_by_key(|&m| elements_of(m));
            layer.dedup();
            flats.extend(layer.iter().map(|&m| Flat {
                rank,
                elements: elements_of(m),
            }));
            let mut next = Vec::new();
            for &f in &layer {
                for e in 0..self.ground {
                    if f & (1 << e) == 0 {
                        next.push(self.closure(f | (1 << e)));
                    }
                }
            }
            layer = next;
            rank += 1;
        }
        flats
    }

    fn require_loop_free(&self) -> Result<()> {
        match self.loops().first() {
            Some(&e) => Err(Error::HasLoops(e)),
            None => Ok(()),
        }
    }

    /// Chains `F_1 ⊊ … ⊊ F_d` of proper flats with `rank(F_i) = i`, where
    /// `rank() = d + 1`, in lexicographic order of flat positions.
    pub fn maximal_chains(&self) -> Result<Vec<FlagChain>> {
        self.require_loop_free()?;
        let flats = self.proper_flats();
        Ok(self
            .chain_indices(&flats)
            .into_iter()
            .map(|c| FlagChain {
                flats: c.into_iter().map(|i| flats[i].clone()).collect(),
            })
            .collect())
    }

    fn chain_indices(&self, flats: &[Flat]) -> Vec<Vec<usize>> {
        let d = self.rank().saturating_sub(1);
        let masks: Vec<ElementSet> = flats.iter().map(Flat::mask).collect();
        let mut chains = Vec::new();
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(chain) = stack.pop() {
            if chain.len() == d {
                chains.push(chain);
                continue;
            }
            let next_rank = chain.len() + 1;
            let below = chain.last().map(|&i| masks[i]).unwrap_or(0);
            // push in reverse so that pops come out in increasing order
            for i in (0..flats.len()).rev() {
                if flats[i].rank == next_rank && masks[i] & below == below {
                    let mut c = chain.clone();
                    c.push(i);
                    stack.push(c);
                }
            }
        }
        chains
    }

    /// `M / e`, on the remaining elements relabeled `0..n-1` in order.
    pub fn contraction(self: &Arc<Self>, e: usize) -> Result<Matroid> {
        if e >= self.ground {
            return Err(Error::InvalidMatroid(format!(
                "element {e} not in the ground set"
            )));
        }
        if self.rank_of(1 << e) == 0 {
            return Err(Error::LoopContraction(e));
        }
        Ok(self.minor(1 << e, 1 << e))
    }

    /// `M \ S`, on the remaining elements relabeled in order.
    pub fn deletion(self: &Arc<Self>, set: ElementSet) -> Matroid {
        self.minor(set, 0)
    }

    fn minor(self: &Arc<Self>, removed: ElementSet, contracted: ElementSet) -> Matroid {
        let map: Vec<usize> = (0..self.ground).filter(|&x| removed & (1 << x) == 0).collect();
        let labels = map.iter().map(|&x| self.labels[x]).collect();
        Matroid::from_source(
            map.len(),
            labels,
            Source::Minor {
                parent: Arc::clone(self),
                map,
                contracted,
            },
        )
    }

    /// Checks the rank axioms on every subset. Intended for small ground sets.
    pub fn verify_rank_axioms(&self) -> std::result::Result<(), String> {
        let full = self.ground_set();
        if self.rank_of(0) != 0 {
            return Err("rank of the empty set is not zero".into());
        }
        for s in 0..=full {
            let rs = self.rank_of(s);
            for e in 0..self.ground {
                if s & (1 << e) == 0 {
                    let r = self.rank_of(s | (1 << e));
                    if r < rs || r > rs + 1 {
                        return Err(format!("unit increase fails at {:?} + {e}", elements_of(s)));
                    }
                    // local submodularity: r(S+e) + r(S+f) ≥ r(S+e+f) + r(S)
                    for f in e + 1..self.ground {
                        if s & (1 << f) == 0 {
                            let rf = self.rank_of(s | (1 << f));
                            let ref_ = self.rank_of(s | (1 << e) | (1 << f));
                            if r + rf < ref_ + rs {
                                return Err(format!(
                                    "submodularity fails at {:?} with {e}, {f}",
                                    elements_of(s)
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The fine subdivision of the Bergman fan in `Q^n`: one ray per proper flat
/// (its 0/1 indicator vector), one facet per maximal chain, lineality spanned
/// by the all-ones vector, weights one.
pub fn bergman_fine(m: &Matroid) -> Result<Complex> {
    m.require_loop_free()?;
    let n = m.ground_size();
    let flats = m.proper_flats();
    let rays: Vec<QVector> = flats
        .iter()
        .map(|f| {
            let mut v = vec![0; n];
            for &e in &f.elements {
                v[e] = 1;
            }
            QVector::from_ints(&v)
        })
        .collect();
    let cells = m.chain_indices(&flats).into_iter().map(Cell::cone).collect();
    Complex::new(
        n,
        Vec::new(),
        rays,
        vec![QVector::from_ints(&vec![1; n])],
        cells,
        None,
    )
}

/// JSON input format for matroids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    Uniform {
        r: usize,
        n: usize,
    },
    Graphic {
        edges: Vec<(usize, usize)>,
    },
    /// Column entries are integers or `"p/q"` strings.
    Linear {
        columns: Vec<Vec<serde_json::Value>>,
    },
    Bases {
        n: usize,
        bases: Vec<Vec<usize>>,
    },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Uniform { r, n } => Matroid::uniform(*r, *n),
            MatroidSpec::Graphic { edges } => Matroid::graphic(edges),
            MatroidSpec::Linear { columns } => {
                let cols = columns
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(crate::io::rational_from_json)
                            .collect::<Result<QVector>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matroid::linear(cols)
            }
            MatroidSpec::Bases { n, bases } => Matroid::from_bases(*n, bases),
        }
    }
}

impl std::str::FromStr for MatroidSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Matroid {
        Matroid::graphic(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn closures() {
        let u34 = Matroid::uniform(3, 4).unwrap();
        let (f, r) = u34.closure_and_rank(set_of(&[0, 1]));
        assert_eq!((f.elements, r), (vec![0, 1], 2));
        let (f, r) = u34.closure_and_rank(set_of(&[0, 1, 2]));
        assert_eq!((f.elements, r), (vec![0, 1, 2, 3], 3));
        // edges 01 and 02 close up to the triangle 01, 02, 12
        let (f, r) = k4().closure_and_rank(set_of(&[0, 1]));
        assert_eq!((f.elements, r), (vec![0, 1, 3], 2));
    }

    #[test]
    fn flat_counts() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().proper_flats().len(), 3);
        let f = Matroid::uniform(3, 4).unwrap().proper_flats();
        assert_eq!(f.iter().filter(|f| f.rank == 1).count(), 4);
        assert_eq!(f.iter().filter(|f| f.rank == 2).count(), 6);
        let f = k4().proper_flats();
        assert_eq!(f.len(), 13);
        assert_eq!(
            f.iter().filter(|f| f.rank == 2 && f.elements.len() == 3).count(),
            4
        );
        assert_eq!(
            f.iter().filter(|f| f.rank == 2 && f.elements.len() == 2).count(),
            3
        );
    }

    #[test]
    fn chain_counts() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().maximal_chains().unwrap().len(), 3);
        assert_eq!(
            Matroid::uniform(3, 4).unwrap().maximal_chains().unwrap().len(),
            12
        );
        assert_eq!(k4().maximal_chains().unwrap().len(), 18);
    }

    #[test]
    fn bergman_shapes() {
        for (m, rays, facets, dim) in [
            (Matroid::uniform(2, 3).unwrap(), 3, 3, 2),
            (Matroid::uniform(3, 4).unwrap(), 10, 12, 3),
            (k4(), 13, 18, 3),
        ] {
            let b = bergman_fine(&m).unwrap();
            assert_eq!(b.rays().len(), rays);
            assert_eq!(b.facets().len(), facets);
            assert_eq!(b.dim(), dim);
            assert_eq!(b.lineality().dim(), 1);
        }
    }

    #[test]
    fn loops_are_rejected() {
        let m = Matroid::from_bases(3, &[vec![0], vec![1]]).unwrap();
        assert_eq!(m.maximal_chains().unwrap_err(), Error::HasLoops(2));
        assert_eq!(bergman_fine(&m).unwrap_err(), Error::HasLoops(2));
        let (classes, loops) = m.parallel_classes_and_loops();
        assert_eq!(classes, vec![vec![0, 1]]);
        assert_eq!(loops, vec![2]);
        let m = Arc::new(m);
        assert_eq!(m.contraction(2).unwrap_err(), Error::LoopContraction(2));
    }

    #[test]
    fn uniform_contraction() {
        let u34 = Arc::new(Matroid::uniform(3, 4).unwrap());
        let c = u34.contraction(0).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(c.labels(), &[1, 2, 3]);
        for s in 0..8 {
            assert_eq!(c.rank_of(s), u23.rank_of(s));
        }
        assert_eq!(c.rank(), u34.rank() - 1);
    }

    #[test]
    fn graphic_contraction_matches_contracted_graph() {
        let k4 = Arc::new(k4());
        // contract edge 01: vertex 1 merges into 0
        let c = k4.contraction(0).unwrap();
        let merged = Matroid::graphic(&[(0, 2), (0, 3), (0, 2), (0, 3), (2, 3)]).unwrap();
        for s in 0..32 {
            assert_eq!(c.rank_of(s), merged.rank_of(s));
        }
        let (classes, loops) = c.parallel_classes_and_loops();
        assert!(loops.is_empty());
        assert_eq!(classes, vec![vec![0, 2], vec![1, 3], vec![4]]);
    }

    #[test]
    fn rank_axioms_hold() {
        for m in [
            Matroid::uniform(3, 6).unwrap(),
            k4(),
            Matroid::from_bases(4, &[vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3]]).unwrap(),
            Matroid::linear(vec![
                QVector::from_ints(&[1, 0, 0]),
                QVector::from_ints(&[0, 1, 0]),
                QVector::from_ints(&[1, 1, 0]),
                QVector::from_ints(&[0, 0, 1]),
                QVector::from_ints(&[2, 2, 0]),
            ])
            .unwrap(),
        ] {
            m.verify_rank_axioms().unwrap();
        }
    }

    #[test]
    fn spec_parsing() {
        let s: MatroidSpec = r#"{"type":"uniform","r":3,"n":4}"#.parse().unwrap();
        assert_eq!(s.build().unwrap().rank(), 3);
        let s: MatroidSpec = r#"{"type":"linear","columns":[[1,0],[0,"1/2"],[1,1]]}"#.parse().unwrap();
        assert_eq!(s.build().unwrap().rank(), 2);
        let s: MatroidSpec = r#"{"type":"graphic","edges":[[0,1],[1,2],[0,2]]}"#.parse().unwrap();
        assert_eq!(s.build().unwrap().rank(), 2);
        assert!(Matroid::uniform(2, 13).is_err());
    }
}
