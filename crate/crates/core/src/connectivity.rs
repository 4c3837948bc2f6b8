//! Facet-ridge hypergraphs and exhaustive k-connectivity certification.
//!
//! Removing a facet removes it together with every hyperedge (ridge) that
//! contains it. A hypergraph is connected when any two remaining facets are
//! joined by a path whose steps share a remaining hyperedge. Subsets are
//! enumerated in colex order, so certificates and witnesses do not depend on
//! the number of worker threads.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::polyhedral::Complex;
use crate::{Error, Result};

/// Default number of subset checks allowed per search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetRidgeHypergraph {
    facet_labels: Vec<String>,
    ridge_labels: Vec<String>,
    hyperedges: Vec<Vec<usize>>,
}

impl FacetRidgeHypergraph {
    /// Hyperedges are facet-id lists; each must be nonempty and in range.
    /// Distinct hyperedges may contain the same facets.
    pub fn new(num_facets: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        let facet_labels = (0..num_facets).map(|i| format!("F{i}")).collect();
        let ridge_labels = (0..hyperedges.len()).map(|i| format!("R{i}")).collect();
        Self::with_labels(facet_labels, ridge_labels, hyperedges)
    }

    pub fn with_labels(
        facet_labels: Vec<String>,
        ridge_labels: Vec<String>,
        mut hyperedges: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if ridge_labels.len() != hyperedges.len() {
            return Err(Error::InvalidComplex("one label per ridge required".into()));
        }
        for e in hyperedges.iter_mut() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(Error::InvalidComplex("empty hyperedge".into()));
            }
            if e.iter().any(|&f| f >= facet_labels.len()) {
                return Err(Error::InvalidComplex(
                    "hyperedge refers to a missing facet".into(),
                ));
            }
        }
        Ok(FacetRidgeHypergraph {
            facet_labels,
            ridge_labels,
            hyperedges,
        })
    }

    pub fn num_facets(&self) -> usize {
        self.facet_labels.len()
    }

    pub fn num_ridges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn hyperedges(&self) -> &[Vec<usize>] {
        &self.hyperedges
    }

    pub fn facet_labels(&self) -> &[String] {
        &self.facet_labels
    }

    pub fn ridge_labels(&self) -> &[String] {
        &self.ridge_labels
    }

    /// Sorted hyperedge sizes.
    pub fn hyperedge_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.hyperedges.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    /// Number of connected components after removing `removed` with closed
    /// facet semantics.
    pub fn components_after_removal(&self, removed: &[usize]) -> usize {
        let mut gone = vec![false; self.num_facets()];
        for &f in removed {
            gone[f] = true;
        }
        let mut uf = UnionFind::new(self.num_facets());
        for e in &self.hyperedges {
            if e.iter().any(|&f| gone[f]) {
                continue;
            }
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.count_roots(|f| !gone[f])
    }

    pub fn components(&self) -> usize {
        self.components_after_removal(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components() <= 1
    }

    /// Same facet count and the same multiset of hyperedges, with facet ids
    /// matched by position.
    pub fn same_incidence(&self, other: &FacetRidgeHypergraph) -> bool {
        let mut a = self.hyperedges.clone();
        let mut b = other.hyperedges.clone();
        a.sort();
        b.sort();
        self.num_facets() == other.num_facets() && a == b
    }

    /// Graphviz rendering of the bipartite facet/ridge incidence graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph facet_ridge {\n");
        for (i, l) in self.facet_labels.iter().enumerate() {
            let _ = writeln!(out, "  f{i} [shape=box, label=\"{}\"];", escape(l));
        }
        for (i, l) in self.ridge_labels.iter().enumerate() {
            let _ = writeln!(out, "  r{i} [shape=circle, label=\"{}\"];", escape(l));
        }
        for (i, e) in self.hyperedges.iter().enumerate() {
            for f in e {
                let _ = writeln!(out, "  f{f} -- r{i};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    fn count_roots(&mut self, keep: impl Fn(usize) -> bool) -> usize {
        (0..self.0.len())
            .filter(|&x| keep(x) && self.find(x) == x)
            .count()
    }
}

/// Facet-ridge hypergraph of a pure complex. Facet ids are positions in
/// [`Complex::facets`]; ridges are deduplicated by canonical form.
pub fn build_hypergraph(c: &Complex) -> Result<FacetRidgeHypergraph> {
    let ridges = c.ridges()?;
    let facet_labels = (0..c.facets().len())
        .map(|i| c.facet_polyhedron(i).to_string())
        .collect();
    let ridge_labels = ridges.iter().map(|r| r.face.to_string()).collect();
    FacetRidgeHypergraph::with_labels(
        facet_labels,
        ridge_labels,
        ridges.iter().map(|r| r.facets.clone()).collect(),
    )
}

/// Closed-facet removal: drop `removed` and every hyperedge meeting it, then
/// test connectivity. Vacuously true when at most one facet remains.
pub fn connected_after_removal(h: &FacetRidgeHypergraph, removed: &[usize]) -> bool {
    h.components_after_removal(removed) <= 1
}

/// Clique-expansion semantics for comparison: removed facets disappear, but
/// the hyperedges survive on their remaining members.
pub fn clique_connected_after_removal(h: &FacetRidgeHypergraph, removed: &[usize]) -> bool {
    let mut gone = vec![false; h.num_facets()];
    for &f in removed {
        gone[f] = true;
    }
    let mut uf = UnionFind::new(h.num_facets());
    for e in h.hyperedges() {
        let alive: Vec<usize> = e.iter().copied().filter(|&f| !gone[f]).collect();
        for w in alive.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    uf.count_roots(|f| !gone[f]) <= 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityCertificate {
    pub k: usize,
    pub verdict: bool,
    /// A disconnecting set of `k - 1` facets when the verdict is false.
    pub witness: Option<Vec<usize>>,
    pub subsets_examined: u64,
}

impl ConnectivityCertificate {
    /// Re-runs the removal on the witness and checks it reproduces the verdict.
    pub fn recheck(&self, h: &FacetRidgeHypergraph) -> bool {
        match &self.witness {
            Some(w) => !self.verdict && w.len() + 1 == self.k && !connected_after_removal(h, w),
            None => self.verdict,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Colex rank of a sorted subset.
pub fn colex_rank(subset: &[usize]) -> u128 {
    subset.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Advances `c` to the next subset of `0..` of the same size in colex order.
fn next_colex(c: &mut [usize]) {
    let s = c.len();
    let mut i = 0;
    while i + 1 < s && c[i] + 1 == c[i + 1] {
        i += 1;
    }
    c[i] += 1;
    for (j, x) in c.iter_mut().enumerate().take(i) {
        *x = j;
    }
}

struct Search {
    witness: Option<Vec<usize>>,
    examined: u64,
}

/// Colex-least subset of size `s` whose removal disconnects, examining at
/// most `budget` subsets.
fn find_disconnecting(h: &FacetRidgeHypergraph, s: usize, budget: u64, jobs: usize) -> Result<Search> {
    let f = h.num_facets();
    let total = binomial(f, s);
    if s == 0 {
        if budget == 0 {
            return Err(Error::BudgetExceeded { budget, required: 1 });
        }
        let witness = (!connected_after_removal(h, &[])).then(Vec::new);
        return Ok(Search { witness, examined: 1 });
    }
    let limit = total.min(budget as u128);
    // Blocks grouped by largest element m; block m covers colex ranks
    // [C(m, s), C(m + 1, s)).
    let blocks: Vec<usize> = (s - 1..f).filter(|&m| binomial(m, s) < limit).collect();
    let next_block = AtomicUsize::new(0);
    let best_block = AtomicUsize::new(usize::MAX);
    let found: Mutex<Option<(usize, Vec<usize>)>> = Mutex::new(None);

    let work = || loop {
        let bi = next_block.fetch_add(1, Ordering::SeqCst);
        let Some(&m) = blocks.get(bi) else { break };
        if m > best_block.load(Ordering::SeqCst) {
            break;
        }
        let start = binomial(m, s);
        let mut c: Vec<usize> = (0..s - 1).collect();
        c.push(m);
        let mut rank = start;
        while rank < limit && c[s - 1] == m {
            if !connected_after_removal(h, &c) {
                best_block.fetch_min(m, Ordering::SeqCst);
                let mut g = found.lock().unwrap();
                if g.as_ref().is_none_or(|(bm, _)| m < *bm) {
                    *g = Some((m, c.clone()));
                }
                break;
            }
            if s == 1 {
                break;
            }
            next_colex(&mut c[..s - 1]);
            if c[s - 2] >= m {
                break;
            }
            rank += 1;
        }
    };
    if jobs <= 1 {
        work();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(work);
            }
        });
    }
    let witness = found.into_inner().unwrap().map(|(_, w)| w);
    match witness {
        Some(w) => {
            let examined = (colex_rank(&w) + 1) as u64;
            Ok(Search {
                witness: Some(w),
                examined,
            })
        }
        None if total > budget as u128 => Err(Error::BudgetExceeded {
            budget,
            required: total,
        }),
        None => Ok(Search {
            witness: None,
            examined: total as u64,
        }),
    }
}

/// Tests every removal of `k - 1` facets. `k = 0` is treated like `k = 1`.
pub fn is_k_connected(
    h: &FacetRidgeHypergraph,
    k: usize,
    opts: &SearchOptions,
) -> Result<ConnectivityCertificate> {
    let s = k.saturating_sub(1);
    if s > h.num_facets() {
        return Ok(ConnectivityCertificate {
            k,
            verdict: true,
            witness: None,
            subsets_examined: 0,
        });
    }
    let r = find_disconnecting(h, s, opts.budget, opts.jobs)?;
    Ok(ConnectivityCertificate {
        k,
        verdict: r.witness.is_none(),
        witness: r.witness,
        subsets_examined: r.examined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinCut {
    Cut {
        size: usize,
        witness: Vec<usize>,
    },
    /// No removal leaving at least two facets disconnects.
    NoCut,
}

impl MinCut {
    pub fn size(&self) -> Option<usize> {
        match self {
            MinCut::Cut { size, .. } => Some(*size),
            MinCut::NoCut => None,
        }
    }
}

/// Smallest number of neighbors that must be removed to isolate some facet
/// while keeping at least one other facet. Greedy hitting sets, so an upper
/// bound on the minimum cut.
pub fn isolation_bound(h: &FacetRidgeHypergraph) -> Option<usize> {
    let n = h.num_facets();
    let mut best: Option<usize> = None;
    for f in 0..n {
        let mut pending: Vec<Vec<usize>> = h
            .hyperedges()
            .iter()
            .filter(|e| e.contains(&f) && e.len() > 1)
            .map(|e| e.iter().copied().filter(|&g| g != f).collect())
            .collect();
        let mut chosen = Vec::new();
        while !pending.is_empty() {
            let mut counts = vec![0usize; n];
            for e in &pending {
                for &g in e {
                    counts[g] += 1;
                }
            }
            let g = (0..n).max_by_key(|&g| (counts[g], std::cmp::Reverse(g))).unwrap();
            chosen.push(g);
            pending.retain(|e| !e.contains(&g));
        }
        if n - chosen.len() >= 2 {
            best = Some(best.map_or(chosen.len(), |b| b.min(chosen.len())));
        }
    }
    best
}

/// Smallest facet set whose removal leaves at least two facets, disconnected.
/// Sizes are searched upward to the isolation bound, returning the colex-least
/// witness of the first size that works.
pub fn min_facet_cut(h: &FacetRidgeHypergraph, opts: &SearchOptions) -> Result<MinCut> {
    let n = h.num_facets();
    if n < 2 {
        return Err(Error::TooFewFacets(n));
    }
    let upper = isolation_bound(h).unwrap_or(n - 2).min(n - 2);
    let mut budget = opts.budget;
    for s in 0..=upper {
        let r = find_disconnecting(h, s, budget, opts.jobs)?;
        if let Some(witness) = r.witness {
            return Ok(MinCut::Cut { size: s, witness });
        }
        budget = budget.saturating_sub(r.examined);
    }
    Ok(MinCut::NoCut)
}
