//! Edge-disjoint spanning tree packing: σ(G) with certificates, an
//! exhaustive partition oracle, and spanning-tree counts.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{det_exact, IntMatrix};
use crate::graph::{crossing_edges, Graph, VertexPartition};
use crate::spectra::laplacian_spectrum;

/// Largest vertex count accepted by [`sigma_bruteforce`].
pub const BRUTEFORCE_MAX_N: usize = 12;

type Edge = (usize, usize);
/// `(edge index, forest index)`.
type Step = (usize, usize);

/// Outcome of asking for `k` edge-disjoint spanning trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Packing {
    Trees(Vec<Vec<Edge>>),
    /// Partition with fewer than `k(t-1)` crossing edges.
    Witness(VertexPartition),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePackingResult {
    pub sigma: usize,
    pub trees: Vec<Vec<Edge>>,
    /// Shows that `sigma + 1` trees do not exist.
    pub witness: Option<VertexPartition>,
}

/// Forest assignment for the matroid-union augmentation. `forest_of[e]` is
/// the forest holding edge `e`, or `None` if unplaced.
struct Forests<'g> {
    g: &'g Graph,
    k: usize,
    forest_of: Vec<Option<usize>>,
}

/// Rooted view of one forest: for each vertex, its parent vertex, the edge
/// to it, its depth and its component id.
struct Rooted {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
    comp: Vec<usize>,
}

impl Rooted {
    fn connected(&self, u: usize, v: usize) -> bool {
        self.comp[u] == self.comp[v]
    }

    /// Edge indices on the tree path between `u` and `v` (same component).
    fn path(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while self.depth[u] > self.depth[v] {
            out.push(self.parent_edge[u]);
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            out.push(self.parent_edge[v]);
            v = self.parent[v];
        }
        while u != v {
            out.push(self.parent_edge[u]);
            out.push(self.parent_edge[v]);
            u = self.parent[u];
            v = self.parent[v];
        }
        out
    }
}

impl<'g> Forests<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        Forests {
            g,
            k,
            forest_of: vec![None; g.edge_count()],
        }
    }

    fn rooted(&self) -> Vec<Rooted> {
        let n = self.g.vertex_count();
        let edges = self.g.edges();
        let mut adj: Vec<Vec<Vec<(usize, usize)>>> = vec![vec![Vec::new(); n]; self.k];
        for (e, f) in self.forest_of.iter().enumerate() {
            if let Some(i) = *f {
                let (u, v) = edges[e];
                adj[i][u].push((v, e));
                adj[i][v].push((u, e));
            }
        }
        adj.into_iter()
            .map(|adj| {
                let mut r = Rooted {
                    parent: vec![usize::MAX; n],
                    parent_edge: vec![usize::MAX; n],
                    depth: vec![0; n],
                    comp: vec![usize::MAX; n],
                };
                let mut stack = Vec::new();
                for root in 0..n {
                    if r.comp[root] != usize::MAX {
                        continue;
                    }
                    r.comp[root] = root;
                    stack.push(root);
                    while let Some(x) = stack.pop() {
                        for &(y, e) in &adj[x] {
                            if r.comp[y] == usize::MAX {
                                r.comp[y] = root;
                                r.parent[y] = x;
                                r.parent_edge[y] = e;
                                r.depth[y] = r.depth[x] + 1;
                                stack.push(y);
                            }
                        }
                    }
                }
                r
            })
            .collect()
    }

    /// Breadth-first labeling from `sources`. Returns the edge that closes an
    /// augmenting path together with the forest it can enter, plus the labels.
    fn search(&self, sources: &[usize]) -> (Option<Step>, Vec<Option<Step>>, Vec<bool>) {
        let rooted = self.rooted();
        let edges = self.g.edges();
        let m = edges.len();
        let mut label: Vec<Option<Step>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for &s in sources {
            seen[s] = true;
            queue.push_back(s);
        }
        while let Some(f) = queue.pop_front() {
            let (u, v) = edges[f];
            for (i, r) in rooted.iter().enumerate() {
                if self.forest_of[f] == Some(i) {
                    continue;
                }
                if !r.connected(u, v) {
                    return (Some((f, i)), label, seen);
                }
                for e in r.path(u, v) {
                    if !seen[e] {
                        seen[e] = true;
                        label[e] = Some((f, i));
                        queue.push_back(e);
                    }
                }
            }
        }
        (None, label, seen)
    }

    /// Tries to place edge `e`, reshuffling along a shortest augmenting path.
    fn insert(&mut self, e: usize) -> bool {
        let (found, label, _) = self.search(&[e]);
        let Some((mut cur, free)) = found else {
            return false;
        };
        self.forest_of[cur] = Some(free);
        while let Some((par, i)) = label[cur] {
            self.forest_of[par] = Some(i);
            cur = par;
        }
        true
    }

    fn add_forest(&mut self) {
        self.k += 1;
    }

    /// Inserts every unplaced edge once, in canonical order. Rejected edges
    /// stay spanned as the forests grow, so one pass is enough.
    fn fill(&mut self) {
        for e in 0..self.forest_of.len() {
            if self.forest_of[e].is_none() {
                self.insert(e);
            }
        }
    }

    fn placed(&self) -> usize {
        self.forest_of.iter().flatten().count()
    }

    fn trees(&self) -> Vec<Vec<Edge>> {
        let edges = self.g.edges();
        let mut out = vec![Vec::new(); self.k];
        for (e, f) in self.forest_of.iter().enumerate() {
            if let Some(i) = *f {
                out[i].push(edges[e]);
            }
        }
        out
    }

    /// After a failed fill: the components of the edges reachable from the
    /// unplaced ones. Every other edge crosses between them.
    fn witness(&self) -> VertexPartition {
        let n = self.g.vertex_count();
        let unplaced: Vec<usize> = (0..self.forest_of.len())
            .filter(|&e| self.forest_of[e].is_none())
            .collect();
        let (found, _, seen) = self.search(&unplaced);
        debug_assert!(found.is_none(), "witness requested while augmentable");
        let mut dsu = Dsu::new(n);
        for (e, &(u, v)) in self.g.edges().iter().enumerate() {
            if seen[e] {
                dsu.union(u, v);
            }
        }
        let labels: Vec<usize> = (0..n).map(|v| dsu.find(v)).collect();
        VertexPartition::from_labels(&labels)
    }
}

#[derive(Clone)]
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

fn components_partition(g: &Graph) -> VertexPartition {
    let mut labels = vec![0; g.vertex_count()];
    for (c, comp) in g.components().iter().enumerate() {
        for &v in comp {
            labels[v] = c;
        }
    }
    VertexPartition::from_labels(&labels)
}

/// `k` edge-disjoint spanning trees of `g`, or a partition showing none exist.
pub fn pack_trees(g: &Graph, k: usize) -> Result<Packing> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(Packing::Trees(vec![Vec::new(); k]));
    }
    if !g.is_connected() {
        return Ok(Packing::Witness(components_partition(g)));
    }
    let mut f = Forests::new(g, k);
    f.fill();
    Ok(if f.placed() == k * (n - 1) {
        Packing::Trees(f.trees())
    } else {
        Packing::Witness(f.witness())
    })
}

/// σ(G) with a packing of σ trees and a witness against σ + 1.
pub fn sigma(g: &Graph) -> TreePackingResult {
    let n = g.vertex_count();
    if n <= 1 {
        return TreePackingResult {
            sigma: 0,
            trees: Vec::new(),
            witness: None,
        };
    }
    if !g.is_connected() {
        return TreePackingResult {
            sigma: 0,
            trees: Vec::new(),
            witness: Some(components_partition(g)),
        };
    }
    let bound = g.edge_count() / (n - 1);
    let mut f = Forests::new(g, 0);
    let mut trees = Vec::new();
    for k in 1..=bound {
        f.add_forest();
        f.fill();
        if f.placed() < k * (n - 1) {
            return TreePackingResult {
                sigma: k - 1,
                trees,
                witness: Some(f.witness()),
            };
        }
        trees = f.trees();
    }
    // Fewer than (bound + 1)(n - 1) edges: the singleton partition fails.
    TreePackingResult {
        sigma: bound,
        trees,
        witness: Some(VertexPartition::singletons(n)),
    }
}

/// Exhaustive partition oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceSigma {
    pub sigma: usize,
    /// Minimum over partitions with `t ≥ 2` of crossing edges over `t - 1`.
    pub tau1: Option<BigRational>,
    pub minimizer: Option<VertexPartition>,
}

/// σ(G) and τ₁(G) by enumerating every set partition of the vertices.
pub fn sigma_bruteforce(g: &Graph) -> Result<BruteForceSigma> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: BRUTEFORCE_MAX_N,
        });
    }
    if n <= 1 {
        return Ok(BruteForceSigma {
            sigma: 0,
            tau1: None,
            minimizer: None,
        });
    }
    // lower[v]: bitmask of neighbours below v.
    let lower: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| w < v)
                .fold(0u32, |acc, &w| acc | 1 << w)
        })
        .collect();
    let mut st = Enum {
        lower,
        labels: vec![0; n],
        masks: vec![0u32; n],
        best: None,
    };
    st.masks[0] = 1;
    st.rec(1, 1, 0);
    let (cross, t, labels) = st.best.expect("n >= 2 gives partitions with t >= 2");
    let tau1 = BigRational::new(BigInt::from(cross), BigInt::from(t - 1));
    Ok(BruteForceSigma {
        sigma: cross / (t - 1),
        tau1: Some(tau1),
        minimizer: Some(VertexPartition::from_labels(&labels)),
    })
}

struct Enum {
    lower: Vec<u32>,
    labels: Vec<usize>,
    masks: Vec<u32>,
    best: Option<(usize, usize, Vec<usize>)>,
}

impl Enum {
    fn rec(&mut self, v: usize, blocks: usize, cross: usize) {
        let n = self.labels.len();
        if v == n {
            if blocks >= 2 {
                let better = match &self.best {
                    None => true,
                    Some((c, t, _)) => cross * (t - 1) < c * (blocks - 1),
                };
                if better {
                    self.best = Some((cross, blocks, self.labels.clone()));
                }
            }
            return;
        }
        let low = self.lower[v];
        let deg = low.count_ones() as usize;
        for b in 0..=blocks {
            let inside = (low & self.masks[b]).count_ones() as usize;
            self.labels[v] = b;
            self.masks[b] |= 1 << v;
            self.rec(v + 1, blocks.max(b + 1), cross + deg - inside);
            self.masks[b] &= !(1 << v);
        }
    }
}

/// Spanning-tree count by two independent routes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanningTreeCount {
    /// Determinant of the reduced Laplacian.
    pub exact: BigInt,
    /// Product of the nonzero Laplacian eigenvalues over `n`.
    pub spectral: f64,
    /// `spectral` rounded to the nearest integer.
    pub spectral_rounded: BigInt,
    /// Whether `spectral` lies within `max(0.5, 1e-9 · exact)` of `exact`.
    pub agree: bool,
}

pub fn count_spanning_trees(g: &Graph) -> Result<SpanningTreeCount> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    let lap = IntMatrix::from_i64(&g.laplacian_int())?;
    let exact = det_exact(&lap.minor(0))?;
    let spectrum = laplacian_spectrum(g)?;
    let spectral = spectrum.values[1..].iter().product::<f64>() / n as f64;
    let spectral_rounded = BigInt::from_f64(spectral.round()).unwrap_or_default();
    let a = exact.to_f64().unwrap_or(f64::INFINITY);
    let agree = (spectral - a).abs() <= (1e-9 * a).max(0.5);
    Ok(SpanningTreeCount {
        exact,
        spectral,
        spectral_rounded,
        agree,
    })
}

pub const ENUMERATION_MAX_M: usize = 24;

/// Spanning trees counted by trying every `(n-1)`-subset of edges.
pub fn count_spanning_trees_bruteforce(g: &Graph) -> Result<u64> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if m > ENUMERATION_MAX_M {
        return Err(Error::TooManyEdges {
            m,
            limit: ENUMERATION_MAX_M,
        });
    }
    fn rec(edges: &[Edge], i: usize, need: usize, dsu: &Dsu) -> u64 {
        if need == 0 {
            return 1;
        }
        if edges.len() - i < need {
            return 0;
        }
        let (u, v) = edges[i];
        let mut with = dsu.clone();
        let taken = if with.union(u, v) {
            rec(edges, i + 1, need - 1, &with)
        } else {
            0
        };
        taken + rec(edges, i + 1, need, dsu)
    }
    Ok(rec(g.edges(), 0, n - 1, &Dsu::new(n)))
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum CertificateDefect {
    WrongTreeCount {
        expected: usize,
        found: usize,
    },
    EdgeNotInGraph {
        tree: usize,
        edge: Edge,
    },
    WrongTreeSize {
        tree: usize,
        expected: usize,
        found: usize,
    },
    NotSpanning {
        tree: usize,
    },
    SharedEdge {
        edge: Edge,
    },
    MissingWitness,
    InvalidWitness {
        reason: String,
    },
    WitnessNotViolating {
        crossing: usize,
        threshold: usize,
    },
}

impl fmt::Display for CertificateDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongTreeCount { expected, found } => {
                write!(f, "expected {expected} trees, found {found}")
            }
            Self::EdgeNotInGraph { tree, edge } => {
                write!(f, "tree {tree} uses non-edge {}-{}", edge.0, edge.1)
            }
            Self::WrongTreeSize {
                tree,
                expected,
                found,
            } => write!(f, "tree {tree} has {found} edges, expected {expected}"),
            Self::NotSpanning { tree } => write!(f, "tree {tree} is not a spanning tree"),
            Self::SharedEdge { edge } => {
                write!(f, "edge {}-{} is used by two trees", edge.0, edge.1)
            }
            Self::MissingWitness => write!(f, "witness partition missing"),
            Self::InvalidWitness { reason } => write!(f, "invalid witness: {reason}"),
            Self::WitnessNotViolating {
                crossing,
                threshold,
            } => write!(
                f,
                "witness has {crossing} crossing edges, needs at most {threshold}"
            ),
        }
    }
}

/// Re-checks every claim of a [`TreePackingResult`] against `g`.
pub fn verify_certificate(
    g: &Graph,
    result: &TreePackingResult,
) -> std::result::Result<(), CertificateDefect> {
    let n = g.vertex_count();
    let k = result.sigma;
    if result.trees.len() != k {
        return Err(CertificateDefect::WrongTreeCount {
            expected: k,
            found: result.trees.len(),
        });
    }
    let mut used = vec![false; g.edge_count()];
    for (t, tree) in result.trees.iter().enumerate() {
        let expected = n.saturating_sub(1);
        if tree.len() != expected {
            return Err(CertificateDefect::WrongTreeSize {
                tree: t,
                expected,
                found: tree.len(),
            });
        }
        let mut dsu = Dsu::new(n);
        for &(u, v) in tree {
            let Some(e) = (u < n && v < n).then(|| g.edge_index(u, v)).flatten() else {
                return Err(CertificateDefect::EdgeNotInGraph {
                    tree: t,
                    edge: (u, v),
                });
            };
            if std::mem::replace(&mut used[e], true) {
                return Err(CertificateDefect::SharedEdge { edge: g.edges()[e] });
            }
            if !dsu.union(u, v) {
                return Err(CertificateDefect::NotSpanning { tree: t });
            }
        }
    }
    let needs_witness = n >= 2 && (k + 1) * (n - 1) <= g.edge_count();
    match &result.witness {
        None if needs_witness => Err(CertificateDefect::MissingWitness),
        None => Ok(()),
        Some(p) => {
            if p.vertex_count() != n {
                return Err(CertificateDefect::InvalidWitness {
                    reason: format!("covers {} vertices, graph has {n}", p.vertex_count()),
                });
            }
            if p.len() < 2 {
                return Err(CertificateDefect::InvalidWitness {
                    reason: "fewer than two blocks".into(),
                });
            }
            let crossing = crossing_edges(g, p).total;
            let threshold = (k + 1) * (p.len() - 1) - 1;
            if crossing > threshold {
                return Err(CertificateDefect::WitnessNotViolating {
                    crossing,
                    threshold,
                });
            }
            Ok(())
        }
    }
}

/// JSON form of a [`TreePackingResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub sigma: usize,
    pub trees: Vec<Vec<[usize; 2]>>,
    pub witness: Option<Vec<Vec<usize>>>,
}

impl Certificate {
    pub fn from_result(n: usize, r: &TreePackingResult) -> Self {
        Certificate {
            n,
            sigma: r.sigma,
            trees: r
                .trees
                .iter()
                .map(|t| t.iter().map(|&(u, v)| [u, v]).collect())
                .collect(),
            witness: r.witness.as_ref().map(|p| p.blocks().to_vec()),
        }
    }

    pub fn to_result(&self) -> Result<TreePackingResult> {
        Ok(TreePackingResult {
            sigma: self.sigma,
            trees: self
                .trees
                .iter()
                .map(|t| t.iter().map(|&[u, v]| (u, v)).collect())
                .collect(),
            witness: self
                .witness
                .as_ref()
                .map(|b| VertexPartition::new(self.n, b.clone()))
                .transpose()?,
        })
    }
}
