//! Simple undirected graphs on dense vertex indices, vertex partitions, and
//! the canonical edge-list text format.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; that
/// order is the canonical edge order used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicate pairs.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edge_list {
            check_pair(n, u, v)?;
            set.insert(normalize(u, v));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    /// Empty graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical `(u, v)`, `u < v`, lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&normalize(u, v)).ok()
    }

    /// `Some(d)` when every vertex has degree `d`. The empty graph on zero
    /// vertices is not considered regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first()?.len();
        self.adj.iter().all(|a| a.len() == first).then_some(first)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; self.n]; self.n];
        for &(u, v) in &self.edges {
            m[u][v] = 1.0;
            m[v][u] = 1.0;
        }
        m
    }

    /// Dense Laplacian `D - A` with integer entries.
    pub fn laplacian_int(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.n]; self.n];
        for (v, row) in m.iter_mut().enumerate() {
            row[v] = self.adj[v].len() as i64;
        }
        for &(u, v) in &self.edges {
            m[u][v] = -1;
            m[v][u] = -1;
        }
        m
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` in ascending
    /// vertex order.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<Graph> {
        let members = self.vertex_set(set)?;
        let verts: Vec<usize> = members.iter().copied().collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| normalize(index[u], index[v]))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(Graph::from_sorted(verts.len(), edges))
    }

    /// Average degree of `G[S]`, i.e. `2|E(G[S])| / |S|`, exactly.
    pub fn average_degree(&self, set: &[usize]) -> Result<BigRational> {
        let members = self.vertex_set(set)?;
        let mut inside = vec![false; self.n];
        for &v in &members {
            inside[v] = true;
        }
        let internal = self
            .edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count();
        Ok(BigRational::new(
            BigInt::from(2 * internal),
            BigInt::from(members.len()),
        ))
    }

    /// Number of edges with one end in `a` and the other in `b`.
    pub fn edges_between(&self, a: &[usize], b: &[usize]) -> Result<usize> {
        let sa = self.vertex_set(a)?;
        let sb = self.vertex_set(b)?;
        if let Some(v) = sa.intersection(&sb).next() {
            return Err(Error::InvalidArgument(format!(
                "vertex {v} lies in both sets"
            )));
        }
        Ok(sa
            .iter()
            .map(|&u| self.adj[u].iter().filter(|w| sb.contains(w)).count())
            .sum())
    }

    fn vertex_set(&self, set: &[usize]) -> Result<BTreeSet<usize>> {
        if set.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut out = BTreeSet::new();
        for &v in set {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            out.insert(v);
        }
        Ok(out)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_sorted(self.n + other.n, edges)
    }

    /// Adds new edges. Loops and edges that are already present (or repeated
    /// within `pairs`) are errors.
    pub fn add_edges(&self, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut set: BTreeSet<(usize, usize)> = self.edges.iter().copied().collect();
        for &(u, v) in pairs {
            check_pair(self.n, u, v)?;
            let e = normalize(u, v);
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Graph::from_sorted(self.n, set.into_iter().collect()))
    }

    /// Removes existing edges; absent edges are an error.
    pub fn remove_edges(&self, pairs: &[(usize, usize)]) -> Result<Graph> {
        let mut set: BTreeSet<(usize, usize)> = self.edges.iter().copied().collect();
        for &(u, v) in pairs {
            check_pair(self.n, u, v)?;
            let e = normalize(u, v);
            if !set.remove(&e) {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{}, {}}} not present",
                    e.0, e.1
                )));
            }
        }
        Ok(Graph::from_sorted(self.n, set.into_iter().collect()))
    }

    /// Canonical edge-list text: `n m` on the first line, then one `u v` per
    /// edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::with_capacity(8 * (self.edges.len() + 1));
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("vertex out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    msg: format!("self-loop at vertex {u}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
        Graph::parse_edge_list(&std::fs::read_to_string(path)?)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_edge_list())?;
        Ok(())
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            msg: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not a nonnegative integer: {tok:?}"),
        })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted(n, edges)
}

/// `K_n` minus the matching `{0,1}, {2,3}, …, {2k-2, 2k-1}`.
pub fn complete_minus_matching(n: usize, k: usize) -> Result<Graph> {
    if 2 * k > n {
        return Err(Error::InvalidArgument(format!(
            "a matching of {k} edges needs at least {} vertices, got {n}",
            2 * k
        )));
    }
    let pairs: Vec<_> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    complete_graph(n).remove_edges(&pairs)
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a cycle needs n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

pub fn path_graph(n: usize) -> Graph {
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_sorted(n, edges)
}

pub fn petersen_graph() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("static edge list")
}

/// Ordered partition of `0..n` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = blocks;
        for (b, block) in blocks.iter_mut().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} out of range for n = {n}"
                    )));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in more than one block"
                    )));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(VertexPartition { blocks, block_of })
    }

    /// Groups vertices by label; blocks are ordered by first appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (v, &l) in labels.iter().enumerate() {
            let b = *remap.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            block_of.push(b);
        }
        VertexPartition { blocks, block_of }
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            blocks: (0..n).map(|v| vec![v]).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Reads the partition file format: one block per line, vertex indices
    /// separated by whitespace.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let block = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: i + 1,
                        msg: format!("not a vertex index: {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        VertexPartition::new(n, blocks)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            let row: Vec<String> = b.iter().map(ToString::to_string).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Edge counts between the blocks of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCounts {
    /// Symmetric `t x t` matrix of `e(X_i, X_j)`; the diagonal counts edges
    /// inside each block.
    pub between: Vec<Vec<usize>>,
    /// `r_i = e(X_i, V \ X_i)`.
    pub boundary: Vec<usize>,
    /// Sum over `i < j` of `e(X_i, X_j)`.
    pub total: usize,
}

pub fn crossing_edges(g: &Graph, p: &VertexPartition) -> CrossingCounts {
    assert_eq!(
        g.vertex_count(),
        p.vertex_count(),
        "partition and graph disagree on vertex count"
    );
    let t = p.len();
    let mut between = vec![vec![0usize; t]; t];
    let mut boundary = vec![0usize; t];
    let mut total = 0;
    for &(u, v) in g.edges() {
        let (a, b) = (p.block_of(u), p.block_of(v));
        if a == b {
            between[a][a] += 1;
        } else {
            between[a][b] += 1;
            between[b][a] += 1;
            boundary[a] += 1;
            boundary[b] += 1;
            total += 1;
        }
    }
    CrossingCounts {
        between,
        boundary,
        total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn make_graph_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, complete_graph(3));
        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        let g = Graph::new(4, &[(0, 1), (0, 1), (2, 3)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn complete_and_matching_removal() {
        let k5 = complete_graph(5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(k5.regular_degree(), Some(4));
        let g = complete_minus_matching(5, 1).unwrap();
        assert_eq!(g.degrees(), vec![3, 3, 4, 4, 4]);
        assert!(!g.has_edge(0, 1));
        let g = complete_minus_matching(7, 2).unwrap();
        assert_eq!(g.degrees(), vec![5, 5, 5, 5, 6, 6, 6]);
        assert!(complete_minus_matching(5, 3).is_err());
    }

    #[test]
    fn crossing_edges_single_vertex_block() {
        let k4 = complete_graph(4);
        let p = VertexPartition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        let c = crossing_edges(&k4, &p);
        assert_eq!(c.boundary, vec![3, 3]);
        assert_eq!(c.total, 3);
        assert_eq!(c.between[1][1], 3);
    }

    #[test]
    fn average_degree_examples() {
        let k5 = complete_graph(5);
        assert_eq!(k5.average_degree(&[0, 1, 2, 3, 4]).unwrap(), rat(4, 1));
        let g = complete_minus_matching(5, 1).unwrap();
        assert_eq!(g.average_degree(&[0, 1, 2, 3, 4]).unwrap(), rat(18, 5));
        assert_eq!(
            k5.average_degree(&[2]).unwrap(),
            BigRational::from_u8(0).unwrap()
        );
        assert!(matches!(k5.average_degree(&[]), Err(Error::EmptyVertexSet)));
    }

    #[test]
    fn union_and_add_edges() {
        let two = complete_graph(3).disjoint_union(&complete_graph(3));
        assert_eq!(two.vertex_count(), 6);
        assert_eq!(two.edge_count(), 6);
        assert!(!two.is_connected());
        let joined = two.add_edges(&[(0, 3)]).unwrap();
        assert!(joined.is_connected());
        assert_eq!(joined.edge_count(), 7);
        assert!(matches!(
            complete_graph(3).add_edges(&[(1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            complete_graph(3).add_edges(&[(2, 2)]),
            Err(Error::SelfLoop(2))
        ));
    }

    #[test]
    fn induced_subgraph_of_everything_is_identity() {
        let p = petersen_graph();
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(p.induced_subgraph(&all).unwrap(), p);
        let outer = p.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(outer, cycle_graph(5).unwrap());
    }

    #[test]
    fn edge_list_parse_errors_carry_line_numbers() {
        let err = Graph::parse_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = Graph::parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = Graph::parse_edge_list("3 1\n0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let g = Graph::parse_edge_list(&petersen_graph().to_edge_list()).unwrap();
        assert_eq!(g, petersen_graph());
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        let p = VertexPartition::parse(4, "0 2\n\n1 3\n").unwrap();
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(VertexPartition::parse(4, &p.to_text()).unwrap(), p);
    }

    #[test]
    fn edges_between_counts() {
        let k4 = complete_graph(4);
        assert_eq!(k4.edges_between(&[0, 1], &[2, 3]).unwrap(), 4);
        assert!(k4.edges_between(&[0, 1], &[1, 3]).is_err());
    }
}
