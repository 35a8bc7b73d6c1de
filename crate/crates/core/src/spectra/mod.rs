//! Adjacency and Laplacian spectra, quotient matrices of vertex partitions,
//! equitability, and interlacing checks.

mod jacobi;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, RatMatrix};
use crate::graph::{crossing_edges, Graph, VertexPartition};

pub use jacobi::{eig_symmetric, EigenDecomposition};

/// Default tolerance for grouping eigenvalues into multiplicities.
pub const GROUPING_TOL: f64 = 1e-7;

/// Tolerance for interlacing chains.
pub const INTERLACING_TOL: f64 = 1e-9;

/// Real eigenvalues sorted descending: `values[0] = λ_1 ≥ … ≥ λ_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub grouping_tol: f64,
}

/// One distinct eigenvalue and how many times it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum {
            values,
            grouping_tol: GROUPING_TOL,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_i`, 1-based.
    pub fn lambda(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    /// Clusters consecutive eigenvalues closer than `grouping_tol`; each
    /// group reports its mean.
    pub fn groups(&self) -> Vec<EigenGroup> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.values {
            match out.last_mut() {
                Some((sum, count, last)) if (*last - v).abs() <= self.grouping_tol => {
                    *sum += v;
                    *count += 1;
                    *last = v;
                }
                _ => out.push((v, 1, v)),
            }
        }
        out.into_iter()
            .map(|(sum, count, _)| EigenGroup {
                value: sum / count as f64,
                multiplicity: count,
            })
            .collect()
    }

    /// Largest elementwise deviation from another spectrum of equal length.
    pub fn max_deviation(&self, other: &Spectrum) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }
}

/// Laplacian eigenvalues sorted ascending: `values[0] = μ_1 = 0 ≤ … ≤ μ_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplacianSpectrum {
    pub values: Vec<f64>,
}

impl LaplacianSpectrum {
    /// `μ_i`, 1-based.
    pub fn mu(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    Ok(Spectrum::new(
        eig_symmetric(&g.adjacency_matrix(), false)?.values,
    ))
}

/// Second largest adjacency eigenvalue.
pub fn lambda2(g: &Graph) -> Result<f64> {
    match g.vertex_count() {
        0 => Err(Error::InvalidArgument("graph has no vertices".into())),
        1 => Err(Error::InvalidArgument(
            "λ2 is undefined for a single vertex".into(),
        )),
        _ => Ok(adjacency_spectrum(g)?.values[1]),
    }
}

pub fn laplacian_spectrum(g: &Graph) -> Result<LaplacianSpectrum> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidArgument("graph has no vertices".into()));
    }
    let l: Vec<Vec<f64>> = g
        .laplacian_int()
        .into_iter()
        .map(|r| r.into_iter().map(|v| v as f64).collect())
        .collect();
    let mut values = eig_symmetric(&l, false)?.values;
    values.reverse();
    Ok(LaplacianSpectrum { values })
}

/// Exact adjacency characteristic polynomial (small graphs).
pub fn adjacency_char_poly(g: &Graph) -> exact::IntPoly {
    let n = g.vertex_count();
    let mut m = exact::IntMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        m[(u, v)] = BigInt::from(1);
        m[(v, u)] = BigInt::from(1);
    }
    exact::char_poly_exact(&m).expect("square by construction")
}

/// How quotient-matrix eigenvalues are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientRoute {
    /// Characteristic polynomial over the rationals plus Sturm isolation.
    Exact,
    /// Jacobi on the similar symmetric matrix `N^{-1/2} E N^{-1/2}`.
    Symmetric,
}

/// Largest block count for which [`QuotientMatrix::eigenvalues`] takes the
/// exact route by default.
pub const EXACT_QUOTIENT_MAX: usize = 25;

/// Quotient matrix `B` of a partition: `b_ij` is the average number of
/// neighbours in block `j` of a vertex in block `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    pub partition: VertexPartition,
    /// `e(X_i, X_j)` off the diagonal and `2|E(X_i)|` on it.
    pub counts: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
}

impl QuotientMatrix {
    pub fn size(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn exact(&self) -> RatMatrix {
        let t = self.size();
        let mut m = RatMatrix::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                m[(i, j)] = BigRational::new(
                    BigInt::from(self.counts[i][j]),
                    BigInt::from(self.block_sizes[i]),
                );
            }
        }
        m
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.exact()
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// The entries as integers, when they all are.
    pub fn to_integer(&self) -> Option<exact::IntMatrix> {
        let m = self.exact();
        m.to_rows()
            .iter()
            .flatten()
            .all(|v| v.is_integer())
            .then(|| m.map(|v| v.to_integer()))
    }

    /// Symmetric matrix similar to `B`: entries `e_ij / sqrt(n_i n_j)`.
    pub fn symmetrized(&self) -> Vec<Vec<f64>> {
        let t = self.size();
        (0..t)
            .map(|i| {
                (0..t)
                    .map(|j| {
                        self.counts[i][j] as f64
                            / ((self.block_sizes[i] * self.block_sizes[j]) as f64).sqrt()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn char_poly(&self) -> exact::IntPoly {
        exact::char_poly_rational(&self.exact()).expect("square by construction")
    }

    pub fn eigenvalues_via(&self, route: QuotientRoute) -> Result<Spectrum> {
        match route {
            QuotientRoute::Symmetric => Ok(Spectrum::new(
                eig_symmetric(&self.symmetrized(), false)?.values,
            )),
            QuotientRoute::Exact => {
                let prec = exact::rat(1, 1_000_000_000_000_000_000);
                let values = exact::isolate_real_roots(&self.char_poly(), &prec)
                    .iter()
                    .flat_map(|r| std::iter::repeat_n(r.interval.midpoint_f64(), r.multiplicity))
                    .collect();
                Ok(Spectrum::new(values))
            }
        }
    }

    /// Exact route up to [`EXACT_QUOTIENT_MAX`] blocks, symmetric beyond.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        if self.size() <= EXACT_QUOTIENT_MAX {
            self.eigenvalues_via(QuotientRoute::Exact)
        } else {
            self.eigenvalues_via(QuotientRoute::Symmetric)
        }
    }
}

pub fn quotient_matrix(g: &Graph, p: &VertexPartition) -> QuotientMatrix {
    let c = crossing_edges(g, p);
    let mut counts = c.between;
    for (i, row) in counts.iter_mut().enumerate() {
        row[i] *= 2;
    }
    QuotientMatrix {
        partition: p.clone(),
        counts,
        block_sizes: p.blocks().iter().map(Vec::len).collect(),
    }
}

/// True iff every vertex in block `i` has the same number of neighbours in
/// each block `j`.
pub fn is_equitable(g: &Graph, p: &VertexPartition) -> bool {
    let t = p.len();
    let profile = |v: usize| {
        let mut row = vec![0usize; t];
        for &w in g.neighbors(v) {
            row[p.block_of(w)] += 1;
        }
        row
    };
    p.blocks().iter().all(|block| {
        let first = profile(block[0]);
        block[1..].iter().all(|&v| profile(v) == first)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterlacingVerdict {
    pub holds: bool,
    /// Smallest slack over both chains; negative when a chain is violated.
    pub worst_margin: f64,
}

/// Checks `λ_i(outer) ≥ λ_i(inner) ≥ λ_{n-m+i}(outer)` for `i = 1..m`.
pub fn check_interlacing(outer: &Spectrum, inner: &Spectrum) -> Result<InterlacingVerdict> {
    let (n, m) = (outer.len(), inner.len());
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "inner spectrum has {m} values, outer only {n}"
        )));
    }
    let mut worst = f64::INFINITY;
    for i in 0..m {
        worst = worst
            .min(outer.values[i] - inner.values[i])
            .min(inner.values[i] - outer.values[n - m + i]);
    }
    Ok(InterlacingVerdict {
        holds: worst >= -INTERLACING_TOL,
        worst_margin: worst,
    })
}

/// `min(d̄(A), d̄(B))` for disjoint vertex sets with no edges between them;
/// a lower bound on `λ_2(G)`.
pub fn disjoint_sets_bound(g: &Graph, a: &[usize], b: &[usize]) -> Result<BigRational> {
    let crossing = g.edges_between(a, b)?;
    if crossing > 0 {
        return Err(Error::CrossingEdges(crossing));
    }
    let da = g.average_degree(a)?;
    let db = g.average_degree(b)?;
    Ok(if da < db { da } else { db })
}

/// Eigenvalues of `values` that have no partner in `spectrum` within `tol`,
/// matching multiplicities greedily.
pub fn unmatched_eigenvalues(values: &Spectrum, spectrum: &Spectrum, tol: f64) -> Vec<f64> {
    let mut used = vec![false; spectrum.len()];
    let mut missing = Vec::new();
    for &v in &values.values {
        let hit = spectrum
            .values
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, &s)| (k, (s - v).abs()))
            .filter(|&(_, d)| d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match hit {
            Some((k, _)) => used[k] = true,
            None => missing.push(v),
        }
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graph::{complete_graph, cycle_graph, petersen_graph};

    #[test]
    fn complete_graph_spectrum() {
        let s = adjacency_spectrum(&complete_graph(5)).unwrap();
        let want = [4.0, -1.0, -1.0, -1.0, -1.0];
        assert!(s
            .values
            .iter()
            .zip(want)
            .all(|(a, b)| (a - b).abs() < 1e-12));
        assert_eq!(
            s.groups()
                .iter()
                .map(|g| g.multiplicity)
                .collect::<Vec<_>>(),
            vec![1, 4]
        );
    }

    #[test]
    fn lambda2_cases() {
        assert!((lambda2(&cycle_graph(6).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        assert!(lambda2(&Graph::empty(0)).is_err());
        assert!(lambda2(&Graph::empty(1)).is_err());
        assert!((lambda2(&Graph::empty(3)).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn regular_duality() {
        let g = petersen_graph();
        let a = adjacency_spectrum(&g).unwrap();
        let l = laplacian_spectrum(&g).unwrap();
        let n = g.vertex_count();
        for i in 1..=n {
            assert!((l.mu(i).unwrap() - (3.0 - a.lambda(i).unwrap())).abs() < 1e-10);
        }
        assert!(l.mu(1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn single_block_quotient() {
        let g = petersen_graph();
        let q = quotient_matrix(
            &g,
            &VertexPartition::new(10, vec![(0..10).collect()]).unwrap(),
        );
        assert_eq!(q.exact()[(0, 0)], rat(3, 1));
        let g = cycle_graph(5).unwrap().add_edges(&[(0, 2)]).unwrap();
        let q = quotient_matrix(
            &g,
            &VertexPartition::new(5, vec![(0..5).collect()]).unwrap(),
        );
        assert_eq!(q.exact()[(0, 0)], rat(12, 5));
    }

    #[test]
    fn any_one_vertex_split_of_k4_is_equitable() {
        let k4 = complete_graph(4);
        for v in 0..4 {
            let rest: Vec<usize> = (0..4).filter(|&w| w != v).collect();
            let p = VertexPartition::new(4, vec![vec![v], rest]).unwrap();
            assert!(is_equitable(&k4, &p));
        }
        let p = VertexPartition::new(5, vec![vec![0, 1], vec![2, 3, 4]]).unwrap();
        assert!(!is_equitable(&cycle_graph(5).unwrap(), &p));
    }

    #[test]
    fn interlacing_examples() {
        let k5 = adjacency_spectrum(&complete_graph(5)).unwrap();
        let k4 = adjacency_spectrum(&complete_graph(4)).unwrap();
        assert!(check_interlacing(&k5, &k4).unwrap().holds);
        let v =
            check_interlacing(&Spectrum::new(vec![1.0, 0.0]), &Spectrum::new(vec![2.0])).unwrap();
        assert!(!v.holds);
        assert!((v.worst_margin + 1.0).abs() < 1e-15);
        assert!(check_interlacing(&k4, &k5).is_err());
    }

    #[test]
    fn disjoint_cliques_bound() {
        let g = complete_graph(4).disjoint_union(&complete_graph(4));
        let b = disjoint_sets_bound(&g, &[0, 1, 2, 3], &[4, 5, 6, 7]).unwrap();
        assert_eq!(b, rat(3, 1));
        assert!((lambda2(&g).unwrap() - 3.0).abs() < 1e-12);
        let joined = g.add_edges(&[(0, 4)]).unwrap();
        assert!(matches!(
            disjoint_sets_bound(&joined, &[0, 1, 2, 3], &[4, 5, 6, 7]),
            Err(Error::CrossingEdges(1))
        ));
    }

    #[test]
    fn quotient_routes_agree() {
        let g = petersen_graph();
        let p =
            VertexPartition::new(10, vec![vec![0, 1, 2], vec![3, 4, 5, 6], vec![7, 8, 9]]).unwrap();
        let q = quotient_matrix(&g, &p);
        let a = q.eigenvalues_via(QuotientRoute::Exact).unwrap();
        let b = q.eigenvalues_via(QuotientRoute::Symmetric).unwrap();
        assert!(a.max_deviation(&b).unwrap() < 1e-10);
        let full = adjacency_spectrum(&g).unwrap();
        assert!(check_interlacing(&full, &a).unwrap().holds);
    }
}
