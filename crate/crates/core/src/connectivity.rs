//! Global edge connectivity κ′(G).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted by [`edge_connectivity_bruteforce`].
pub const BRUTEFORCE_MAX_N: usize = 16;

/// A minimum edge cut: `side` is one shore, `value` the number of edges
/// leaving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub value: usize,
    pub side: Vec<usize>,
}

/// Number of edges with exactly one end in `side`.
pub fn cut_size(g: &Graph, side: &[usize]) -> usize {
    let mut inside = vec![false; g.vertex_count()];
    for &v in side {
        inside[v] = true;
    }
    g.edges()
        .iter()
        .filter(|&&(u, v)| inside[u] != inside[v])
        .count()
}

/// Stoer–Wagner minimum cut with unit weights. Ties in the maximum-adjacency
/// order go to the smallest index.
pub fn edge_connectivity(g: &Graph) -> Result<CutResult> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "edge connectivity needs at least 2 vertices, got {n}"
        )));
    }
    if !g.is_connected() {
        return Ok(CutResult {
            value: 0,
            side: g.components().swap_remove(0),
        });
    }
    let mut w = vec![vec![0usize; n]; n];
    for &(u, v) in g.edges() {
        w[u][v] = 1;
        w[v][u] = 1;
    }
    // members[v]: original vertices merged into super-vertex v.
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<CutResult> = None;

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0usize; n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = if step == 0 {
                active[0]
            } else {
                *active
                    .iter()
                    .filter(|&&v| !added[v])
                    .max_by(|&&a, &&b| key[a].cmp(&key[b]).then(b.cmp(&a)))
                    .expect("unadded vertex remains")
            };
            added[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    key[v] += w[next][v];
                }
            }
        }
        let cut_of_phase = key[last];
        if best.as_ref().is_none_or(|b| cut_of_phase < b.value) {
            let mut side = members[last].clone();
            side.sort_unstable();
            best = Some(CutResult {
                value: cut_of_phase,
                side,
            });
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut members[last]);
        members[prev].extend(moved);
        for &v in &active {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        active.retain(|&v| v != last);
    }
    Ok(best.expect("at least one phase ran"))
}

/// Exhaustive oracle: minimum over all proper nonempty vertex subsets.
pub fn edge_connectivity_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: BRUTEFORCE_MAX_N,
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "edge connectivity needs at least 2 vertices, got {n}"
        )));
    }
    // Vertex n-1 always stays outside S.
    let best = (1u32..(1 << (n - 1)))
        .map(|s| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| ((s >> u) & 1) != ((s >> v) & 1))
                .count()
        })
        .min()
        .expect("n >= 2");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, petersen_graph};
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(edge_connectivity(&complete_graph(5)).unwrap().value, 4);
        assert_eq!(
            edge_connectivity(&cycle_graph(6).unwrap()).unwrap().value,
            2
        );
        assert_eq!(edge_connectivity(&petersen_graph()).unwrap().value, 3);
        assert_eq!(edge_connectivity_bruteforce(&complete_graph(4)).unwrap(), 3);
        assert_eq!(edge_connectivity_bruteforce(&path_graph(4)).unwrap(), 1);
        assert!(edge_connectivity(&Graph::empty(1)).is_err());
        assert!(edge_connectivity_bruteforce(&complete_graph(17)).is_err());
    }

    #[test]
    fn disconnected_reports_component() {
        let g = complete_graph(3).disjoint_union(&complete_graph(2));
        let c = edge_connectivity(&g).unwrap();
        assert_eq!(
            c,
            CutResult {
                value: 0,
                side: vec![0, 1, 2]
            }
        );
    }

    #[test]
    fn bridge_between_cliques() {
        let g = complete_graph(4)
            .disjoint_union(&complete_graph(4))
            .add_edges(&[(3, 4)])
            .unwrap();
        let c = edge_connectivity(&g).unwrap();
        assert_eq!(c.value, 1);
        assert_eq!(cut_size(&g, &c.side), 1);
        assert_eq!(c.side.len(), 4);
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (2usize..=9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            prop::collection::vec(prop::bool::weighted(0.6), pairs.len()).prop_map(move |keep| {
                let chosen: Vec<_> = pairs
                    .iter()
                    .zip(keep)
                    .filter_map(|(&p, k)| k.then_some(p))
                    .collect();
                Graph::new(n, &chosen).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn stoer_wagner_matches_oracle(g in small_graph()) {
            let c = edge_connectivity(&g).unwrap();
            prop_assert_eq!(c.value, edge_connectivity_bruteforce(&g).unwrap());
            prop_assert!(!c.side.is_empty() && c.side.len() < g.vertex_count());
            prop_assert_eq!(cut_size(&g, &c.side), c.value);
            prop_assert!(c.value <= g.min_degree());
        }
    }
}
