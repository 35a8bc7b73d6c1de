//! Seeded random d-regular graphs and empirical checks of the spectral
//! tree-packing implications.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::edge_connectivity;
use crate::error::{Error, Result};
use crate::exact::count_roots_at_least;
use crate::graph::Graph;
use crate::spectra::{adjacency_char_poly, lambda2};
use crate::treepack::{sigma, verify_certificate};

pub const DEFAULT_MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub max_retries: usize,
}

impl GenConfig {
    pub fn new(d: usize, n: usize, seed: u64) -> Self {
        GenConfig {
            d,
            n,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }

    fn validate(&self) -> Result<()> {
        if (self.n * self.d) % 2 == 1 {
            return Err(Error::InvalidArgument(format!(
                "n·d = {}·{} is odd",
                self.n, self.d
            )));
        }
        if self.d >= self.n {
            return Err(Error::InvalidArgument(format!(
                "degree {} needs more than {} vertices",
                self.d, self.n
            )));
        }
        Ok(())
    }
}

/// One step of the splitmix64 sequence.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seeds derived from a master seed.
pub fn trial_seeds(master: u64, trials: usize) -> Vec<u64> {
    let mut s = master;
    (0..trials).map(|_| splitmix64(&mut s)).collect()
}

/// Random d-regular simple graph from the pairing model.
///
/// Stubs are paired one at a time; a pair that would create a loop or a
/// repeated edge is redrawn, and a dead end restarts the whole pairing.
/// `max_retries` bounds the restarts.
pub fn random_regular(cfg: &GenConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..=cfg.max_retries {
        if let Some(edges) = try_pairing(cfg.n, cfg.d, &mut rng) {
            let g = Graph::new(cfg.n, &edges)?;
            debug_assert_eq!(g.regular_degree(), Some(cfg.d));
            return Ok(g);
        }
    }
    Err(Error::RetriesExhausted(cfg.max_retries))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adjacent = vec![false; n * n];
    let mut edges = Vec::with_capacity(n * d / 2);
    while !stubs.is_empty() {
        let mut misses = 0;
        loop {
            let i = rng.random_range(0..stubs.len());
            let j = rng.random_range(0..stubs.len());
            let (u, v) = (stubs[i], stubs[j]);
            if i != j && u != v && !adjacent[u * n + v] {
                adjacent[u * n + v] = true;
                adjacent[v * n + u] = true;
                edges.push((u.min(v), u.max(v)));
                let (hi, lo) = (i.max(j), i.min(j));
                stubs.swap_remove(hi);
                stubs.swap_remove(lo);
                break;
            }
            misses += 1;
            if misses > 64 && !has_valid_pair(&stubs, &adjacent, n) {
                return None;
            }
        }
    }
    Some(edges)
}

fn has_valid_pair(stubs: &[usize], adjacent: &[bool], n: usize) -> bool {
    stubs.iter().enumerate().any(|(i, &u)| {
        stubs[i + 1..]
            .iter()
            .any(|&v| u != v && !adjacent[u * n + v])
    })
}

/// `d - (2k - 1)/(d + 1)`.
pub fn spectral_threshold(d: usize, k: usize) -> BigRational {
    let d = BigRational::from_integer(d.into());
    let num = BigRational::from_integer((2 * k - 1).into());
    &d - num / (&d + BigRational::from_integer(1.into()))
}

/// Whether `λ₂(g) < threshold`; near-ties are settled on the exact
/// characteristic polynomial.
pub fn lambda2_below(g: &Graph, l2: f64, threshold: &BigRational) -> bool {
    use num_traits::ToPrimitive;
    let t = threshold.to_f64().unwrap_or(f64::NAN);
    if (l2 - t).abs() >= 1e-9 {
        return l2 < t;
    }
    count_roots_at_least(&adjacency_char_poly(g), threshold) < 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// k ∈ {2, 3}: a proved implication.
    Theorem,
    /// k ≥ 4: the open case.
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    /// A proved implication failed: something here is broken.
    Bug,
    /// The open implication failed on a concrete graph.
    Finding,
}

impl CheckStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            CheckStatus::Pass => 0,
            CheckStatus::Bug => 2,
            CheckStatus::Finding => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub seed: u64,
    pub d: usize,
    pub n: usize,
    pub lambda2: f64,
    pub sigma: usize,
    pub edge_list: String,
}

/// Per-trial record kept for the aggregate counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub lambda2: f64,
    pub sigma: usize,
    pub kappa_prime: usize,
    pub premise: bool,
    pub conclusion: bool,
    pub certificate_ok: bool,
    /// Edge-connectivity implied by `λ₂ < d - 2(r-1)/(d+1)`, largest such r.
    pub implied_connectivity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheckReport {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub kind: CheckKind,
    pub threshold: f64,
    pub premise_true: usize,
    pub conclusion_true: usize,
    pub premise_and_conclusion: usize,
    pub certificate_failures: usize,
    /// Graphs with `κ′` below the value implied by the spectral bound.
    pub connectivity_violations: usize,
    /// Graphs with `σ < ⌊κ′/2⌋`.
    pub kundu_violations: usize,
    pub counterexamples: Vec<Counterexample>,
    pub status: CheckStatus,
}

fn implied_connectivity(d: usize, l2: f64) -> usize {
    // λ₂ < d - 2(r - 1)/(d + 1)  ⇔  r - 1 < (d - λ₂)(d + 1)/2
    let slack = (d as f64 - l2) * (d as f64 + 1.0) / 2.0 - 1e-9;
    if slack <= 0.0 {
        return 0;
    }
    let r = slack.ceil() as usize; // largest integer r with r - 1 < slack
    r.min(d)
}

fn run_trial(
    d: usize,
    n: usize,
    k: usize,
    seed: u64,
    threshold: &BigRational,
) -> Result<(TrialOutcome, Graph)> {
    let g = random_regular(&GenConfig::new(d, n, seed))?;
    let l2 = lambda2(&g)?;
    let premise = lambda2_below(&g, l2, threshold);
    let packing = sigma(&g);
    let certificate_ok = verify_certificate(&g, &packing).is_ok();
    let kappa = edge_connectivity(&g)?.value;
    Ok((
        TrialOutcome {
            seed,
            lambda2: l2,
            sigma: packing.sigma,
            kappa_prime: kappa,
            premise,
            conclusion: packing.sigma >= k,
            certificate_ok,
            implied_connectivity: implied_connectivity(d, l2),
        },
        g,
    ))
}

/// Whether a proved implication covers `(d, k)`: k = 2 needs d ≥ 4 and
/// k = 3 needs d ≥ 6. Everything else is conjecture territory.
pub fn theorem_applies(d: usize, k: usize) -> bool {
    matches!((k, d), (2, 4..) | (3, 6..))
}

/// Samples `trials` random d-regular graphs on `n` vertices and tests
/// `λ₂ < d - (2k-1)/(d+1)  ⇒  σ ≥ k` on each.
pub fn theorem_check(
    d: usize,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<TheoremCheckReport> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "k must be at least 2, got {k}"
        )));
    }
    GenConfig::new(d, n, seed).validate()?;
    let threshold = spectral_threshold(d, k);
    let seeds = trial_seeds(seed, trials);
    let outcomes: Vec<(TrialOutcome, Graph)> = seeds
        .par_iter()
        .map(|&s| run_trial(d, n, k, s, &threshold))
        .collect::<Result<_>>()?;

    let kind = if theorem_applies(d, k) {
        CheckKind::Theorem
    } else {
        CheckKind::Conjecture
    };
    let counterexamples: Vec<Counterexample> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, (o, _))| o.premise && !o.conclusion)
        .map(|(trial, (o, g))| Counterexample {
            trial,
            seed: o.seed,
            d,
            n,
            lambda2: o.lambda2,
            sigma: o.sigma,
            edge_list: g.to_edge_list(),
        })
        .collect();
    let count = |f: &dyn Fn(&TrialOutcome) -> bool| outcomes.iter().filter(|(o, _)| f(o)).count();
    let certificate_failures = count(&|o| !o.certificate_ok);
    let connectivity_violations = count(&|o| o.kappa_prime < o.implied_connectivity);
    let kundu_violations = count(&|o| o.sigma < o.kappa_prime / 2);
    let status = if !counterexamples.is_empty() {
        match kind {
            CheckKind::Theorem => CheckStatus::Bug,
            CheckKind::Conjecture => CheckStatus::Finding,
        }
    } else if certificate_failures + connectivity_violations + kundu_violations > 0 {
        CheckStatus::Bug
    } else {
        CheckStatus::Pass
    };
    use num_traits::ToPrimitive;
    Ok(TheoremCheckReport {
        d,
        n,
        k,
        trials,
        seed,
        kind,
        threshold: threshold.to_f64().unwrap_or(f64::NAN),
        premise_true: count(&|o| o.premise),
        conclusion_true: count(&|o| o.conclusion),
        premise_and_conclusion: count(&|o| o.premise && o.conclusion),
        certificate_failures,
        connectivity_violations,
        kundu_violations,
        counterexamples,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn only_cubic_graph_on_four_vertices() {
        for seed in 0..5 {
            let g = random_regular(&GenConfig::new(3, 4, seed)).unwrap();
            assert_eq!(g, complete_graph(4));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_regular(&GenConfig::new(3, 5, 0)).is_err());
        assert!(random_regular(&GenConfig::new(4, 4, 0)).is_err());
    }

    #[test]
    fn regular_and_reproducible() {
        let cfg = GenConfig::new(4, 20, 1);
        let a = random_regular(&cfg).unwrap();
        assert_eq!(a.regular_degree(), Some(4));
        assert_eq!(a, random_regular(&cfg).unwrap());
        let b = random_regular(&GenConfig::new(10, 44, 7)).unwrap();
        assert_eq!(b.regular_degree(), Some(10));
        assert_eq!(b.edge_count(), 220);
    }

    #[test]
    fn implied_connectivity_matches_threshold() {
        // d = 6: λ₂ = 5.5 gives slack 1.75, so r = 2 holds and r = 3 does not.
        assert_eq!(implied_connectivity(6, 5.5), 2);
        assert_eq!(implied_connectivity(6, 6.0), 0);
    }

    #[test]
    fn small_sweep_passes() {
        let r = theorem_check(6, 14, 2, 8, 42).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.kind, CheckKind::Theorem);
        assert_eq!(r, theorem_check(6, 14, 2, 8, 42).unwrap());
    }
}
