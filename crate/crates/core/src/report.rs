//! JSON reports shared by the command-line tool and the C interface.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::connectivity::edge_connectivity;
use crate::error::Result;
use crate::exact::rat_to_string;
use crate::graph::{Graph, VertexPartition};
use crate::randgen::{lambda2_below, spectral_threshold, theorem_applies};
use crate::spectra::{
    adjacency_spectrum, check_interlacing, is_equitable, quotient_matrix, unmatched_eigenvalues,
    EigenGroup, InterlacingVerdict,
};
use crate::treepack::{count_spanning_trees, sigma, verify_certificate, Certificate};

/// Rounds to 15 significant digits.
pub fn sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn sig15_all(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(sig15).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSummary {
    pub value: usize,
    pub certificate_valid: bool,
    /// SHA-256 of the compact JSON certificate.
    pub certificate_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeCountSummary {
    pub determinant: String,
    pub eigenvalue_product: f64,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub k: usize,
    pub threshold: String,
    pub premise: bool,
    pub conclusion: bool,
}

impl TheoremVerdict {
    pub fn consistent(&self) -> bool {
        !self.premise || self.conclusion
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub n: usize,
    pub m: usize,
    /// The common degree, or `"irregular"`.
    pub degree: String,
    pub connected: bool,
    pub lambda2: Option<f64>,
    pub spectrum: Vec<EigenGroup>,
    pub sigma: SigmaSummary,
    pub kappa_prime: Option<usize>,
    pub spanning_trees: Option<TreeCountSummary>,
    /// Empty for irregular graphs.
    pub theorems: Vec<TheoremVerdict>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    /// True if some proved implication is contradicted.
    pub fn violates_theorem(&self) -> bool {
        self.theorems.iter().any(|t| !t.consistent())
    }
}

pub fn certificate_digest(c: &Certificate) -> String {
    let bytes = serde_json::to_vec(c).expect("certificate serializes");
    Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Everything the tool knows how to say about one graph.
pub fn analyze(g: &Graph, input: &str) -> Result<(AnalysisReport, Certificate)> {
    let n = g.vertex_count();
    let mut notes = Vec::new();
    let packing = sigma(g);
    let certificate = Certificate::from_result(n, &packing);
    let sigma_summary = SigmaSummary {
        value: packing.sigma,
        certificate_valid: verify_certificate(g, &packing).is_ok(),
        certificate_sha256: certificate_digest(&certificate),
    };
    let spectrum = if n > 0 {
        Some(adjacency_spectrum(g)?)
    } else {
        None
    };
    let lambda2 = spectrum.as_ref().and_then(|s| s.lambda(2));
    let kappa_prime = if n >= 2 {
        Some(edge_connectivity(g)?.value)
    } else {
        None
    };
    let spanning_trees = if n > 0 {
        let c = count_spanning_trees(g)?;
        Some(TreeCountSummary {
            determinant: c.exact.to_string(),
            eigenvalue_product: sig15(c.spectral),
            agree: c.agree,
        })
    } else {
        None
    };
    let degree = g.regular_degree().filter(|_| n > 0);
    let theorems = match (degree, lambda2) {
        (Some(d), Some(l2)) if theorem_applies(d, 2) => [2usize, 3]
            .into_iter()
            .filter(|&k| theorem_applies(d, k))
            .map(|k| {
                let t = spectral_threshold(d, k);
                TheoremVerdict {
                    k,
                    threshold: rat_to_string(&t),
                    premise: lambda2_below(g, l2, &t),
                    conclusion: packing.sigma >= k,
                }
            })
            .collect(),
        (Some(_), Some(_)) => {
            notes.push("degree below 4: theorems not applicable".into());
            Vec::new()
        }
        _ => {
            notes.push("irregular graph: theorems not applicable".into());
            Vec::new()
        }
    };
    let report = AnalysisReport {
        input: input.to_string(),
        n,
        m: g.edge_count(),
        degree: degree.map_or_else(|| "irregular".to_string(), |d| d.to_string()),
        connected: g.is_connected(),
        lambda2: lambda2.map(sig15),
        spectrum: spectrum
            .map(|s| {
                s.groups()
                    .into_iter()
                    .map(|e| EigenGroup {
                        value: sig15(e.value),
                        multiplicity: e.multiplicity,
                    })
                    .collect()
            })
            .unwrap_or_default(),
        sigma: sigma_summary,
        kappa_prime,
        spanning_trees,
        theorems,
        notes,
    };
    Ok((report, certificate))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub blocks: usize,
    pub block_sizes: Vec<usize>,
    /// Exact entries as `p/q` strings.
    pub matrix: Vec<Vec<String>>,
    pub eigenvalues: Vec<f64>,
    pub equitable: bool,
    pub interlacing: InterlacingVerdict,
    /// Quotient eigenvalues missing from the graph spectrum; only meaningful
    /// for equitable partitions.
    pub unmatched_eigenvalues: Vec<f64>,
}

pub fn quotient_report(g: &Graph, p: &VertexPartition) -> Result<QuotientReport> {
    let q = quotient_matrix(g, p);
    let eig = q.eigenvalues()?;
    let spectrum = adjacency_spectrum(g)?;
    let interlacing = check_interlacing(&spectrum, &eig)?;
    let equitable = is_equitable(g, p);
    let unmatched = if equitable {
        unmatched_eigenvalues(&eig, &spectrum, 1e-8)
    } else {
        Vec::new()
    };
    Ok(QuotientReport {
        blocks: q.size(),
        block_sizes: q.block_sizes.clone(),
        matrix: q
            .exact()
            .to_rows()
            .iter()
            .map(|r| r.iter().map(rat_to_string).collect())
            .collect(),
        eigenvalues: sig15_all(&eig.values),
        equitable,
        interlacing: InterlacingVerdict {
            holds: interlacing.holds,
            worst_margin: sig15(interlacing.worst_margin),
        },
        unmatched_eigenvalues: sig15_all(&unmatched),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn k5_analysis() {
        let (r, _) = analyze(&complete_graph(5), "K5").unwrap();
        assert_eq!(r.sigma.value, 2);
        assert_eq!(r.kappa_prime, Some(4));
        assert_eq!(r.lambda2, Some(-1.0));
        assert!(r.sigma.certificate_valid);
        assert_eq!(r.theorems.len(), 1, "k = 3 needs d >= 6");
        assert!(r.theorems.iter().all(TheoremVerdict::consistent));
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }

    #[test]
    fn sig15_rounds() {
        assert_eq!(sig15(0.1 + 0.2), 0.3);
        assert_eq!(sig15(-1.0000000000000002), -1.0);
    }
}
