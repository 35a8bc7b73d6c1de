//! The extremal families G_d and H_d, their quotient matrices, and
//! verifiers for every claim made about them.

pub mod expansion;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::edge_connectivity;
use crate::error::{Error, Result};
use crate::exact::{
    char_poly_exact, count_roots_at_least, default_precision, descartes_positivity_check,
    isolate_largest_root, isolate_real_roots, rat, rat_to_string, IntMatrix, IntPoly, SturmChain,
};
use crate::graph::{crossing_edges, Graph, VertexPartition};
use crate::randgen::{random_regular, trial_seeds, GenConfig};
use crate::report::sig15;
use crate::spectra::{
    adjacency_spectrum, check_interlacing, is_equitable, quotient_matrix, EigenGroup, Spectrum,
};
use crate::treepack::{sigma, verify_certificate, Certificate};

use expansion::{instantiate, p10_table, p3_table};

pub const GD_MIN: usize = 4;
pub const HD_MIN: usize = 6;

/// Tolerance for matching floating eigenvalues against exact roots.
pub const ROOT_MATCH_TOL: f64 = 1e-8;
/// Tolerance for matching whole spectra.
pub const SPECTRUM_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "Gd")]
    Gd,
    #[serde(rename = "Hd")]
    Hd,
}

impl Family {
    pub fn min_degree(self) -> usize {
        match self {
            Family::Gd => GD_MIN,
            Family::Hd => HD_MIN,
        }
    }

    pub fn blocks(self) -> usize {
        match self {
            Family::Gd => 3,
            Family::Hd => 5,
        }
    }

    pub fn build(self, d: usize) -> Result<Graph> {
        match self {
            Family::Gd => build_gd(d),
            Family::Hd => build_hd(d),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Gd" | "gd" | "G" => Ok(Family::Gd),
            "Hd" | "hd" | "H" => Ok(Family::Hd),
            _ => Err(Error::InvalidArgument(format!("unknown family {s:?}"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Gd => "Gd",
            Family::Hd => "Hd",
        })
    }
}

fn check_degree(family: Family, d: usize) -> Result<()> {
    if d < family.min_degree() {
        return Err(Error::InvalidArgument(format!(
            "{family} needs d >= {}, got {d}",
            family.min_degree()
        )));
    }
    Ok(())
}

/// Copies of `K_{d+1}` with the listed local pairs removed, plus `extra`.
fn blocks_plus(
    d: usize,
    blocks: usize,
    missing: &[(usize, usize)],
    extra: &[(usize, usize)],
) -> Result<Graph> {
    let size = d + 1;
    let mut edges = Vec::new();
    for b in 0..blocks {
        let base = b * size;
        for u in 0..size {
            for v in u + 1..size {
                if !missing.contains(&(u, v)) {
                    edges.push((base + u, base + v));
                }
            }
        }
    }
    let g = Graph::new(blocks * size, &edges)?.add_edges(extra)?;
    if g.regular_degree() != Some(d) {
        return Err(Error::Construction(format!(
            "result is not {d}-regular (degrees {:?})",
            g.degrees()
        )));
    }
    Ok(g)
}

/// Block `i` (0-based) occupies `i(d+1)..(i+1)(d+1)`; `a_i`, `b_i` are its
/// first two vertices and are not adjacent.
pub fn build_gd(d: usize) -> Result<Graph> {
    check_degree(Family::Gd, d)?;
    let s = d + 1;
    let (a, b) = (|i: usize| i * s, |i: usize| i * s + 1);
    blocks_plus(d, 3, &[(0, 1)], &[(a(0), a(1)), (b(1), b(2)), (a(2), b(0))])
}

/// Block `i` starts with `a_i, b_i, c_i, d_i`; the pairs `a_i c_i` and
/// `b_i d_i` are missing.
pub fn build_hd(d: usize) -> Result<Graph> {
    check_degree(Family::Hd, d)?;
    let s = d + 1;
    let v = |i: usize, off: usize| (i - 1) * s + off;
    let (a, b, c, dd) = (|i| v(i, 0), |i| v(i, 1), |i| v(i, 2), |i| v(i, 3));
    let mut extra: Vec<(usize, usize)> = (1..=5).map(|i| (b(i), a(i % 5 + 1))).collect();
    extra.extend([
        (c(1), dd(3)),
        (c(3), dd(5)),
        (c(5), dd(2)),
        (c(2), dd(4)),
        (c(4), dd(1)),
    ]);
    blocks_plus(d, 5, &[(0, 2), (1, 3)], &extra)
}

/// The blocks `V(G_1), V(G_2), …` of either family.
pub fn natural_partition(family: Family, d: usize) -> VertexPartition {
    let s = d + 1;
    let blocks = (0..family.blocks())
        .map(|i| (i * s..(i + 1) * s).collect())
        .collect();
    VertexPartition::new(family.blocks() * s, blocks).expect("blocks tile the vertex set")
}

/// Interiors first, then the special vertices of each block in order.
pub fn fine_partition(family: Family, d: usize) -> VertexPartition {
    let s = d + 1;
    let special = match family {
        Family::Gd => 2,
        Family::Hd => 4,
    };
    let t = family.blocks();
    let mut blocks: Vec<Vec<usize>> = (0..t)
        .map(|i| (i * s + special..(i + 1) * s).collect())
        .collect();
    for i in 0..t {
        blocks.extend((0..special).map(|k| vec![i * s + k]));
    }
    VertexPartition::new(t * s, blocks).expect("blocks tile the vertex set")
}

const A9_ROWS: [&str; 9] = [
    "d-2,0,0,1,1,0,0,0,0",
    "0,d-2,0,0,0,1,1,0,0",
    "0,0,d-2,0,0,0,0,1,1",
    "d-1,0,0,0,0,1,0,0,0",
    "d-1,0,0,0,0,0,0,1,0",
    "0,d-1,0,1,0,0,0,0,0",
    "0,d-1,0,0,0,0,0,0,1",
    "0,0,d-1,0,1,0,0,0,0",
    "0,0,d-1,0,0,0,1,0,0",
];

const A25_ROWS: [&str; 25] = [
    "d-4,0,0,0,0,1,1,1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0",
    "0,d-4,0,0,0,0,0,0,0,1,1,1,1,0,0,0,0,0,0,0,0,0,0,0,0",
    "0,0,d-4,0,0,0,0,0,0,0,0,0,0,1,1,1,1,0,0,0,0,0,0,0,0",
    "0,0,0,d-4,0,0,0,0,0,0,0,0,0,0,0,0,0,1,1,1,1,0,0,0,0",
    "0,0,0,0,d-4,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1,1,1,1",
    "d-3,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0,0",
    "d-3,0,0,0,0,1,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0",
    "d-3,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,1,0,0,0,0,0,0,0,0",
    "d-3,0,0,0,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0,1,0,0,0,0,0",
    "0,d-3,0,0,0,0,1,0,0,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0,0",
    "0,d-3,0,0,0,0,0,0,0,1,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0",
    "0,d-3,0,0,0,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,1,0,0,0,0",
    "0,d-3,0,0,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,0,0,0,0,1,0",
    "0,0,d-3,0,0,0,0,0,0,0,1,0,0,0,1,0,1,0,0,0,0,0,0,0,0",
    "0,0,d-3,0,0,0,0,0,0,0,0,0,0,1,0,1,0,1,0,0,0,0,0,0,0",
    "0,0,d-3,0,0,0,0,0,0,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,1",
    "0,0,d-3,0,0,0,0,1,0,0,0,0,0,1,0,1,0,0,0,0,0,0,0,0,0",
    "0,0,0,d-3,0,0,0,0,0,0,0,0,0,0,1,0,0,0,1,0,1,0,0,0,0",
    "0,0,0,d-3,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0,1,0,1,0,0,0",
    "0,0,0,d-3,0,0,0,0,1,0,0,0,0,0,0,0,0,0,1,0,1,0,0,0,0",
    "0,0,0,d-3,0,0,0,0,0,0,0,1,0,0,0,0,0,1,0,1,0,0,0,0,0",
    "0,0,0,0,d-3,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0,0,0,1,0,1",
    "0,0,0,0,d-3,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0,1,0",
    "0,0,0,0,d-3,0,0,0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,1,0,1",
    "0,0,0,0,d-3,0,0,0,0,0,0,0,0,0,0,1,0,0,0,0,0,1,0,1,0",
];

fn entry(token: &str, d: i64) -> i64 {
    match token.strip_prefix('d') {
        None => token.parse().expect("integer entry"),
        Some("") => d,
        Some(rest) => d + rest.parse::<i64>().expect("d±k entry"),
    }
}

fn transcribed(rows: &[&str], d: usize) -> IntMatrix {
    let d = d as i64;
    let rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.split(',').map(|t| entry(t, d)).collect())
        .collect();
    IntMatrix::from_i64(&rows).expect("square transcription")
}

/// Checks a transcribed quotient against the one computed from the graph.
fn validated(family: Family, rows: &[&str], d: usize) -> Result<IntMatrix> {
    check_degree(family, d)?;
    let m = transcribed(rows, d);
    let g = family.build(d)?;
    let p = fine_partition(family, d);
    if !is_equitable(&g, &p) {
        return Err(Error::Construction(format!(
            "{family} fine partition is not equitable"
        )));
    }
    let computed = quotient_matrix(&g, &p).to_integer();
    if computed.as_ref() != Some(&m) {
        return Err(Error::Construction(format!(
            "transcribed quotient of {family} at d = {d} differs from the computed one"
        )));
    }
    Ok(m)
}

pub fn build_a9(d: usize) -> Result<IntMatrix> {
    validated(Family::Gd, &A9_ROWS, d)
}

pub fn build_a25(d: usize) -> Result<IntMatrix> {
    validated(Family::Hd, &A25_ROWS, d)
}

pub fn p3(d: usize) -> IntPoly {
    instantiate(&p3_table(), d as i64)
}

pub fn p10(d: usize) -> IntPoly {
    instantiate(&p10_table(), d as i64)
}

/// `(x - d)(x + 1)² P₃²`.
pub fn claimed_a9_char_poly(d: usize) -> IntPoly {
    let p = p3(d);
    IntPoly::linear_root(d as i64) * IntPoly::linear_root(-1).pow(2) * (&p * &p)
}

/// `(x - d)(x - 1)(x + 1)²(x + 3) P₁₀²`.
pub fn claimed_a25_char_poly(d: usize) -> IntPoly {
    let p = p10(d);
    IntPoly::linear_root(d as i64)
        * IntPoly::linear_root(1)
        * IntPoly::linear_root(-1).pow(2)
        * IntPoly::linear_root(-3)
        * (&p * &p)
}

/// `d - num/(d + shift)`.
pub fn offset_point(d: usize, num: i64, shift: i64) -> BigRational {
    let d = d as i64;
    rat(d, 1) - rat(num, d + shift)
}

/// One named claim with the computed value and the bound it was held to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub computed: String,
    pub claimed: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin: Option<f64>,
}

impl Check {
    fn new(name: &str, passed: bool, computed: impl ToString, claimed: impl ToString) -> Self {
        Check {
            name: name.to_string(),
            passed,
            computed: computed.to_string(),
            claimed: claimed.to_string(),
            margin: None,
        }
    }

    fn with_margin(mut self, m: f64) -> Self {
        self.margin = Some(m);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalInterval {
    pub lo: String,
    pub hi: String,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub lo_f64: f64,
    pub hi_f64: f64,
}

impl RationalInterval {
    fn new(lo: &BigRational, hi: &BigRational, lo_closed: bool, hi_closed: bool) -> Self {
        RationalInterval {
            lo: rat_to_string(lo),
            hi: rat_to_string(hi),
            lo_closed,
            hi_closed,
            lo_f64: lo.to_f64().unwrap_or(f64::NAN),
            hi_f64: hi.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: Family,
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub sigma: usize,
    pub kappa_prime: usize,
    pub lambda2: f64,
    /// Claimed interval for λ₂.
    pub lambda2_interval: RationalInterval,
    /// Isolating interval `(lo, hi]` of the largest root of the certificate
    /// polynomial.
    pub root_interval: RationalInterval,
    pub spectrum_expected: Vec<EigenGroup>,
    pub spectrum_observed: Vec<EigenGroup>,
    pub certificate: Certificate,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn groups_rounded(s: &Spectrum) -> Vec<EigenGroup> {
    s.groups()
        .into_iter()
        .map(|g| EigenGroup {
            value: sig15(g.value),
            multiplicity: g.multiplicity,
        })
        .collect()
}

/// Expected spectrum from exact pieces: fixed eigenvalues with multiplicity
/// plus every root of `poly` with the given multiplicity.
fn expected_spectrum(fixed: &[(f64, usize)], poly: &IntPoly, mult: usize) -> Spectrum {
    let prec = default_precision();
    let mut values: Vec<f64> = fixed
        .iter()
        .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
        .collect();
    for r in isolate_real_roots(poly, &prec) {
        values.extend(std::iter::repeat_n(
            r.interval.midpoint_f64(),
            mult * r.multiplicity,
        ));
    }
    Spectrum::new(values)
}

fn count_near(s: &Spectrum, v: f64, tol: f64) -> usize {
    s.values.iter().filter(|&&x| (x - v).abs() <= tol).count()
}

struct Common {
    g: Graph,
    spectrum: Spectrum,
    lambda2: f64,
    sigma: usize,
    certificate: Certificate,
    kappa: usize,
    checks: Vec<Check>,
}

fn common_checks(family: Family, d: usize) -> Result<Common> {
    let g = family.build(d)?;
    let n = g.vertex_count();
    let mut checks = Vec::new();
    let blocks = family.blocks();
    checks.push(Check::new(
        "vertex_count",
        n == blocks * (d + 1),
        n,
        format!("{blocks}(d+1) = {}", blocks * (d + 1)),
    ));
    checks.push(Check::new(
        "regular",
        g.regular_degree() == Some(d),
        format!("{:?}", g.regular_degree()),
        format!("Some({d})"),
    ));
    let natural = natural_partition(family, d);
    let crossing = crossing_edges(&g, &natural);
    let (want_cross, k_bound) = match family {
        Family::Gd => (3, 2),
        Family::Hd => (10, 3),
    };
    checks.push(Check::new(
        "natural_partition_crossing",
        crossing.total == want_cross && crossing.total < k_bound * (blocks - 1),
        crossing.total,
        format!("{want_cross} < {}", k_bound * (blocks - 1)),
    ));
    if family == Family::Gd {
        let pairwise = (0..3).all(|i| (0..3).all(|j| i == j || crossing.between[i][j] == 1));
        checks.push(Check::new(
            "pairwise_crossing_one",
            pairwise,
            format!("{:?}", crossing.between),
            "e(X_i,X_j) = 1",
        ));
    }

    let packing = sigma(&g);
    let cert_ok = verify_certificate(&g, &packing);
    let want_sigma = k_bound - 1;
    checks.push(Check::new(
        "sigma",
        packing.sigma == want_sigma,
        packing.sigma,
        want_sigma,
    ));
    checks.push(Check::new(
        "certificate",
        cert_ok.is_ok(),
        cert_ok
            .as_ref()
            .map_or_else(|e| e.to_string(), |_| "valid".into()),
        "valid",
    ));
    let kappa = edge_connectivity(&g)?.value;
    let want_kappa = match family {
        Family::Gd => 2,
        Family::Hd => 4,
    };
    checks.push(Check::new(
        "kappa_prime",
        kappa == want_kappa,
        kappa,
        want_kappa,
    ));

    let spectrum = adjacency_spectrum(&g)?;
    let lambda2 = spectrum.values[1];
    checks.push(Check::new(
        "lambda1_is_d",
        (spectrum.values[0] - d as f64).abs() <= ROOT_MATCH_TOL,
        spectrum.values[0],
        d,
    ));

    // Quotient eigenvalues of the natural partition interlace the spectrum.
    let q = quotient_matrix(&g, &natural).eigenvalues()?;
    let inter = check_interlacing(&spectrum, &q)?;
    checks.push(
        Check::new(
            "natural_quotient_interlaces",
            inter.holds,
            inter.worst_margin,
            ">= -1e-9",
        )
        .with_margin(inter.worst_margin),
    );

    let fine = fine_partition(family, d);
    checks.push(Check::new(
        "fine_partition_equitable",
        is_equitable(&g, &fine),
        is_equitable(&g, &fine),
        true,
    ));

    Ok(Common {
        certificate: Certificate::from_result(n, &packing),
        g,
        spectrum,
        lambda2,
        sigma: packing.sigma,
        kappa,
        checks,
    })
}

fn spectrum_checks(
    checks: &mut Vec<Check>,
    observed: &Spectrum,
    expected: &Spectrum,
    minus_one: usize,
) {
    let dev = observed.max_deviation(expected);
    checks.push(
        Check::new(
            "spectrum_multiset",
            dev.is_some_and(|x| x <= SPECTRUM_TOL),
            format!("max deviation {:?}", dev),
            format!("<= {SPECTRUM_TOL}"),
        )
        .with_margin(dev.unwrap_or(f64::INFINITY)),
    );
    let got = count_near(observed, -1.0, SPECTRUM_TOL);
    checks.push(Check::new(
        "multiplicity_minus_one",
        got == minus_one,
        got,
        minus_one,
    ));
}

fn report(
    family: Family,
    d: usize,
    common: Common,
    li: RationalInterval,
    ri: RationalInterval,
    expected: &Spectrum,
) -> FamilyReport {
    let passed = common.checks.iter().all(|c| c.passed);
    FamilyReport {
        family,
        d,
        n: common.g.vertex_count(),
        m: common.g.edge_count(),
        sigma: common.sigma,
        kappa_prime: common.kappa,
        lambda2: sig15(common.lambda2),
        lambda2_interval: li,
        root_interval: ri,
        spectrum_expected: groups_rounded(expected),
        spectrum_observed: groups_rounded(&common.spectrum),
        certificate: common.certificate,
        checks: common.checks,
        passed,
    }
}

pub fn verify_gd(d: usize) -> Result<FamilyReport> {
    let mut c = common_checks(Family::Gd, d)?;
    let checks = &mut c.checks;
    let p = p3(d);

    let a9 = build_a9(d)?;
    let cp = char_poly_exact(&a9)?;
    checks.push(Check::new(
        "a9_char_poly",
        cp == claimed_a9_char_poly(d),
        &cp,
        "(x-d)(x+1)^2 P3^2",
    ));

    let lo = offset_point(d, 3, 2);
    let hi = offset_point(d, 3, 3);
    let dd = BigInt::from(d);
    let at_lo = p.eval(&lo);
    let closed_lo = BigRational::new(
        BigInt::from(-3) * (BigInt::from(9) + &dd * (BigInt::from(-2) + &dd + &dd * &dd)),
        num_traits::pow(&dd + 2, 3),
    );
    checks.push(Check::new(
        "p3_at_lower",
        at_lo.numer().sign() == Sign::Minus && at_lo == closed_lo,
        rat_to_string(&at_lo),
        format!("{} < 0", rat_to_string(&closed_lo)),
    ));
    let at_hi = p.eval(&hi);
    let closed_hi = BigRational::new(
        BigInt::from(6) * &dd * &dd - 81,
        num_traits::pow(&dd + 3, 3),
    );
    checks.push(Check::new(
        "p3_at_upper",
        at_hi.numer().sign() == Sign::Plus && at_hi == closed_hi,
        rat_to_string(&at_hi),
        format!("{} > 0", rat_to_string(&closed_hi)),
    ));

    // θ_d ∈ (lo, hi): some root above lo, none at or above hi.
    let chain = SturmChain::new(&p);
    let inside = chain.count_above(&lo) >= 1 && count_roots_at_least(&p, &hi) == 0;
    let root = isolate_largest_root(&p, &default_precision())?;
    checks.push(Check::new(
        "theta_in_interval",
        inside,
        format!("({}, {}]", root.lo, root.hi),
        "(d-3/(d+2), d-3/(d+3))",
    ));
    let theta = root.midpoint_f64();
    let diff = (c.lambda2 - theta).abs();
    checks.push(
        Check::new(
            "lambda2_equals_theta",
            diff <= ROOT_MATCH_TOL,
            c.lambda2,
            theta,
        )
        .with_margin(diff),
    );
    let (lof, hif) = (
        lo.to_f64().unwrap_or(f64::NAN),
        hi.to_f64().unwrap_or(f64::NAN),
    );
    checks.push(
        Check::new(
            "lambda2_in_interval",
            lof < c.lambda2 && c.lambda2 < hif,
            c.lambda2,
            format!("({lof}, {hif})"),
        )
        .with_margin((c.lambda2 - lof).min(hif - c.lambda2)),
    );
    // σ = 1, so λ₂ must sit at or above the k = 2 threshold.
    let threshold = offset_point(d, 3, 1);
    checks.push(Check::new(
        "theorem_consistency",
        chain.count_above(&threshold) >= 1,
        theta,
        format!(">= {}", rat_to_string(&threshold)),
    ));

    let expected = expected_spectrum(&[(d as f64, 1), (-1.0, 3 * d - 4)], &p, 2);
    spectrum_checks(checks, &c.spectrum, &expected, 3 * d - 4);

    let li = RationalInterval::new(&lo, &hi, false, false);
    let ri = RationalInterval::new(&root.lo, &root.hi, false, true);
    Ok(report(Family::Gd, d, c, li, ri, &expected))
}

pub fn verify_hd(d: usize) -> Result<FamilyReport> {
    let mut c = common_checks(Family::Hd, d)?;
    let checks = &mut c.checks;
    let p = p10(d);

    let a25 = build_a25(d)?;
    let cp = char_poly_exact(&a25)?;
    checks.push(Check::new(
        "a25_char_poly",
        cp == claimed_a25_char_poly(d),
        &cp,
        "(x-d)(x-1)(x+1)^2(x+3) P10^2",
    ));

    let lo = offset_point(d, 5, 1);
    let hi = offset_point(d, 5, 3);
    let desc = descartes_positivity_check(&p, &hi);
    checks.push(Check::new(
        "descartes_positivity",
        desc.all_positive,
        desc.values.len(),
        "all derivatives > 0",
    ));

    // γ_d ∈ [lo, hi): a root at or above lo, none at or above hi.
    let inside = count_roots_at_least(&p, &lo) >= 1 && count_roots_at_least(&p, &hi) == 0;
    let root = isolate_largest_root(&p, &default_precision())?;
    checks.push(Check::new(
        "gamma_in_interval",
        inside,
        format!("({}, {}]", root.lo, root.hi),
        "[d-5/(d+1), d-5/(d+3))",
    ));
    let gamma = root.midpoint_f64();
    let diff = (c.lambda2 - gamma).abs();
    checks.push(
        Check::new(
            "lambda2_equals_gamma",
            diff <= ROOT_MATCH_TOL,
            c.lambda2,
            gamma,
        )
        .with_margin(diff),
    );
    let (lof, hif) = (
        lo.to_f64().unwrap_or(f64::NAN),
        hi.to_f64().unwrap_or(f64::NAN),
    );
    checks.push(
        Check::new(
            "lambda2_in_interval",
            lof <= c.lambda2 && c.lambda2 < hif,
            c.lambda2,
            format!("[{lof}, {hif})"),
        )
        .with_margin((c.lambda2 - lof).min(hif - c.lambda2)),
    );

    let fixed = [(d as f64, 1), (1.0, 1), (-3.0, 1), (-1.0, 5 * d - 18)];
    let expected = expected_spectrum(&fixed, &p, 2);
    spectrum_checks(checks, &c.spectrum, &expected, 5 * d - 18);

    let li = RationalInterval::new(&lo, &hi, true, false);
    let ri = RationalInterval::new(&root.lo, &root.hi, false, true);
    Ok(report(Family::Hd, d, c, li, ri, &expected))
}

pub fn verify_family(family: Family, d: usize) -> Result<FamilyReport> {
    match family {
        Family::Gd => verify_gd(d),
        Family::Hd => verify_hd(d),
    }
}

/// Reports for every `d` in the range, computed in parallel, ordered by `d`.
pub fn verify_range(family: Family, d_min: usize, d_max: usize) -> Result<Vec<FamilyReport>> {
    (d_min..=d_max)
        .into_par_iter()
        .map(|d| verify_family(family, d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    /// `G_d` has `3(d+1)` vertices, `κ′ = 2` and `σ = 1`.
    pub attained: bool,
    /// `(n, trials)` pairs over the admissible `n < 3(d+1)`.
    pub trials_by_n: Vec<(usize, usize)>,
    /// Smaller d-regular graphs with `κ′ = 2` and `σ = 1`.
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

/// Attainment by G_d plus a random search for smaller d-regular graphs with
/// `κ′ = 2` and `σ = 1`.
pub fn proposition_search(d: usize, trials: usize, seed: u64) -> Result<PropositionReport> {
    let g = build_gd(d)?;
    let attained = g.vertex_count() == 3 * (d + 1)
        && edge_connectivity(&g)?.value == 2
        && sigma(&g).sigma == 1;
    let ns: Vec<usize> = (d + 1..3 * (d + 1))
        .filter(|n| (n * d).is_multiple_of(2))
        .collect();
    let seeds = trial_seeds(seed, trials);
    let hits: Vec<Option<String>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let n = ns[i % ns.len()];
            let h = random_regular(&GenConfig::new(d, n, s))?;
            if edge_connectivity(&h)?.value == 2 && sigma(&h).sigma == 1 {
                Ok(Some(h.to_edge_list()))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    let trials_by_n = ns
        .iter()
        .enumerate()
        .map(|(j, &n)| (n, (0..trials).filter(|i| i % ns.len() == j).count()))
        .collect();
    let counterexamples: Vec<String> = hits.into_iter().flatten().collect();
    Ok(PropositionReport {
        d,
        trials,
        seed,
        passed: attained && counterexamples.is_empty(),
        attained,
        trials_by_n,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gd_shape() {
        let g = build_gd(4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 30));
        assert_eq!(build_gd(5).unwrap().vertex_count(), 18);
        assert!(build_gd(3).is_err());
        assert_eq!(
            crossing_edges(&g, &natural_partition(Family::Gd, 4)).total,
            3
        );
    }

    #[test]
    fn hd_shape() {
        let g = build_hd(10).unwrap();
        assert_eq!(g.vertex_count(), 55);
        assert_eq!(g.regular_degree(), Some(10));
        assert_eq!(
            crossing_edges(&g, &natural_partition(Family::Hd, 10)).total,
            10
        );
        assert_eq!(build_hd(6).unwrap().vertex_count(), 35);
        assert!(build_hd(5).is_err());
    }

    #[test]
    fn transcriptions_match_graphs() {
        let a9 = build_a9(4).unwrap();
        let row0: Vec<BigInt> = [2, 0, 0, 1, 1, 0, 0, 0, 0]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(a9.row(0), &row0[..]);
        let a25 = build_a25(6).unwrap();
        assert_eq!(a25.row(0).iter().sum::<BigInt>(), BigInt::from(6));
        for d in [7, 9] {
            assert!(build_a25(d).is_ok());
            assert!(build_a9(d).is_ok());
        }
    }

    #[test]
    fn char_poly_identities_small() {
        for d in 4..=8 {
            assert_eq!(
                char_poly_exact(&build_a9(d).unwrap()).unwrap(),
                claimed_a9_char_poly(d)
            );
        }
        assert_eq!(
            char_poly_exact(&build_a25(6).unwrap()).unwrap(),
            claimed_a25_char_poly(6)
        );
    }

    #[test]
    fn gd4_report() {
        let r = verify_gd(4).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!((r.lambda2 - 3.569).abs() < 1e-3);
        assert_eq!((r.sigma, r.kappa_prime), (1, 2));
    }

    #[test]
    fn hd6_report() {
        let r = verify_hd(6).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert_eq!((r.sigma, r.kappa_prime), (2, 4));
    }

    #[test]
    fn proposition_small() {
        let r = proposition_search(4, 0, 1).unwrap();
        assert!(r.attained && r.passed);
        let r = proposition_search(4, 200, 1).unwrap();
        assert!(r.passed, "{:?}", r.counterexamples);
    }
}
