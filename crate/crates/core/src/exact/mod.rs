//! Exact arithmetic: integer polynomials, characteristic polynomials and
//! determinants of integer matrices, and Sturm-based real-root location.
//!
//! Rationals are [`num_rational::BigRational`], which is kept reduced with a
//! positive denominator.

mod matrix;
mod poly;
mod roots;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use serde::Serialize;

pub use matrix::{char_poly_exact, char_poly_rational, det_exact, IntMatrix, Matrix, RatMatrix};
pub use poly::{product, IntPoly};
pub use roots::{
    count_roots_at_least, default_precision, has_root_at_least, isolate_largest_root,
    isolate_real_roots, root_bound, squarefree_factorization, squarefree_part, IsolatedRoot,
    RootInterval, SturmChain,
};

/// Exact rational scalar.
pub type RatScalar = BigRational;

/// `num / den` as a reduced rational.
pub fn rat(num: i64, den: i64) -> RatScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> RatScalar {
    BigRational::from_integer(BigInt::from(v))
}

/// `num/den` text form used in reports.
pub fn rat_to_string(r: &RatScalar) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Value and sign of one derivative in a positivity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivativeValue {
    pub order: usize,
    /// Exact value as `num/den`.
    pub value: String,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub point: String,
    pub all_positive: bool,
    pub values: Vec<DerivativeValue>,
}

/// Checks `p^(n)(point) > 0` for every `n = 0..=deg p`.
///
/// When it holds, the shifted polynomial `p(x + point)` has only positive
/// coefficients, so by Descartes' rule of signs `p` has no root `>= point`.
pub fn descartes_positivity_check(p: &IntPoly, point: &RatScalar) -> PositivityReport {
    let mut values = Vec::new();
    let mut q = p.clone();
    for order in 0..=p.degree().unwrap_or(0) {
        let v = q.eval(point);
        let positive = v.numer().sign() == Sign::Plus;
        values.push(DerivativeValue {
            order,
            value: rat_to_string(&v),
            positive,
        });
        q = q.derivative();
    }
    PositivityReport {
        point: rat_to_string(point),
        all_positive: !p.is_zero() && values.iter().all(|v| v.positive),
        values,
    }
}
