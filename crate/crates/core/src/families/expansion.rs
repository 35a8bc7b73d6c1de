//! Symbolic-in-d helpers for the degree-10 polynomial P₁₀: its coefficient
//! table as polynomials in d, and the split of each derivative evaluated at
//! `x = d - 5/(d+3)` into a polynomial part plus a proper fraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exact::{rat_to_string, IntPoly};

/// Coefficients of P₁₀ in `x` (low degree first), each a polynomial in `d`.
pub fn p10_table() -> Vec<IntPoly> {
    [
        &[-5, 5, -1][..],
        &[5, -13, 4],
        &[109, -83, 14],
        &[-21, 57, -20],
        &[-146, 140, -29],
        &[-70, 18, 8],
        &[36, -66, 20],
        &[58, -50, 8],
        &[30, -16, 1],
        &[8, -2],
        &[1],
    ]
    .iter()
    .map(|c| IntPoly::from_i64(c))
    .collect()
}

/// Coefficients of P₃ in `x`, each a polynomial in `d`.
pub fn p3_table() -> Vec<IntPoly> {
    [&[-3, 2][..], &[1, -2], &[2, -1], &[1]]
        .iter()
        .map(|c| IntPoly::from_i64(c))
        .collect()
}

/// Instantiates a coefficient table at an integer `d`.
pub fn instantiate(table: &[IntPoly], d: i64) -> IntPoly {
    let d = BigInt::from(d);
    IntPoly::new(table.iter().map(|c| c.eval_int(&d)).collect())
}

/// `n`-th derivative in `x` of a coefficient table.
pub fn derivative_table(table: &[IntPoly], n: usize) -> Vec<IntPoly> {
    let mut t = table.to_vec();
    for _ in 0..n {
        t = t
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&BigInt::from(j)))
            .collect();
    }
    t
}

/// `P₁₀⁽ⁿ⁾(d - 5/(d+3)) = polynomial(d) + remainder(d)/(d+3)^e` with
/// `deg remainder < e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub order: usize,
    /// Power of `(d + 3)` in the denominator of the full expression.
    pub exponent: usize,
    /// Full numerator over `(d+3)^exponent`.
    pub numerator: IntPoly,
    pub polynomial: IntPoly,
    pub remainder: IntPoly,
}

impl Decomposition {
    /// Partial-fraction coefficients: entry `i` multiplies `1/(d+3)^(exponent-i)`.
    pub fn fraction_terms(&self) -> Vec<BigInt> {
        // remainder(d) written in powers of (d + 3)
        let shifted = self.remainder.compose(&IntPoly::linear_root(3));
        (0..self.exponent).map(|i| shifted.coeff(i)).collect()
    }

    /// The whole expression at an integer `d`.
    pub fn value_at(&self, d: i64) -> BigRational {
        let db = BigInt::from(d);
        BigRational::new(
            self.numerator.eval_int(&db),
            num_traits::pow(BigInt::from(d + 3), self.exponent),
        )
    }

    pub fn polynomial_at(&self, d: i64) -> BigInt {
        self.polynomial.eval_int(&BigInt::from(d))
    }
}

pub fn decompose_p10_derivative(order: usize) -> Decomposition {
    let table = derivative_table(&p10_table(), order);
    let exponent = table.len().saturating_sub(1);
    // x = s/t with s = d² + 3d - 5, t = d + 3
    let s = IntPoly::from_i64(&[-5, 3, 1]);
    let t = IntPoly::from_i64(&[3, 1]);
    let numerator = table
        .iter()
        .enumerate()
        .map(|(j, c)| c * &(s.pow(j as u32) * t.pow((exponent - j) as u32)))
        .fold(IntPoly::zero(), |acc, term| &acc + &term);
    let (polynomial, remainder) = numerator.div_rem_monic(&t.pow(exponent as u32));
    Decomposition {
        order,
        exponent,
        numerator,
        polynomial,
        remainder,
    }
}

/// Serializable summary of one derivative at one `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionValue {
    pub order: usize,
    pub d: i64,
    pub value: String,
    pub polynomial_part: String,
    pub positive: bool,
}

pub fn expansion_values(d: i64) -> Vec<ExpansionValue> {
    (0..=10)
        .map(|order| {
            let dec = decompose_p10_derivative(order);
            let v = dec.value_at(d);
            ExpansionValue {
                order,
                d,
                positive: v > BigRational::from_integer(0.into()),
                value: rat_to_string(&v),
                polynomial_part: dec.polynomial_at(d).to_string(),
            }
        })
        .collect()
}
