//! Exact real-root location with Sturm chains over the rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{rat, IntPoly};
use crate::error::{Error, Result};

/// Half-open interval `(lo, hi]` known to contain a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// True when `x` lies in the closed hull `[lo, hi]`.
    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        x >= lo - slack && x <= hi + slack
    }
}

/// A root interval together with the multiplicity of the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub interval: RootInterval,
    pub multiplicity: usize,
}

/// `10^-12`, the default isolation width.
pub fn default_precision() -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 12))
}

/// Integer polynomial with the same sign everywhere as the rational input
/// (scaled by a positive constant only).
fn positive_scaled(coeffs: &[BigRational]) -> IntPoly {
    let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let p = IntPoly::new(
        coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect(),
    );
    let g = p.content();
    if g.is_zero() || g.is_one() {
        p
    } else {
        IntPoly::new(p.coeffs().iter().map(|c| c / &g).collect())
    }
}

fn rat_derivative(p: &[BigRational]) -> Vec<BigRational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// `p / gcd(p, p')`: same real roots, all simple.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    if p.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    let pr = p.to_rational();
    let g = rat::gcd(&pr, &rat_derivative(&pr));
    let (q, _) = rat::div_rem(&pr, &g);
    IntPoly::from_rational(&q)
}

/// Yun's algorithm: `p = c · Π f_i^i` with each `f_i` squarefree and the
/// `f_i` pairwise coprime. Constant factors are omitted.
pub fn squarefree_factorization(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.to_rational();
    let fp = rat_derivative(&f);
    let b = rat::gcd(&f, &fp);
    let mut c = rat::div_rem(&f, &b).0;
    let mut d = {
        let mut t = rat::div_rem(&fp, &b).0;
        let cp = rat_derivative(&c);
        sub_assign(&mut t, &cp);
        t
    };
    let mut i = 1;
    while c.len() > 1 {
        let a = rat::gcd(&c, &d);
        if a.len() > 1 {
            out.push((IntPoly::from_rational(&a), i));
        }
        c = rat::div_rem(&c, &a).0;
        let mut nd = rat::div_rem(&d, &a).0;
        sub_assign(&mut nd, &rat_derivative(&c));
        d = nd;
        i += 1;
    }
    out
}

fn sub_assign(a: &mut Vec<BigRational>, b: &[BigRational]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    rat::trim(a);
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = squarefree_part(p);
        let mut chain = vec![p0.clone()];
        if p0.degree().unwrap_or(0) == 0 {
            return SturmChain { chain };
        }
        chain.push(p0.derivative());
        loop {
            let n = chain.len();
            let r = rat::rem(&chain[n - 2].to_rational(), &chain[n - 1].to_rational());
            if r.is_empty() {
                break;
            }
            let neg: Vec<BigRational> = r.into_iter().map(|c| -c).collect();
            chain.push(positive_scaled(&neg));
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for s in signs.filter(|&s| s != Sign::NoSign) {
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(IntPoly::sign_at_pos_inf))
    }

    fn variations_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(IntPoly::sign_at_neg_inf))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in `(a, +inf)`.
    pub fn count_above(&self, a: &BigRational) -> usize {
        self.variations_at(a)
            .saturating_sub(self.variations_pos_inf())
    }

    pub fn count_real(&self) -> usize {
        self.variations_neg_inf()
            .saturating_sub(self.variations_pos_inf())
    }
}

/// Cauchy bound: every complex root satisfies `|z| < bound`.
pub fn root_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    BigRational::from_integer(BigInt::one()) + BigRational::new(max, lead).ceil()
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigInt::from(2)
}

/// Isolates the largest real root of `p` into an interval `(lo, hi]` of
/// width at most `precision`.
pub fn isolate_largest_root(p: &IntPoly, precision: &BigRational) -> Result<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::NoRealRoot);
    }
    let chain = SturmChain::new(p);
    if chain.count_real() == 0 {
        return Err(Error::NoRealRoot);
    }
    let b = root_bound(chain.polynomial());
    let mut lo = -b.clone();
    let mut hi = b;
    while &hi - &lo > *precision {
        let mid = half(&lo, &hi);
        if chain.count_in(&mid, &hi) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootInterval { lo, hi })
}

/// All real roots with multiplicities, ascending.
pub fn isolate_real_roots(p: &IntPoly, precision: &BigRational) -> Vec<IsolatedRoot> {
    let mut out = Vec::new();
    for (factor, mult) in squarefree_factorization(p) {
        let chain = SturmChain::new(&factor);
        let b = root_bound(&factor);
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match chain.count_in(&lo, &hi) {
                0 => {}
                1 => {
                    let (mut lo, mut hi) = (lo, hi);
                    while &hi - &lo > *precision {
                        let mid = half(&lo, &hi);
                        if chain.count_in(&mid, &hi) == 1 {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    out.push(IsolatedRoot {
                        interval: RootInterval { lo, hi },
                        multiplicity: mult,
                    });
                }
                _ => {
                    let mid = half(&lo, &hi);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }
    out.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    out
}

/// Real roots `>= x`, counted with multiplicity.
pub fn count_roots_at_least(p: &IntPoly, x: &BigRational) -> usize {
    squarefree_factorization(p)
        .into_iter()
        .map(|(f, m)| {
            let at = usize::from(f.sign_at(x) == Sign::NoSign);
            m * (SturmChain::new(&f).count_above(x) + at)
        })
        .sum()
}

/// Exact test: does `p` have a real root `>= x`?
pub fn has_root_at_least(p: &IntPoly, x: &BigRational) -> bool {
    p.sign_at(x) == Sign::NoSign || SturmChain::new(p).count_above(x) > 0
}
