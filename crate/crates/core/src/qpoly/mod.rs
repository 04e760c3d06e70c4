//! Exact Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! [`QPoly`] is dense: it stores the exponent of its lowest term and the run of
//! coefficients up to the highest term. Values are always kept canonical (no
//! zero at either end of the run), so derived equality is polynomial equality.
//! Negative exponents are allowed because several of the identities carry
//! factors like `q^(n-m)` that go negative for some parameters.

mod fraction;
mod qnum;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use fraction::PolyFraction;
pub use qnum::{
    ballot_q, ballot_q_binomial_form, gaussian_binomial, q_factorial, q_int, super_catalan_q,
    super_catalan_t_q,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    min_deg: i64,
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        QPoly::from_coeffs(exp, vec![coeff.into()])
    }

    /// Builds `sum_i coeffs[i] * q^(min_deg + i)`, trimming zeros at both ends.
    pub fn from_coeffs(min_deg: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { min_deg, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(min_deg: i64, coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(min_deg, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Polynomial whose coefficient of `q^e` is `counts[e]`.
    pub fn from_counts(counts: &[u64]) -> Self {
        QPoly::from_coeffs(0, counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.min_deg = 0;
            return;
        }
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_deg += lead_zeros as i64;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest nonzero term, `None` for zero.
    pub fn min_deg(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_deg)
    }

    /// Exponent of the highest nonzero term, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_deg + self.coeffs.len() as i64 - 1)
    }

    /// Dense coefficient run starting at [`QPoly::min_deg`].
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.min_deg;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients weakly increase and then weakly decrease. Interior zeros
    /// count, so `1 + q^2` is not unimodal. The zero polynomial is vacuously
    /// unimodal.
    pub fn is_unimodal(&self) -> bool {
        let mut descending = false;
        for w in self.coeffs.windows(2) {
            if w[1] > w[0] {
                if descending {
                    return false;
                }
            } else if w[1] < w[0] {
                descending = true;
            }
        }
        true
    }

    /// `(coeffs read left to right) == (coeffs read right to left)`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Returns `c` with `self = divisor * c`, or [`Error::NotDivisible`]
    /// carrying the remainder of the long division.
    ///
    /// Both operands are shifted to ordinary polynomials with nonzero constant
    /// term before dividing, so the remainder is that of the shifted problem
    /// shifted back to the dividend's lowest exponent.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(QPoly::zero());
        }
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        let dlen = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return Err(Error::NotDivisible {
                remainder: self.clone(),
            });
        }
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        let lead_is_one = lead.is_one();
        for k in (0..qlen).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let c = if lead_is_one {
                top.clone()
            } else {
                if !(top % lead).is_zero() {
                    return Err(Error::NotDivisible {
                        remainder: QPoly::from_coeffs(self.min_deg, rem),
                    });
                }
                top / lead
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                if d.is_one() {
                    rem[k + j] -= &c;
                } else {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible {
                remainder: QPoly::from_coeffs(self.min_deg, rem),
            });
        }
        Ok(QPoly::from_coeffs(self.min_deg - divisor.min_deg, quot))
    }

    /// Multiplies by `[r]_q = 1 + q + ... + q^(r-1)` with a sliding window sum.
    pub(crate) fn mul_q_int(&self, r: u32) -> QPoly {
        if r == 0 || self.is_zero() {
            return QPoly::zero();
        }
        let r = r as usize;
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + r - 1);
        let mut window = BigInt::zero();
        for k in 0..n + r - 1 {
            if k < n {
                window += &self.coeffs[k];
            }
            if k >= r {
                window -= &self.coeffs[k - r];
            }
            out.push(window.clone());
        }
        QPoly::from_coeffs(self.min_deg, out)
    }

    fn add_scaled(&mut self, other: &QPoly, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate {
                -other.clone()
            } else {
                other.clone()
            };
            return;
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.degree().unwrap().max(other.degree().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.drain(..).enumerate() {
            coeffs[(self.min_deg - lo) as usize + i] = c;
        }
        let off = (other.min_deg - lo) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate {
                coeffs[off + i] -= c;
            } else {
                coeffs[off + i] += c;
            }
        }
        self.min_deg = lo;
        self.coeffs = coeffs;
        self.normalize();
    }

    fn mul_ref(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(self.min_deg + other.min_deg, coeffs)
    }

    /// `self^e` for `e >= 0`.
    pub fn pow(&self, e: u32) -> QPoly {
        (0..e).fold(QPoly::one(), |acc, _| &acc * self)
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::monomial(c, 0)
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        QPoly::monomial(c, 0)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(mut self) -> QPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -self.clone()
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        self.add_scaled(rhs, false);
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        self.add_scaled(rhs, true);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                let f: fn(&QPoly, &QPoly) -> QPoly = $body;
                f(self, rhs)
            }
        }
        impl $trait<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    let mut out = a.clone();
    out += b;
    out
});
forward_binop!(Sub, sub, |a, b| {
    let mut out = a.clone();
    out -= b;
    out
});
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

/// Ascending exponent order: `1 + 2*q - q^3`, `q^-1 + 1`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let exp = self.min_deg + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (exp, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match exp {
                0 => {}
                1 => f.write_str("q")?,
                e => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct QPolyRepr {
    min_deg: i64,
    coeffs: Vec<String>,
}

/// JSON form `{"min_deg": int, "coeffs": ["decimal", ...]}`.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QPolyRepr {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = QPolyRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(QPoly::from_coeffs(repr.min_deg, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(min_deg: i64, c: &[i64]) -> QPoly {
        QPoly::from_i64s(min_deg, c)
    }

    #[test]
    fn canonical_form_trims_both_ends() {
        let a = p(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(a.min_deg(), Some(0));
        assert_eq!(a.degree(), Some(1));
        assert_eq!(a, p(0, &[1, 2]));
        assert_eq!(p(5, &[0, 0]), QPoly::zero());
        assert_eq!(QPoly::zero().min_deg(), None);
    }

    #[test]
    fn ring_examples() {
        let one_plus_q = p(0, &[1, 1]);
        assert_eq!(&one_plus_q + &QPoly::zero(), one_plus_q);
        assert_eq!(&one_plus_q * &p(0, &[1, -1]), p(0, &[1, 0, -1]));
        assert_eq!(QPoly::monomial(1, 2).shift(-3), QPoly::monomial(1, -1));
        assert_eq!(&one_plus_q - &one_plus_q, QPoly::zero());
    }

    #[test]
    fn exact_div_examples() {
        let one_minus_q2 = p(0, &[1, 0, -1]);
        assert_eq!(
            one_minus_q2.exact_div(&p(0, &[1, 1])).unwrap(),
            p(0, &[1, -1])
        );
        match p(0, &[1, 1, 1]).exact_div(&p(0, &[1, 1])) {
            Err(Error::NotDivisible { remainder }) => assert_eq!(remainder, QPoly::one()),
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        // Laurent operands.
        let a = p(-3, &[2, 2]);
        assert_eq!(
            a.exact_div(&p(-1, &[1, 1])).unwrap(),
            QPoly::monomial(2, -2)
        );
        // Non-monic divisor.
        assert_eq!(p(0, &[2, 4]).exact_div(&p(0, &[2])).unwrap(), p(0, &[1, 2]));
        assert!(p(0, &[1, 4]).exact_div(&p(0, &[2])).is_err());
        assert!(QPoly::one().exact_div(&QPoly::zero()).is_err());
        assert!(QPoly::one().exact_div(&p(0, &[1, 1])).is_err());
    }

    #[test]
    fn display_ascending() {
        assert_eq!(p(0, &[1, 2, 0, 1]).to_string(), "1 + 2*q + q^3");
        assert_eq!(p(-1, &[1, 0, -1]).to_string(), "q^-1 - q");
        assert_eq!(p(0, &[-3]).to_string(), "-3");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p(1, &[-1, 1]).to_string(), "-q + q^2");
    }

    #[test]
    fn unimodality_and_sign() {
        assert!(p(0, &[1, 2, 1]).is_unimodal());
        assert!(!p(0, &[1, 0, 1]).is_unimodal());
        assert!(p(0, &[1, 1, 2, 2, 1]).is_unimodal());
        assert!(QPoly::zero().is_unimodal());
        assert!(p(0, &[1, 2]).is_nonnegative());
        assert!(!p(0, &[1, -2]).is_nonnegative());
    }

    #[test]
    fn json_uses_decimal_strings() {
        let big = QPoly::monomial(BigInt::from(u64::MAX) * 4, -2);
        let json = serde_json::to_string(&big).unwrap();
        assert_eq!(json, r#"{"min_deg":-2,"coeffs":["73786976294838206460"]}"#);
        let back: QPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, big);
        assert_eq!(
            serde_json::to_string(&QPoly::zero()).unwrap(),
            r#"{"min_deg":0,"coeffs":[]}"#
        );
    }

    #[test]
    fn mul_q_int_matches_general_mul() {
        let a = p(-1, &[3, -1, 4, 1, -5]);
        for r in 0..6 {
            assert_eq!(a.mul_q_int(r), &a * &q_int(r));
        }
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        (-4i64..4, prop::collection::vec(-20i64..20, 0..7)).prop_map(|(d, c)| p(d, &c))
    }

    proptest! {
        #[test]
        fn additive_inverse(a in arb_poly()) {
            prop_assert_eq!(&a + &(-&a), QPoly::zero());
        }

        #[test]
        fn mul_commutes(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn shift_roundtrip(a in arb_poly(), k in -10i64..10) {
            prop_assert_eq!(a.shift(k).shift(-k), a);
        }

        #[test]
        fn exact_div_roundtrip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            let c = prod.exact_div(&b).unwrap();
            prop_assert_eq!(&(&b * &c), &prod);
            prop_assert_eq!(c, a);
        }

        #[test]
        fn exact_div_success_means_divisible(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            if let Ok(c) = a.exact_div(&b) {
                prop_assert_eq!(&b * &c, a);
            }
        }
    }
}
