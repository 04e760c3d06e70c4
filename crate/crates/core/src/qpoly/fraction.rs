use std::ops::{Add, Mul, Neg, Sub};

use super::QPoly;
use crate::error::{domain, Result};

/// Quotient of two [`QPoly`] values. Never reduced; two fractions are equal
/// when their cross products agree.
#[derive(Clone, Debug)]
pub struct PolyFraction {
    num: QPoly,
    den: QPoly,
}

impl PolyFraction {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(domain("fraction with zero denominator"));
        }
        Ok(PolyFraction { num, den })
    }

    pub fn zero() -> Self {
        PolyFraction::from(QPoly::zero())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    /// The polynomial value, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<QPoly> {
        self.num.exact_div(&self.den)
    }
}

impl From<QPoly> for PolyFraction {
    fn from(num: QPoly) -> Self {
        PolyFraction {
            num,
            den: QPoly::one(),
        }
    }
}

impl PartialEq for PolyFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for PolyFraction {}

impl Add for &PolyFraction {
    type Output = PolyFraction;
    fn add(self, rhs: &PolyFraction) -> PolyFraction {
        if self.den == rhs.den {
            return PolyFraction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        PolyFraction {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl Neg for &PolyFraction {
    type Output = PolyFraction;
    fn neg(self) -> PolyFraction {
        PolyFraction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &PolyFraction {
    type Output = PolyFraction;
    fn sub(self, rhs: &PolyFraction) -> PolyFraction {
        self + &(-rhs)
    }
}

impl Mul for &PolyFraction {
    type Output = PolyFraction;
    fn mul(self, rhs: &PolyFraction) -> PolyFraction {
        PolyFraction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}
