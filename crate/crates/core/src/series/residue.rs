use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::{LaurentPoly, TruncSeries, Valuation};

/// An element of `O_K / (t^e)`, stored as its canonical representative
/// with support in `[0, e)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueClass {
    modulus_exponent: u32,
    rep: LaurentPoly,
}

impl ResidueClass {
    /// Reduction of an exact element of `O_K` modulo `t^e`.
    pub fn of_poly(a: &LaurentPoly, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::Precondition(
                "modulus exponent must be at least 1".into(),
            ));
        }
        if let Valuation::Finite(v) = a.ord_t() {
            if v < 0 {
                return Err(Error::NegativeValuation { ord: v });
            }
        }
        Ok(ResidueClass {
            modulus_exponent: e,
            rep: a.truncate_below(e as i64),
        })
    }

    /// Reduction of a truncated series; it must be known at least to `t^e`.
    pub fn of_series(a: &TruncSeries, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::Precondition(
                "modulus exponent must be at least 1".into(),
            ));
        }
        if a.prec() < e as i64 {
            return Err(Error::InsufficientPrecision {
                needed: e as i64,
                available: a.prec(),
            });
        }
        let v = a.valuation_floor();
        if v < 0 {
            return Err(Error::NegativeValuation { ord: v });
        }
        ResidueClass::of_poly(&a.known_part(), e)
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.modulus_exponent
    }

    pub fn rep(&self) -> &LaurentPoly {
        &self.rep
    }

    fn check_same(&self, other: &ResidueClass) {
        assert_eq!(
            self.modulus_exponent, other.modulus_exponent,
            "residue classes modulo different powers of t"
        );
    }
}

impl Add for &ResidueClass {
    type Output = ResidueClass;
    fn add(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_same(rhs);
        ResidueClass {
            modulus_exponent: self.modulus_exponent,
            rep: &self.rep + &rhs.rep,
        }
    }
}

impl Sub for &ResidueClass {
    type Output = ResidueClass;
    fn sub(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_same(rhs);
        ResidueClass {
            modulus_exponent: self.modulus_exponent,
            rep: &self.rep - &rhs.rep,
        }
    }
}

impl Mul for &ResidueClass {
    type Output = ResidueClass;
    fn mul(self, rhs: &ResidueClass) -> ResidueClass {
        self.check_same(rhs);
        let rep = (&self.rep * &rhs.rep).truncate_below(self.modulus_exponent as i64);
        ResidueClass {
            modulus_exponent: self.modulus_exponent,
            rep,
        }
    }
}

impl Neg for &ResidueClass {
    type Output = ResidueClass;
    fn neg(self) -> ResidueClass {
        ResidueClass {
            modulus_exponent: self.modulus_exponent,
            rep: -&self.rep,
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod t^{}", self.rep, self.modulus_exponent)
    }
}
