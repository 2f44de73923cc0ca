//! Exact base-field scalars.
//!
//! [`Scalar`] is an arbitrary-precision rational in lowest terms with a
//! positive denominator. [`Fp`] is a small prime field used only by
//! brute-force enumeration oracles; it is not characteristic zero and so
//! the characteristic-zero results do not apply to it.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Fails on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: i32) -> Self {
        Scalar(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// `n!` as a scalar.
    pub fn factorial(n: u64) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= k;
        }
        Scalar(BigRational::from_integer(acc))
    }

    pub fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            return Scalar::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc *= n - i;
            acc /= i + 1;
        }
        Scalar(BigRational::from_integer(acc))
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the numerators (zero if all vanish).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
// Panics on a zero divisor like the integer types; use `checked_div` when
// the divisor is untrusted.
forward_binop!(Div, div, /);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

/// Canonical text form: `n` for integers, `p/q` otherwise.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n`, `-n`, `p/q` and finite decimals such as `-1.25`.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: String::from(msg),
        };
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
            let den: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(Scalar(BigRational::new(num, den)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("bad decimal fraction"));
            }
            let negative = int.starts_with('-');
            let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                digits => digits.parse().map_err(|_| bad("bad integer part"))?,
            };
            let frac_part: BigInt = frac.parse().map_err(|_| bad("bad decimal fraction"))?;
            let scale = num_traits::pow(BigInt::from(10u8), frac.len());
            let mut value = BigRational::new(int_part * &scale + frac_part, scale);
            if negative {
                value = -value;
            }
            return Ok(Scalar(value));
        }
        let n: BigInt = s.parse().map_err(|_| bad("not a number"))?;
        Ok(Scalar(BigRational::from_integer(n)))
    }
}

/// Element of the prime field `F_P`. Oracle use only.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub const fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    pub fn zero() -> Self {
        Fp(0)
    }

    pub fn one() -> Self {
        Fp(1 % P)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        (!self.is_zero()).then(|| self.pow(P - 2))
    }

    /// All field elements in increasing order.
    pub fn elements() -> Vec<Self> {
        (0..P).map(Fp).collect()
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_is_reduced() {
        let x = Scalar::new(6, -4).unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(Scalar::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q("7"), Scalar::from_int(7));
        assert_eq!(q("-10/4"), Scalar::new(-5, 2).unwrap());
        assert_eq!(q("1.25"), Scalar::new(5, 4).unwrap());
        assert_eq!(q("-0.5"), Scalar::new(-1, 2).unwrap());
        assert_eq!(q(".5"), Scalar::new(1, 2).unwrap());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1.".parse::<Scalar>().is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["0", "-3", "22/7", "-1/123456789012345678901234567890"] {
            assert_eq!(q(s).to_string(), s);
        }
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(Scalar::factorial(5), Scalar::from_int(120));
        assert_eq!(Scalar::binomial(6, 2), Scalar::from_int(15));
        assert_eq!(Scalar::binomial(2, 3), Scalar::zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        type F5 = Fp<5>;
        let a = F5::new(3);
        assert_eq!(a * a.inv().unwrap(), F5::one());
        assert_eq!(a + F5::new(4), F5::new(2));
        assert_eq!(-a, F5::new(2));
        assert_eq!(F5::zero().inv(), None);
        assert_eq!(F5::elements().len(), 5);
    }
}
