//! Exact arithmetic in the real quadratic field Q(sqrt 5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::Error;

/// `rat + irr * sqrt(5)` with rational coefficients.
///
/// The representation is unique, so derived equality and hashing are the
/// field's equality. Ordering is the order of the real embedding where
/// `sqrt(5) > 0`, decided without floating point.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenNumber {
    pub rat: Rational,
    pub irr: Rational,
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl GoldenNumber {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        GoldenNumber { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        GoldenNumber::new(rational(n, 1), Rational::zero())
    }

    pub fn from_rational(q: Rational) -> Self {
        GoldenNumber::new(q, Rational::zero())
    }

    /// `a/d + (b/d) sqrt 5`.
    pub fn from_parts(a: i64, b: i64, d: i64) -> Self {
        GoldenNumber::new(rational(a, d), rational(b, d))
    }

    pub fn sqrt5() -> Self {
        GoldenNumber::new(Rational::zero(), Rational::one())
    }

    /// The golden ratio `(1 + sqrt 5) / 2`.
    pub fn phi() -> Self {
        GoldenNumber::from_parts(1, 1, 2)
    }

    pub fn zero() -> Self {
        GoldenNumber::default()
    }

    pub fn one() -> Self {
        GoldenNumber::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Galois conjugate `sqrt 5 -> -sqrt 5`.
    pub fn conjugate(&self) -> Self {
        GoldenNumber::new(self.rat.clone(), -self.irr.clone())
    }

    /// Field norm `rat^2 - 5 irr^2`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - rational(5, 1) * &self.irr * &self.irr
    }

    pub fn trace(&self) -> Rational {
        &self.rat + &self.rat
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(GoldenNumber::new(c.rat / &n, c.irr / n))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self * &other.inverse()?)
    }

    /// -1, 0 or 1 according to the real value.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.irr);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with 5 b^2
        let a2 = &self.rat * &self.rat;
        let b2 = rational(5, 1) * &self.irr * &self.irr;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Integer value, if this number is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_rational() && self.rat.is_integer() {
            Some(self.rat.to_integer())
        } else {
            None
        }
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, o: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.rat + &o.rat, &self.irr + &o.irr)
    }
}

impl<'a> Sub<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, o: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.rat - &o.rat, &self.irr - &o.irr)
    }
}

impl<'a> Mul<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, o: &GoldenNumber) -> GoldenNumber {
        let five = rational(5, 1);
        GoldenNumber::new(&self.rat * &o.rat + five * &self.irr * &o.irr, &self.rat * &o.irr + &self.irr * &o.rat)
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-self.rat.clone(), -self.irr.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, o: GoldenNumber) -> GoldenNumber {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt5", self.irr)
        } else {
            write!(f, "{}{}{}*sqrt5", self.rat, if self.irr.is_negative() { "" } else { "+" }, self.irr)
        }
    }
}

/// Wire form: both coefficients as `"p/q"` strings.
#[derive(Serialize, Deserialize)]
struct GoldenWire {
    rat: String,
    irr: String,
}

impl Serialize for GoldenNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GoldenWire { rat: self.rat.to_string(), irr: self.irr.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = GoldenWire::deserialize(d)?;
        let rat = w.rat.parse::<Rational>().map_err(serde::de::Error::custom)?;
        let irr = w.irr.parse::<Rational>().map_err(serde::de::Error::custom)?;
        Ok(GoldenNumber::new(rat, irr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(a: i64, b: i64, d: i64) -> GoldenNumber {
        GoldenNumber::from_parts(a, b, d)
    }

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let phi = GoldenNumber::phi();
        assert_eq!(&phi * &phi, &phi + &GoldenNumber::one());
    }

    #[test]
    fn sqrt5_squared() {
        let s = GoldenNumber::sqrt5();
        assert_eq!(&s * &s, GoldenNumber::from_int(5));
    }

    #[test]
    fn inverse_of_phi() {
        // (1/2 + 1/2 s)(x + y s) = 1  <=>  x/2 + 5y/2 = 1, x/2 + y/2 = 0  =>  y = 1/2, x = -1/2
        let expected = g(-1, 1, 2);
        assert_eq!(GoldenNumber::phi().inverse().unwrap(), expected);
        assert_eq!(expected, &GoldenNumber::phi() - &GoldenNumber::one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(GoldenNumber::zero().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sign_logic() {
        assert_eq!(g(-2, 1, 1).signum(), 1); // sqrt5 - 2 > 0
        assert_eq!(g(3, -1, 1).signum(), 1); // 3 - sqrt5 > 0
        assert_eq!(g(2, -1, 1).signum(), -1);
        assert_eq!(g(-3, 1, 1).signum(), -1);
        assert_eq!(g(0, 0, 1).signum(), 0);
        assert!(GoldenNumber::phi() > GoldenNumber::one());
        assert!(GoldenNumber::phi().conjugate() < GoldenNumber::zero());
    }

    #[test]
    fn serde_roundtrip() {
        let x = g(-3, 7, 4);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"rat":"-3/4","irr":"7/4"}"#);
        let y: GoldenNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    fn arb() -> impl Strategy<Value = GoldenNumber> {
        (-20i64..20, -20i64..20, 1i64..7).prop_map(|(a, b, d)| g(a, b, d))
    }

    proptest! {
        #[test]
        fn conjugation_is_ring_automorphism(x in arb(), y in arb()) {
            prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
            prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        }

        #[test]
        fn inverse_is_inverse(x in arb()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), GoldenNumber::one());
        }

        #[test]
        fn sign_is_multiplicative(x in arb(), y in arb()) {
            prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        }
    }
}
