use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{IntMat, JsonInt};
use crate::{Error, Result};

/// An element of `SL_2(Z)`; the determinant is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SL2Mat {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl SL2Mat {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<SL2Mat> {
        let m = SL2Mat { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        if !m.det().is_one() {
            return Err(Error::InvalidArgument(format!("determinant of {m} is {}", m.det())));
        }
        Ok(m)
    }

    fn raw(a: i64, b: i64, c: i64, d: i64) -> SL2Mat {
        SL2Mat { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> SL2Mat {
        SL2Mat::raw(1, 0, 0, 1)
    }

    /// `[[1, 1], [0, 1]]`.
    pub fn t() -> SL2Mat {
        SL2Mat::raw(1, 1, 0, 1)
    }

    /// `[[0, -1], [1, 0]]`.
    pub fn s() -> SL2Mat {
        SL2Mat::raw(0, -1, 1, 0)
    }

    /// `T' = [[1, 0], [-1, 1]]`.
    pub fn t_prime() -> SL2Mat {
        SL2Mat::raw(1, 0, -1, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn inverse(&self) -> SL2Mat {
        SL2Mat { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> SL2Mat {
        SL2Mat { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn pow(&self, k: i64) -> SL2Mat {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(SL2Mat::identity(), |acc, _| &acc * &base)
    }

    pub fn is_identity(&self) -> bool {
        *self == SL2Mat::identity()
    }

    /// Equal up to sign: `Some(1)` or `Some(-1)`.
    pub fn sign_relative_to(&self, other: &SL2Mat) -> Option<i64> {
        if self == other {
            Some(1)
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Entries reduced into `0..n`.
    pub fn reduce(&self, n: u32) -> [u32; 4] {
        let n = BigInt::from(n);
        let r = |x: &BigInt| u32::try_from(x.mod_floor(&n)).expect("reduced entry");
        [r(&self.a), r(&self.b), r(&self.c), r(&self.d)]
    }

    /// Projective image of the rational point `p/q` (`q = 0` is infinity), in lowest terms.
    pub fn act_on_cusp(&self, p: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
        let (np, nq) = (&self.a * p + &self.b * q, &self.c * p + &self.d * q);
        normalize_cusp(np, nq)
    }

    pub fn to_rows(&self) -> [[BigInt; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }

    pub fn from_intmat(m: &IntMat) -> Result<SL2Mat> {
        if m.shape() != (2, 2) {
            return Err(Error::InvalidArgument("not a 2 × 2 matrix".into()));
        }
        SL2Mat::new(m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 0).clone(), m.get(1, 1).clone())
    }
}

/// `p/q` with `gcd = 1` and `q > 0`, or `(1, 0)` for infinity.
pub fn normalize_cusp(p: BigInt, q: BigInt) -> (BigInt, BigInt) {
    if q.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    let g = p.gcd(&q);
    let (mut p, mut q) = (p / &g, q / &g);
    if q < BigInt::zero() {
        p = -p;
        q = -q;
    }
    (p, q)
}

impl Mul for &SL2Mat {
    type Output = SL2Mat;
    fn mul(self, o: &SL2Mat) -> SL2Mat {
        SL2Mat {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for SL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for SL2Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = [[JsonInt(&self.a), JsonInt(&self.b)], [JsonInt(&self.c), JsonInt(&self.d)]];
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_sl2() -> impl Strategy<Value = SL2Mat> {
        proptest::collection::vec(prop_oneof![Just(0usize), Just(1), Just(2), Just(3)], 0..12).prop_map(|w| {
            let gens = [SL2Mat::t(), SL2Mat::t().inverse(), SL2Mat::s(), SL2Mat::t_prime()];
            w.iter().fold(SL2Mat::identity(), |acc, &i| &acc * &gens[i])
        })
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(SL2Mat::new(1, 1, 1, 1).is_err());
        assert!(SL2Mat::new(2, 3, 1, 2).is_ok());
    }

    #[test]
    fn standard_relations() {
        let (s, t) = (SL2Mat::s(), SL2Mat::t());
        assert!(s.pow(4).is_identity());
        assert!((&s * &t).pow(6).is_identity());
        assert_eq!(&s.pow(2) * &t, &t * &s.pow(2));
        assert_eq!(SL2Mat::t_prime(), &(&s * &t) * &s.inverse());
    }

    #[test]
    fn cusp_action() {
        let (p, q) = SL2Mat::s().act_on_cusp(&BigInt::one(), &BigInt::zero());
        assert_eq!((p, q), (BigInt::zero(), BigInt::one()));
    }

    proptest! {
        #[test]
        fn products_stay_in_sl2(a in arb_sl2(), b in arb_sl2()) {
            prop_assert!((&a * &b).det().is_one());
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert_eq!(&(&a * &b).inverse(), &(&b.inverse() * &a.inverse()));
        }
    }
}
