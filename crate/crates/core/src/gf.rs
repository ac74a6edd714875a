//! Arithmetic in a prime field `F_p`.
//!
//! Elements are stored as canonical residues in `[0, p)`. Containers such as
//! [`Poly`](crate::poly::Poly) and [`Matrix`](crate::linalg::Matrix) keep raw
//! `u32` residues next to a [`PrimeField`] handle; [`FieldElement`] is the
//! self-describing scalar used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field `F_p` with `2 < p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(u64::from(p))
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p >= 1 << 16 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces a signed integer to its canonical residue.
    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            p: self.p,
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^(p-2)`.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, u64::from(self.p) - 2))
    }

    /// Multiplicative order of a nonzero residue; always divides `p - 1`.
    pub fn order(&self, a: u32) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroOrder);
        }
        let n = u64::from(self.p) - 1;
        Ok((1..=n)
            .filter(|d| n % d == 0)
            .find(|&d| self.pow(a, d) == 1)
            .expect("a^(p-1) = 1"))
    }

    /// The smallest `w` (as an integer) with `w^k = gamma` and multiplicative order
    /// `r*k`, where `r` is the order of `gamma`.
    pub fn find_root(&self, k: u64, gamma: u32) -> Result<u32> {
        let r = self.order(gamma)?;
        let rk = r * k;
        if k == 0 || (u64::from(self.p) - 1) % rk != 0 {
            return Err(Error::MissingRootOfUnity { r, k, p: self.p });
        }
        (1..self.p)
            .find(|&w| self.pow(w, k) == gamma && self.order(w) == Ok(rk))
            .ok_or(Error::MissingRootOfUnity { r, k, p: self.p })
    }

    /// Whether `a` is `1` or `-1`.
    pub fn is_unit_sign(&self, a: u32) -> bool {
        a == 1 || a == self.p - 1
    }

    /// Signed representative in `(-p/2, p/2]`, used only for display.
    pub fn signed(&self, a: u32) -> i64 {
        let a = i64::from(a);
        let p = i64::from(self.p);
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

/// A residue tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn new(field: PrimeField, v: i64) -> Self {
        field.element(v)
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<PrimeField> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(self.field())
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        let f = self.check(&rhs)?;
        Ok(FieldElement {
            value: f.add(self.value, rhs.value),
            p: self.p,
        })
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        let f = self.check(&rhs)?;
        Ok(FieldElement {
            value: f.sub(self.value, rhs.value),
            p: self.p,
        })
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        let f = self.check(&rhs)?;
        Ok(FieldElement {
            value: f.mul(self.value, rhs.value),
            p: self.p,
        })
    }

    pub fn inv(self) -> Result<Self> {
        Ok(FieldElement {
            value: self.field().inv(self.value)?,
            p: self.p,
        })
    }

    pub fn pow(self, e: u64) -> Self {
        FieldElement {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }

    pub fn order(self) -> Result<u64> {
        self.field().order(self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator impls panic on mismatched fields, like shape mismatches in
// matrix libraries; use the `try_*` methods to get an error instead.
macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;

            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$try(rhs).expect("operands from different fields")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        FieldElement {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 2, 4, 9, 65536, 65537, 100_003] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = f(5);
        let f7 = f(7);
        assert_eq!((f5.element(2) + f5.element(4)).value(), 1);
        assert_eq!((f7.element(3) * f7.element(5)).value(), 1);
        assert_eq!((f5.element(0) - f5.element(1)).value(), 4);
        assert_eq!(
            f5.element(1).try_add(f7.element(1)),
            Err(Error::FieldMismatch { left: 5, right: 7 })
        );
    }

    #[test]
    fn mul_matches_table() {
        // exhaustive table for F_7 against plain integer arithmetic
        let f7 = f(7);
        for a in 0..7u32 {
            for b in 0..7u32 {
                assert_eq!(f7.mul(a, b), (a * b) % 7);
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(f(7).inv(3), Ok(5));
        assert_eq!(f(5).inv(2), Ok(3));
        assert_eq!(f(13).inv(1), Ok(1));
        assert_eq!(f(5).inv(0), Err(Error::DivisionByZero));
        for p in [3, 5, 7, 11, 13, 31] {
            let fp = f(p);
            for a in 1..p as u32 {
                let by_search = (1..p as u32).find(|x| (a * x) % p as u32 == 1).unwrap();
                assert_eq!(fp.inv(a).unwrap(), by_search);
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(f(5).order(4), Ok(2));
        assert_eq!(f(7).order(2), Ok(3));
        assert_eq!(f(11).order(1), Ok(1));
        assert_eq!(f(7).order(0), Err(Error::ZeroOrder));
        for p in [5, 7, 11, 13] {
            let fp = f(p);
            for a in 1..p as u32 {
                let ord = fp.order(a).unwrap();
                assert_eq!(fp.pow(a, ord), 1);
                assert!((1..ord).all(|t| fp.pow(a, t) != 1));
                assert_eq!((p - 1) % ord, 0);
            }
        }
    }

    #[test]
    fn roots() {
        assert_eq!(f(5).find_root(2, 4), Ok(2));
        assert_eq!(f(7).find_root(3, 6), Ok(3));
        assert_eq!(f(7).find_root(2, 2), Ok(3));
        assert_eq!(
            f(5).find_root(3, 1),
            Err(Error::MissingRootOfUnity { r: 1, k: 3, p: 5 })
        );
    }

    #[test]
    fn roots_satisfy_definition() {
        for p in [5u64, 7, 11, 13, 17] {
            let fp = f(p);
            for gamma in 1..p as u32 {
                for k in 1..=8u64 {
                    let r = fp.order(gamma).unwrap();
                    match fp.find_root(k, gamma) {
                        Ok(w) => {
                            assert_eq!(fp.pow(w, k), gamma);
                            assert_eq!(fp.order(w).unwrap(), r * k);
                            // minimality
                            assert!((1..w)
                                .all(|v| fp.pow(v, k) != gamma || fp.order(v).unwrap() != r * k));
                        }
                        Err(_) => assert_ne!((p - 1) % (r * k), 0),
                    }
                }
            }
        }
    }

    #[test]
    fn signed_display() {
        let f7 = f(7);
        assert_eq!(f7.signed(6), -1);
        assert_eq!(f7.signed(3), 3);
        assert_eq!(f7.signed(4), -3);
    }
}
