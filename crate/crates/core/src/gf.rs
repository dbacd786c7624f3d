//! Exact arithmetic over prime fields GF(p) and the linear-algebra
//! primitives built on it: matrices with canonical row reduction and
//! projective flats with point enumeration.

mod flat;
mod matrix;

pub use flat::Flat;
pub use matrix::{FieldMatrix, Rref};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest modulus accepted by [`PrimeField::new`].
pub const MAX_MODULUS: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} exceeds the supported cap 2^16")]
    ModulusTooLarge(u32),
    #[error("cannot invert zero")]
    InversionOfZero,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// A validated prime modulus. All field elements and matrices carry the
/// modulus of the field they belong to; mixing moduli is a programming
/// error and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, GfError> {
        if p > MAX_MODULUS {
            return Err(GfError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Embed an integer, reducing mod p.
    pub fn elem(self, value: i64) -> FieldElement {
        let v = value.rem_euclid(self.p as i64) as u32;
        FieldElement { value: v, p: self.p }
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { value: 0, p: self.p }
    }

    pub fn one(self) -> FieldElement {
        self.elem(1)
    }

    /// All nonzero elements, in value order.
    pub fn nonzero(self) -> impl Iterator<Item = FieldElement> {
        let p = self.p;
        (1..p).map(move |v| FieldElement { value: v, p })
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = GfError;
    fn try_from(p: u32) -> Result<Self, GfError> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

/// A residue in GF(p). Arithmetic panics on modulus mismatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self) -> Result<FieldElement, GfError> {
        if self.value == 0 {
            return Err(GfError::InversionOfZero);
        }
        let (mut r0, mut r1) = (self.p as i64, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        Ok(self.field().elem(t0))
    }

    fn same_field(self, other: FieldElement) {
        assert_eq!(self.p, other.p, "mixed field moduli {} and {}", self.p, other.p);
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.same_field(rhs);
        FieldElement { value: (self.value + rhs.value) % self.p, p: self.p }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.same_field(rhs);
        FieldElement { value: (self.value + self.p - rhs.value) % self.p, p: self.p }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.same_field(rhs);
        let v = (self.value as u64 * rhs.value as u64) % self.p as u64;
        FieldElement { value: v as u32, p: self.p }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: (self.p - self.value) % self.p, p: self.p }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_construction_rejects_composites() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert_eq!(PrimeField::new(1), Err(GfError::NotPrime(1)));
        assert_eq!(PrimeField::new(4), Err(GfError::NotPrime(4)));
        assert_eq!(PrimeField::new(91), Err(GfError::NotPrime(91)));
        assert!(matches!(PrimeField::new(1 << 17), Err(GfError::ModulusTooLarge(_))));
    }

    #[test]
    fn inverse_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.elem(3).inv().unwrap(), f5.elem(2));
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.elem(1).inv().unwrap(), f2.elem(1));
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.elem(4).inv().unwrap(), f7.elem(2));
        assert_eq!(f7.zero().inv(), Err(GfError::InversionOfZero));
    }

    proptest! {
        #[test]
        fn field_axioms(p in prop::sample::select(vec![2u32, 3, 5, 7]),
                        a in 0i64..7, b in 0i64..7, c in 0i64..7) {
            let f = PrimeField::new(p).unwrap();
            let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a + (-a), f.zero());
            prop_assert_eq!(a - b, a + (-b));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), f.one());
            }
        }
    }
}
