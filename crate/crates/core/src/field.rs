//! Arithmetic in the prime fields GF(p), p in {2, 3, 5, 7}.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Characteristics accepted by presentations.
pub const SUPPORTED_PRIMES: [u8; 4] = [2, 3, 5, 7];

/// A residue `value mod p`. The modulus lives in the [`PrimeField`] that
/// produced it; scalars from different fields must not be mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Scalar(pub(crate) u8);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        match u8::try_from(p) {
            Ok(p) if SUPPORTED_PRIMES.contains(&p) => Ok(PrimeField { p }),
            _ => Err(Error::UnsupportedCharacteristic(p)),
        }
    }

    pub fn characteristic(self) -> u8 {
        self.p
    }

    /// Reduces an arbitrary integer into the field.
    pub fn scalar(self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.p as i64) as u8)
    }

    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar((a.0 + b.0) % self.p)
    }

    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar((a.0 + self.p - b.0) % self.p)
    }

    pub fn neg(self, a: Scalar) -> Scalar {
        Scalar((self.p - a.0) % self.p)
    }

    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(((a.0 as u16 * b.0 as u16) % self.p as u16) as u8)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        // Fermat: a^(p-2)
        let mut acc = Scalar::ONE;
        for _ in 0..self.p - 2 {
            acc = self.mul(acc, a);
        }
        Some(acc)
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.p).map(Scalar)
    }

    /// Nonzero field elements in increasing order.
    pub fn units(self) -> impl Iterator<Item = Scalar> {
        (1..self.p).map(Scalar)
    }

    /// Signed representative in `(-p/2, p/2]`, used when printing.
    pub fn signed(self, a: Scalar) -> i64 {
        let v = a.0 as i64;
        if 2 * v > self.p as i64 {
            v - self.p as i64
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large_primes() {
        for p in [0, 1, 4, 6, 8, 9, 11, 256] {
            assert!(PrimeField::new(p).is_err(), "p = {p}");
        }
    }

    #[test]
    fn inverses_are_exact() {
        for p in SUPPORTED_PRIMES {
            let k = PrimeField::new(p as u64).unwrap();
            for a in k.units() {
                let inv = k.inv(a).unwrap();
                assert_eq!(k.mul(a, inv), Scalar::ONE);
                assert_eq!(k.add(a, k.neg(a)), Scalar::ZERO);
            }
            assert_eq!(k.inv(Scalar::ZERO), None);
        }
    }

    #[test]
    fn minus_one_collapses_in_characteristic_two() {
        let k = PrimeField::new(2).unwrap();
        assert_eq!(k.scalar(-1), Scalar::ONE);
        assert_eq!(k.scalar(-4), Scalar::ZERO);
    }

    #[test]
    fn signed_representatives() {
        let k = PrimeField::new(5).unwrap();
        assert_eq!(k.signed(k.scalar(4)), -1);
        assert_eq!(k.signed(k.scalar(2)), 2);
        assert_eq!(k.signed(k.scalar(3)), -2);
    }
}
