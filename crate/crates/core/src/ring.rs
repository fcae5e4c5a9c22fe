//! Residue rings `Z/8` and `Z/16` as small value types.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

macro_rules! residue_ring {
    ($name:ident, $modulus:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
        pub struct $name(u8);

        impl $name {
            pub const MODULUS: u8 = $modulus;
            pub const ZERO: Self = Self(0);
            pub const ONE: Self = Self(1);

            /// Canonical residue of an arbitrary integer.
            pub fn new(value: i64) -> Self {
                Self(value.rem_euclid($modulus as i64) as u8)
            }

            /// Canonical representative in `0..MODULUS`.
            pub fn value(self) -> u8 {
                self.0
            }

            pub fn is_zero(self) -> bool {
                self.0 == 0
            }

            pub fn is_unit(self) -> bool {
                self.0 % 2 == 1
            }

            /// Largest `k` with `2^k` dividing the residue (`log2(MODULUS)` for zero).
            pub fn two_adic_valuation(self) -> u32 {
                if self.0 == 0 {
                    Self::MODULUS.trailing_zeros()
                } else {
                    self.0.trailing_zeros()
                }
            }

            /// Multiplicative inverse of a unit.
            pub fn inverse(self) -> Option<Self> {
                (1..$modulus).map(Self).find(|&y| (self * y).0 == 1)
            }

            /// Signed representative in `(-MODULUS/2, MODULUS/2]`.
            pub fn signed(self) -> i64 {
                let v = self.0 as i64;
                if v > ($modulus as i64) / 2 {
                    v - $modulus as i64
                } else {
                    v
                }
            }
        }

        impl From<i64> for $name {
            fn from(v: i64) -> Self {
                Self::new(v)
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                Self((self.0 + rhs.0) % $modulus)
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                Self((self.0 + $modulus - rhs.0) % $modulus)
            }
        }

        impl Neg for $name {
            type Output = Self;
            fn neg(self) -> Self {
                Self(($modulus - self.0) % $modulus)
            }
        }

        impl Mul for $name {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                Self(((self.0 as u16 * rhs.0 as u16) % $modulus as u16) as u8)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: Self) {
                *self = *self + rhs;
            }
        }

        impl SubAssign for $name {
            fn sub_assign(&mut self, rhs: Self) {
                *self = *self - rhs;
            }
        }

        impl MulAssign for $name {
            fn mul_assign(&mut self, rhs: Self) {
                *self = *self * rhs;
            }
        }

        impl core::iter::Sum for $name {
            fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
                iter.fold(Self::ZERO, |a, b| a + b)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

residue_ring!(
    Z8,
    8,
    "An element of `Z/8`, stored as its residue in `0..8`."
);
residue_ring!(
    Z16,
    16,
    "An element of `Z/16`, stored as its residue in `0..16`."
);

/// `(-1)^bit` as an element of `Z/8`.
pub fn sign_z8(bit: bool) -> Z8 {
    if bit {
        -Z8::ONE
    } else {
        Z8::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_are_canonical() {
        assert_eq!(Z8::new(-1).value(), 7);
        assert_eq!(Z16::new(-1).value(), 15);
        assert_eq!(Z8::new(17), Z8::new(1));
        assert_eq!(Z8::new(7).signed(), -1);
        assert_eq!(Z8::new(4).signed(), 4);
    }

    #[test]
    fn valuations_and_inverses() {
        assert_eq!(Z8::new(4).two_adic_valuation(), 2);
        assert_eq!(Z8::ZERO.two_adic_valuation(), 3);
        assert_eq!(Z8::new(6).two_adic_valuation(), 1);
        for u in [1, 3, 5, 7] {
            let x = Z8::new(u);
            assert_eq!(x * x.inverse().unwrap(), Z8::ONE);
        }
        assert!(Z8::new(2).inverse().is_none());
    }

    #[test]
    fn ring_laws_exhaustive() {
        for a in 0..8 {
            for b in 0..8 {
                let (x, y) = (Z8::new(a), Z8::new(b));
                assert_eq!((x + y).value() as i64, (a + b) % 8);
                assert_eq!((x * y).value() as i64, (a * b) % 8);
                assert_eq!(x - y + y, x);
                assert_eq!(x + (-x), Z8::ZERO);
            }
        }
    }
}
