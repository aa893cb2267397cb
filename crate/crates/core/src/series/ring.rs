use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::SeriesError;

/// A modulus `m >= 2` for the ring of integers mod `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self, SeriesError> {
        if m < 2 {
            return Err(SeriesError::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// True when every product of two residues fits in a `u64`.
    #[inline]
    pub(crate) fn is_small(self) -> bool {
        self.0 <= 1 << 32
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.0 {
            s.wrapping_sub(self.0)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.is_small() {
            (a * b) % self.0
        } else {
            ((a as u128 * b as u128) % self.0 as u128) as u64
        }
    }

    pub fn reduce_i64(self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }

    pub fn reduce_bigint(self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.0);
        v.mod_floor(&m).to_u64().expect("residue below a u64 modulus")
    }

    /// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
    pub fn inverse(self, a: u64) -> Option<u64> {
        let m = self.0 as i128;
        let (mut old_r, mut r) = ((a as i128).rem_euclid(m), m);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(old_s.rem_euclid(m) as u64)
    }

    /// Number of `(m-1)^2`-sized products that can be summed on top of a
    /// reduced residue without overflowing a `u64`.
    pub(crate) fn lazy_batch(self) -> u64 {
        debug_assert!(self.is_small());
        let sq = (self.0 - 1) * (self.0 - 1);
        (u64::MAX - self.0).checked_div(sq).map_or(u64::MAX, |b| b.max(1))
    }
}

impl TryFrom<u64> for Modulus {
    type Error = SeriesError;
    fn try_from(m: u64) -> Result<Self, Self::Error> {
        Modulus::new(m)
    }
}

impl From<Modulus> for u64 {
    fn from(m: Modulus) -> u64 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Coefficient ring of a truncated series: exact integers or `Z/mZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    Exact,
    Mod(Modulus),
}

impl CoefficientRing {
    pub fn modulo(m: u64) -> Result<Self, SeriesError> {
        Ok(CoefficientRing::Mod(Modulus::new(m)?))
    }

    pub fn modulus(&self) -> Option<Modulus> {
        match self {
            CoefficientRing::Exact => None,
            CoefficientRing::Mod(m) => Some(*m),
        }
    }

    /// Whether `v` is invertible in this ring.
    pub fn is_unit(&self, v: &BigInt) -> bool {
        match self {
            CoefficientRing::Exact => v.abs() == BigInt::from(1),
            CoefficientRing::Mod(m) => m.inverse(m.reduce_bigint(v)).is_some(),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Exact => write!(f, "exact"),
            CoefficientRing::Mod(m) => write!(f, "mod {m}"),
        }
    }
}
