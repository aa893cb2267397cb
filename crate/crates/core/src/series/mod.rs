//! Truncated formal power series in `q` over `Z` or `Z/mZ`.
//!
//! A [`TruncatedSeries`] of order `T` stores the coefficients of
//! `q^0 .. q^{T-1}`. Binary operations return the smaller of the two
//! operand orders, so no coefficient is ever reported that was not fully
//! determined by the inputs.

mod kernel;
pub mod ops;
mod ring;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use ops::{
    add, dissect, invert, mul, mul_sifted, neg, polynomial, pow, pow_by_squaring, reduce_mod, scale,
    shift, sub, subst_qk,
};
pub use ring::{CoefficientRing, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch {
        left: CoefficientRing,
        right: CoefficientRing,
    },
    #[error("constant term {value} is not a unit in the {ring} ring")]
    NonUnit { ring: CoefficientRing, value: String },
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Coeffs {
    Exact(Vec<BigInt>),
    Mod(Vec<u64>),
}

/// Coefficients of `q^0 .. q^{T-1}` of a formal power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ring: CoefficientRing,
    coeffs: Coeffs,
}

impl TruncatedSeries {
    pub fn zero(ring: CoefficientRing, order: usize) -> Self {
        let coeffs = match ring {
            CoefficientRing::Exact => Coeffs::Exact(vec![BigInt::zero(); order]),
            CoefficientRing::Mod(_) => Coeffs::Mod(vec![0; order]),
        };
        TruncatedSeries { ring, coeffs }
    }

    pub fn one(ring: CoefficientRing, order: usize) -> Self {
        Self::monomial(ring, order, 0, &BigInt::one())
    }

    /// The series `c * q^power`, truncated at `order`.
    pub fn monomial(ring: CoefficientRing, order: usize, power: usize, c: &BigInt) -> Self {
        let mut s = Self::zero(ring, order);
        if power < order {
            s.set(power, c);
        }
        s
    }

    pub fn from_i64s(ring: CoefficientRing, values: &[i64]) -> Self {
        let coeffs = match ring {
            CoefficientRing::Exact => {
                Coeffs::Exact(values.iter().map(|&v| BigInt::from(v)).collect())
            }
            CoefficientRing::Mod(m) => Coeffs::Mod(values.iter().map(|&v| m.reduce_i64(v)).collect()),
        };
        TruncatedSeries { ring, coeffs }
    }

    pub fn from_bigints(ring: CoefficientRing, values: Vec<BigInt>) -> Self {
        let coeffs = match ring {
            CoefficientRing::Exact => Coeffs::Exact(values),
            CoefficientRing::Mod(m) => {
                Coeffs::Mod(values.iter().map(|v| m.reduce_bigint(v)).collect())
            }
        };
        TruncatedSeries { ring, coeffs }
    }

    /// Builds a series from residues that are already reduced mod `m`.
    pub(crate) fn from_residues(m: Modulus, values: Vec<u64>) -> Self {
        debug_assert!(values.iter().all(|&v| v < m.get()));
        TruncatedSeries {
            ring: CoefficientRing::Mod(m),
            coeffs: Coeffs::Mod(values),
        }
    }

    pub(crate) fn from_coeffs(ring: CoefficientRing, coeffs: Coeffs) -> Self {
        TruncatedSeries { ring, coeffs }
    }

    pub(crate) fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub(crate) fn into_coeffs(self) -> Coeffs {
        self.coeffs
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    /// Number of stored coefficients.
    pub fn order(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(v) => v.len(),
            Coeffs::Mod(v) => v.len(),
        }
    }

    /// Coefficient of `q^n` as an integer (the least nonnegative residue in
    /// `Mod` mode). Panics if `n >= order`.
    pub fn coeff(&self, n: usize) -> BigInt {
        match &self.coeffs {
            Coeffs::Exact(v) => v[n].clone(),
            Coeffs::Mod(v) => BigInt::from(v[n]),
        }
    }

    pub fn coeff_i64(&self, n: usize) -> Option<i64> {
        match &self.coeffs {
            Coeffs::Exact(v) => v[n].to_i64(),
            Coeffs::Mod(v) => v[n].to_i64(),
        }
    }

    pub fn is_zero_at(&self, n: usize) -> bool {
        match &self.coeffs {
            Coeffs::Exact(v) => v[n].is_zero(),
            Coeffs::Mod(v) => v[n] == 0,
        }
    }

    pub fn exact_coeffs(&self) -> Option<&[BigInt]> {
        match &self.coeffs {
            Coeffs::Exact(v) => Some(v),
            Coeffs::Mod(_) => None,
        }
    }

    pub fn residues(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Exact(_) => None,
            Coeffs::Mod(v) => Some(v),
        }
    }

    /// All coefficients as decimal strings.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        (0..self.order()).map(|n| self.coeff(n).to_string()).collect()
    }

    pub(crate) fn set(&mut self, n: usize, c: &BigInt) {
        match (&mut self.coeffs, self.ring) {
            (Coeffs::Exact(v), _) => v[n] = c.clone(),
            (Coeffs::Mod(v), CoefficientRing::Mod(m)) => v[n] = m.reduce_bigint(c),
            _ => unreachable!("ring and coefficient storage disagree"),
        }
    }

    /// Keeps the first `order` coefficients. Panics if `order` exceeds the
    /// current order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        let coeffs = match &self.coeffs {
            Coeffs::Exact(v) => Coeffs::Exact(v[..order].to_vec()),
            Coeffs::Mod(v) => Coeffs::Mod(v[..order].to_vec()),
        };
        TruncatedSeries {
            ring: self.ring,
            coeffs,
        }
    }

    /// Indices of nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..self.order()).filter(|&n| !self.is_zero_at(n)).collect()
    }

    /// First index below the common order at which the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let t = self.order().min(other.order());
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => (0..t).find(|&n| a[n] != b[n]),
            (Coeffs::Mod(a), Coeffs::Mod(b)) => (0..t).find(|&n| a[n] != b[n]),
            _ => (0..t).find(|&n| self.coeff(n) != other.coeff(n)),
        }
    }

    /// Whether the constant term is invertible in the ring.
    pub fn has_unit_constant(&self) -> bool {
        self.order() > 0 && self.ring.is_unit(&self.coeff(0))
    }

    pub(crate) fn constant_is_plus_minus_one(&self) -> bool {
        match &self.coeffs {
            Coeffs::Exact(v) => v.first().is_some_and(|c| c.abs().is_one()),
            Coeffs::Mod(_) => false,
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for n in 0..self.order() {
            if self.is_zero_at(n) {
                continue;
            }
            let c = self.coeff(n);
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}
