//! Brute-force partition combinatorics: enumeration, hook numbers, t-cores
//! and counts of partition k-tuples with t-cores, straight from the
//! definitions. Serves as the independent oracle for the generating
//! functions evaluated in [`crate::eta`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::eta::{eval_expr, EtaExpr};
use crate::series::{CoefficientRing, SeriesError};

pub const DEFAULT_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("t must be at least 2, got {0}")]
    InvalidCoreSize(usize),
    #[error("k must be at least 1")]
    InvalidTupleSize,
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, OracleError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(OracleError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Column lengths of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Hook length of every cell: arm + leg + 1.
    pub fn hook_numbers(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks.push((row - j) + (conj.parts[j] - i) - 1);
            }
        }
        hooks
    }

    /// No hook number divisible by `t`.
    pub fn is_t_core(&self, t: usize) -> bool {
        self.hook_numbers().iter().all(|h| h % t != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(())
}

fn check_core(t: usize) -> Result<(), OracleError> {
    if t < 2 {
        return Err(OracleError::InvalidCoreSize(t));
    }
    Ok(())
}

/// All partitions of `n`, largest first part first: `(4), (3,1), (2,2), ...`.
pub fn partitions_of(n: usize, cap: usize) -> Result<Vec<Partition>, OracleError> {
    check_cap(n, cap)?;
    fn extend(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            extend(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn count_t_cores(n: usize, t: usize, cap: usize) -> Result<u64, OracleError> {
    check_core(t)?;
    Ok(partitions_of(n, cap)?.iter().filter(|p| p.is_t_core(t)).count() as u64)
}

/// `counts[n] = A_{t,k}(n)` for `n <= max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCountTable {
    pub t: usize,
    pub k: usize,
    pub counts: Vec<BigInt>,
}

/// Counts by convolving the single t-core sequence with itself `k` times.
pub fn tuple_counts_oracle(
    t: usize,
    k: usize,
    max_n: usize,
    cap: usize,
) -> Result<TupleCountTable, OracleError> {
    check_core(t)?;
    check_cap(max_n, cap)?;
    if k == 0 {
        return Err(OracleError::InvalidTupleSize);
    }
    let single: Vec<BigInt> = (0..=max_n)
        .map(|n| count_t_cores(n, t, cap).map(BigInt::from))
        .collect::<Result<_, _>>()?;
    let mut counts = single.clone();
    for _ in 1..k {
        counts = (0..=max_n)
            .map(|n| (0..=n).map(|j| &counts[j] * &single[n - j]).sum())
            .collect();
    }
    Ok(TupleCountTable { t, k, counts })
}

/// Counts by listing every k-tuple of t-cores of total size at most `max_n`.
/// Exponential; meant for `n <= 8`, `k <= 3`.
pub fn tuple_counts_direct(
    t: usize,
    k: usize,
    max_n: usize,
    cap: usize,
) -> Result<TupleCountTable, OracleError> {
    check_core(t)?;
    check_cap(max_n, cap)?;
    if k == 0 {
        return Err(OracleError::InvalidTupleSize);
    }
    let mut cores: Vec<Partition> = Vec::new();
    for n in 0..=max_n {
        cores.extend(partitions_of(n, cap)?.into_iter().filter(|p| p.is_t_core(t)));
    }
    fn place(slots: usize, budget: usize, cores: &[Partition], used: usize, counts: &mut [BigInt]) {
        if slots == 0 {
            counts[used] += 1;
            return;
        }
        for c in cores.iter().filter(|c| c.size() <= budget) {
            place(slots - 1, budget - c.size(), cores, used + c.size(), counts);
        }
    }
    let mut counts = vec![BigInt::zero(); max_n + 1];
    place(k, max_n, &cores, 0, &mut counts);
    Ok(TupleCountTable { t, k, counts })
}

/// Counts from the coefficients of `f_t^{t k} / f_1^k` over `Z`.
pub fn tuple_counts_gf(t: usize, k: usize, max_n: usize) -> Result<TupleCountTable, OracleError> {
    check_core(t)?;
    if k == 0 {
        return Err(OracleError::InvalidTupleSize);
    }
    let s = eval_expr(
        &EtaExpr::tuple_cores(t as u64, k as u64),
        CoefficientRing::Exact,
        max_n + 1,
    )?;
    Ok(TupleCountTable {
        t,
        k,
        counts: (0..=max_n).map(|n| s.coeff(n)).collect(),
    })
}
