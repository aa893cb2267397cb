use std::cmp::Reverse;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::claim::{ClaimSubject, CongruenceClaim};
use super::verify::SeriesCache;
use super::CongruenceError;
use crate::arith::prime_power;
use crate::report::ProofStatus;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MineSource {
    /// `A_{t,k}` for each `k` listed.
    TupleCores { t: u64, ks: Vec<u64> },
    /// The partition function `p(n)`.
    Partitions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineParams {
    pub source: MineSource,
    pub periods: Vec<u64>,
    /// Prime powers.
    pub moduli: Vec<u64>,
    pub order: usize,
    pub min_hits: u64,
}

pub const DEFAULT_MIN_HITS: u64 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinedClaim {
    pub claim: CongruenceClaim,
    /// Coefficients checked (all zero).
    pub hits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinedClaimJson {
    pub id: String,
    pub hits: u64,
    pub proof_status: ProofStatus,
    pub source: String,
}

impl From<&MinedClaim> for MinedClaimJson {
    fn from(m: &MinedClaim) -> Self {
        MinedClaimJson {
            id: m.claim.id(),
            hits: m.hits,
            proof_status: m.claim.status,
            source: m.claim.source.clone(),
        }
    }
}

/// Every residue class `M n + r` (over the given periods) whose coefficients
/// below `order` all vanish mod each modulus, provided at least `min_hits`
/// coefficients were checked. Sorted by `k`, period, modulus (largest
/// first) and residue.
pub fn mine(params: &MineParams) -> Result<Vec<MinedClaim>, CongruenceError> {
    if params.periods.contains(&0) {
        return Err(CongruenceError::Invalid("periods must be positive".into()));
    }
    let mut moduli: Vec<(u64, u64, u32)> = Vec::new();
    for &m in &params.moduli {
        let (p, n) = prime_power(m)
            .ok_or_else(|| CongruenceError::Invalid(format!("modulus {m} is not a prime power")))?;
        moduli.push((m, p, n));
    }
    moduli.sort_unstable();
    moduli.dedup();
    let subjects: Vec<ClaimSubject> = match &params.source {
        MineSource::TupleCores { t, ks } => {
            if *t < 2 {
                return Err(CongruenceError::Invalid(format!("t must be at least 2, got {t}")));
            }
            ks.iter().map(|&k| ClaimSubject::TupleCount { t: *t, k }).collect()
        }
        MineSource::Partitions => vec![ClaimSubject::Partition],
    };
    let mut top: BTreeMap<u64, u64> = BTreeMap::new();
    for &(m, p, _) in &moduli {
        let e = top.entry(p).or_insert(m);
        *e = (*e).max(m);
    }
    let cache = SeriesCache::new();
    let tasks: Vec<(ClaimSubject, u64, u64, u32)> = subjects
        .iter()
        .flat_map(|&s| moduli.iter().map(move |&(m, p, n)| (s, m, p, n)))
        .collect();
    let found: Vec<Vec<MinedClaim>> = tasks
        .par_iter()
        .map(|&(subject, m, p, n)| {
            if params.order == 0 {
                return Ok(Vec::new());
            }
            // compute at the top power of p once, reduce for the others
            cache.series(subject, top[&p], params.order)?;
            let series = cache.series(subject, m, params.order)?;
            let c = series.residues().expect("modular series");
            let mut out = Vec::new();
            for &period in &params.periods {
                for r in 0..period.min(params.order as u64) {
                    let mut idx = (r as usize..params.order).step_by(period as usize);
                    let hits = idx.len() as u64;
                    if hits >= params.min_hits.max(1) && idx.all(|i| c[i] == 0) {
                        let claim = CongruenceClaim::new(subject, period, vec![r], p, n)?
                            .with_status(ProofStatus::Mined)
                            .with_source("mined");
                        out.push(MinedClaim { claim, hits });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_, CongruenceError>>()?;
    let mut all: Vec<MinedClaim> = found.into_iter().flatten().collect();
    all.sort_by_key(|m| {
        (
            m.claim.subject.k(),
            m.claim.period,
            Reverse(m.claim.modulus()),
            m.claim.residues[0],
        )
    });
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[MinedClaim]) -> Vec<String> {
        v.iter().map(|m| m.claim.id()).collect()
    }

    #[test]
    fn partition_classics() {
        let v = mine(&MineParams {
            source: MineSource::Partitions,
            periods: vec![5, 7, 11],
            moduli: vec![5, 7, 11],
            order: 1000,
            min_hits: 40,
        })
        .unwrap();
        let got = ids(&v);
        for want in ["p(5n+4) % 5 == 0", "p(7n+5) % 7 == 0", "p(11n+6) % 11 == 0"] {
            assert!(got.contains(&want.to_string()), "{want} missing from {got:?}");
        }
        assert!(v.iter().all(|m| m.claim.status == ProofStatus::Mined));
    }

    #[test]
    fn pairs_of_five_cores() {
        let v = mine(&MineParams {
            source: MineSource::TupleCores { t: 5, ks: vec![2] },
            periods: vec![5, 25],
            moduli: vec![5, 25, 125],
            order: 2000,
            min_hits: 40,
        })
        .unwrap();
        let got = ids(&v);
        assert!(got.contains(&"A(5,2; 5n+3) % 5 == 0".to_string()));
        assert!(got.contains(&"A(5,2; 25n+23) % 5^2 == 0".to_string()));
        // deterministic ordering: period, then modulus descending, then residue
        let keys: Vec<_> = v
            .iter()
            .map(|m| (m.claim.period, Reverse(m.claim.modulus()), m.claim.residues[0]))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn thresholds_and_empty_space() {
        let base = MineParams {
            source: MineSource::TupleCores { t: 5, ks: vec![2] },
            periods: vec![5],
            moduli: vec![5],
            order: 300,
            min_hits: 100_000,
        };
        assert!(mine(&base).unwrap().is_empty());
        let empty = MineParams { periods: vec![], ..base.clone() };
        assert!(mine(&empty).unwrap().is_empty());
        let bad = MineParams { moduli: vec![6], ..base };
        assert!(mine(&bad).is_err());
    }
}
