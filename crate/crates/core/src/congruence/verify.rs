use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::claim::{ClaimSubject, CongruenceClaim};
use super::families::{expand_suite, FamilyParams};
use super::CongruenceError;
use crate::eta::eval_expr;
use crate::report::{Failure, Kind, SpotCheck, Status, SuiteReport, VerificationReport};
use crate::series::{reduce_mod, CoefficientRing, TruncatedSeries};

type CacheKey = (ClaimSubject, u64, usize);

/// Generating-function series mod `p^N`, shared between claims.
///
/// A request for `(subject, m, T)` is served by any stored entry of the same
/// subject whose modulus is a multiple of `m` and whose order is at least
/// `T`; otherwise the series is computed and stored.
#[derive(Default)]
pub struct SeriesCache {
    map: Mutex<HashMap<CacheKey, Arc<TruncatedSeries>>>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn series(
        &self,
        subject: ClaimSubject,
        modulus: u64,
        order: usize,
    ) -> Result<Arc<TruncatedSeries>, CongruenceError> {
        let hit = {
            let map = self.map.lock().expect("cache lock");
            map.get(&(subject, modulus, order)).cloned().or_else(|| {
                map.iter()
                    .filter(|((s, m, t), _)| *s == subject && m % modulus == 0 && *t >= order)
                    .min_by_key(|((_, m, t), _)| (*m, *t))
                    .map(|(_, v)| Arc::clone(v))
            })
        };
        if let Some(s) = hit {
            if s.ring().modulus().map(|m| m.get()) == Some(modulus) && s.order() == order {
                return Ok(s);
            }
            return Ok(Arc::new(reduce_mod(&s.truncate(order), modulus)?));
        }
        let ring = CoefficientRing::modulo(modulus)?;
        let s = Arc::new(eval_expr(&subject.generating_function(), ring, order)?);
        self.map
            .lock()
            .expect("cache lock")
            .insert((subject, modulus, order), Arc::clone(&s));
        Ok(s)
    }

    /// Computes, once per `(subject, prime)`, the series at the highest
    /// power any claim (or hypothesis) asks for.
    pub fn prewarm(&self, claims: &[CongruenceClaim], order: usize) -> Result<(), CongruenceError> {
        let mut top: HashMap<(ClaimSubject, u64), u32> = HashMap::new();
        let mut visit = |c: &CongruenceClaim| {
            let e = top.entry((c.subject, c.prime)).or_insert(0);
            *e = (*e).max(c.power);
        };
        for c in claims {
            visit(c);
            let mut h = c.hypothesis.as_deref();
            while let Some(x) = h {
                visit(x);
                h = x.hypothesis.as_deref();
            }
        }
        let mut jobs: Vec<(ClaimSubject, u64)> = top
            .into_iter()
            .map(|((s, p), n)| (s, p.pow(n)))
            .collect();
        jobs.sort();
        jobs.par_iter()
            .map(|&(s, m)| self.series(s, m, order).map(|_| ()))
            .collect()
    }
}

fn bound_for(c: &CongruenceClaim, order: usize) -> Option<u64> {
    let top = (order as u64).checked_sub(1)?;
    Some(c.max_index.map_or(top, |m| m.min(top)))
}

fn skipped(c: &CongruenceClaim, reason: String, start: Instant) -> VerificationReport {
    VerificationReport {
        id: c.id(),
        kind: Kind::Claim,
        status: Status::Skipped,
        checked: 0,
        failure: None,
        source: c.source.clone(),
        proof_status: c.status,
        reason: Some(reason),
        elapsed: start.elapsed(),
    }
}

/// Checks every coefficient of `c`'s progressions below `order` (and up to
/// `max_index`), stopping at the first nonzero one.
pub fn verify_claim_with(
    c: &CongruenceClaim,
    order: usize,
    cache: &SeriesCache,
) -> Result<VerificationReport, CongruenceError> {
    let start = Instant::now();
    if let Some(h) = &c.hypothesis {
        let hr = verify_claim_with(h, order, cache)?;
        if hr.status != Status::Verified {
            let why = match &hr.failure {
                Some(f) => format!("hypothesis {} fails at index {}", h.id(), f.index),
                None => format!("hypothesis {} not checkable at this order", h.id()),
            };
            return Ok(skipped(c, why, start));
        }
    }
    let indices = match bound_for(c, order) {
        Some(b) => c.indices(b),
        None => Vec::new(),
    };
    let Some(&last) = indices.last() else {
        return Ok(skipped(
            c,
            format!("no index of the progression is below the bound (order {order})"),
            start,
        ));
    };
    let series = cache.series(c.subject, c.modulus(), last as usize + 1)?;
    let residues = series.residues().expect("claim series are modular");
    let mut checked = 0u64;
    let mut failure = None;
    for &i in &indices {
        checked += 1;
        let v = residues[i as usize];
        if v != 0 {
            failure = Some(Failure {
                index: i,
                value: v.to_string(),
            });
            break;
        }
    }
    Ok(VerificationReport {
        id: c.id(),
        kind: Kind::Claim,
        status: if failure.is_some() {
            Status::Counterexample
        } else {
            Status::Verified
        },
        checked,
        failure,
        source: c.source.clone(),
        proof_status: c.status,
        reason: None,
        elapsed: start.elapsed(),
    })
}

pub fn verify_claim(c: &CongruenceClaim, order: usize) -> Result<VerificationReport, CongruenceError> {
    verify_claim_with(c, order, &SeriesCache::new())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub params: FamilyParams,
    /// Seed for picking the claim that is recomputed over `Z`.
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub spot_check: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            params: FamilyParams::default(),
            seed: 0,
            jobs: None,
            spot_check: true,
        }
    }
}

/// Largest `k` and order used for the exact-arithmetic spot check.
pub const SPOT_CHECK_MAX_K: u64 = 50;
pub const SPOT_CHECK_MAX_ORDER: usize = 600;

/// Recomputes one seeded-random small claim over `Z`, reduces it and
/// compares with the modular series.
pub fn spot_check(
    claims: &[CongruenceClaim],
    order: usize,
    seed: u64,
    cache: &SeriesCache,
) -> Result<Option<SpotCheck>, CongruenceError> {
    let order = order.min(SPOT_CHECK_MAX_ORDER);
    let pool: Vec<&CongruenceClaim> = claims
        .iter()
        .filter(|c| c.subject.k() <= SPOT_CHECK_MAX_K)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some(c) = pool.choose(&mut rng) else {
        return Ok(None);
    };
    let exact = eval_expr(&c.subject.generating_function(), CoefficientRing::Exact, order)?;
    let reduced = reduce_mod(&exact, c.modulus())?;
    let modular = cache.series(c.subject, c.modulus(), order)?;
    Ok(Some(SpotCheck {
        id: c.id(),
        order: order as u64,
        agrees: reduced == *modular,
    }))
}

fn verify_all(
    claims: &[CongruenceClaim],
    order: usize,
    cache: &SeriesCache,
) -> Result<Vec<VerificationReport>, CongruenceError> {
    cache.prewarm(claims, order)?;
    claims
        .par_iter()
        .map(|c| verify_claim_with(c, order, cache))
        .collect()
}

/// Verifies a list of claims in order, sharing one cache.
pub fn verify_claims(
    claims: &[CongruenceClaim],
    order: usize,
    jobs: Option<usize>,
) -> Result<Vec<VerificationReport>, CongruenceError> {
    let cache = SeriesCache::new();
    in_pool(jobs, || verify_all(claims, order, &cache))
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Expands and verifies a suite (or a single family). Results keep the
/// expansion order regardless of scheduling.
pub fn run_suite(suite: &str, order: usize, opts: &SuiteOptions) -> Result<SuiteReport, CongruenceError> {
    let claims = expand_suite(suite, &opts.params)?;
    let cache = SeriesCache::new();
    let results = in_pool(opts.jobs, || verify_all(&claims, order, &cache))?;
    let spot = if opts.spot_check {
        spot_check(&claims, order, opts.seed, &cache)?
    } else {
        None
    };
    Ok(SuiteReport {
        suite: Some(suite.to_string()),
        order: order as u64,
        results,
        spot_check: spot,
    })
}
