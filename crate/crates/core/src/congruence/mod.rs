//! Congruence claims `f(M n + r) = 0 mod p^N`: the claim language, the
//! residue criteria, family expansion, verification against computed
//! coefficients, and a miner for new congruences.

mod claim;
mod families;
mod mine;
mod residues;
mod verify;

use thiserror::Error;

use crate::series::SeriesError;

pub use claim::{parse_claim, ClaimKey, ClaimSubject, CongruenceClaim};
pub use families::{expand_family, expand_suite, suite_families, FamilyParams, FAMILY_IDS, SUITE_IDS};
pub use mine::{mine, MineParams, MineSource, MinedClaim, MinedClaimJson, DEFAULT_MIN_HITS};
pub use residues::{
    classes_avoided, legendre, pentagonal, pentagonal_gap_residues, pentagonal_negative, triangular,
    triangular_gap_residues, triangular_zero_residue,
};
pub use verify::{
    run_suite, spot_check, verify_claim, verify_claim_with, verify_claims, SeriesCache, SuiteOptions,
    SPOT_CHECK_MAX_K, SPOT_CHECK_MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("claim syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid claim: {0}")]
    Invalid(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
