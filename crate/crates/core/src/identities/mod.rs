//! Registry of q-series identities checked to a truncation order, and the
//! A/B/C/D recurrence with its 5-adic valuations.

mod recurrence;
mod registry;

use thiserror::Error;

use crate::series::SeriesError;

pub use recurrence::{
    nu_p, recurrence_step, recurrence_table, RecurrenceRow, RecurrenceRowJson, RecurrenceState,
    Valuation, MAX_ALPHA,
};
pub use registry::{
    find_identity, registry, resolve_identities, verify_identity, verify_spec, IdentitySpec,
    SeriesSource,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity '{0}'")]
    Unknown(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("alpha {0} exceeds the maximum of 64")]
    AlphaTooLarge(u32),
    #[error("truncation order must be at least 1")]
    InvalidOrder,
    #[error(transparent)]
    Series(#[from] SeriesError),
}
