use thiserror::Error;

use crate::congruence::CongruenceError;
use crate::eta::ParseError;
use crate::identities::IdentityError;
use crate::partitions::OracleError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
