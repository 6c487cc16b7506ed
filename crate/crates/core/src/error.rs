use thiserror::Error;

use crate::forms::FormId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown form id {0}")]
    UnknownForm(FormId),

    #[error("integer {value} exceeds the configured limit of {limit}")]
    IntegerLimit { value: i64, limit: i64 },

    #[error("form {0} carries tombstones; only ordinary forms are accepted here")]
    Augmented(FormId),

    #[error("form {0} is not a blocking form")]
    NotBlocking(FormId),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("resource limit exceeded: {produced} forms produced, limit is {limit}")]
    ResourceLimit { limit: usize, produced: usize },

    #[error("no {which} tipping point for {form} within offset {bound}")]
    TippingNotFound {
        form: FormId,
        which: &'static str,
        bound: u32,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
