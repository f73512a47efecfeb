use thiserror::Error;

/// Library failure modes. `Indeterminate` marks questions the certified
/// arithmetic could not settle under the precision cap; it never means
/// "disproved".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} spans {requested} values but the configured cap is {cap}")]
    RangeTooLarge {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("indeterminate after {bits} bits (cap {cap} bits): {context}")]
    Indeterminate {
        context: String,
        bits: u32,
        cap: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
