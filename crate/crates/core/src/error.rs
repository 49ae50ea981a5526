use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element `{element}` does not belong to carrier {carrier}")]
    CarrierMismatch { carrier: String, element: String },

    #[error("operands live in different twisted rings")]
    TwistMismatch,

    #[error("delta is not locally nilpotent at `{element}`: delta^n != 0 for all n <= {cap}")]
    NotLocallyNilpotent { element: String, cap: usize },

    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),

    #[error("ill-defined twist: {0}")]
    IllDefinedTwist(String),

    #[error("sigma is not invertible: {0}")]
    NotInvertible(String),

    #[error("the zero polynomial has no leading coefficient")]
    ZeroPolynomial,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("submodule lattice has more than {cap} members")]
    LatticeTooLarge { cap: usize },

    #[error("module has {size} elements, above the cap of {cap}")]
    ModuleTooLarge { size: u64, cap: usize },

    #[error("operation requires a nonzero module")]
    ZeroModule,

    #[error("ideal {ideal} is not stable under the twist: {witness}")]
    NotStableUnderTwist { ideal: String, witness: String },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("postcondition violated: {0}")]
    Postcondition(String),

    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown symbol `{symbol}` at offset {pos}")]
    UnknownSymbol { symbol: String, pos: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config: {0}")]
    Config(String),

    #[error("relation self-test `{relation}` failed: {detail}")]
    RelationFailed { relation: String, detail: String },
}

impl Error {
    /// True for errors caused by a size or enumeration cap rather than by bad
    /// input or a failed check.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded(_) | Error::LatticeTooLarge { .. } | Error::ModuleTooLarge { .. }
        )
    }
}
