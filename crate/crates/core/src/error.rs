use thiserror::Error;

use crate::spec::ClassTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("range violation for {class}: {constraint} (got {got})")]
    Range {
        class: ClassTag,
        constraint: &'static str,
        got: String,
    },
    #[error("parity violation for {class}: {constraint} (got {got})")]
    Parity {
        class: ClassTag,
        constraint: &'static str,
        got: String,
    },
    #[error("{class} requires parameter c")]
    MissingC { class: ClassTag },
    #[error("{class} takes no parameter c")]
    ExtraneousC { class: ClassTag },
    #[error("degenerate {class} parameters: {detail}")]
    Degenerate { class: ClassTag, detail: String },
    #[error("cannot parse spec {input:?}: {detail}")]
    Parse { input: String, detail: String },
    #[error("{op} does not apply to class {class}")]
    UnsupportedClass { op: &'static str, class: ClassTag },
    #[error("order {n} outside supported range {min}..={max}")]
    OrderOutOfRange { n: u64, min: u64, max: u64 },
    #[error("graph order {n} exceeds the labeling cap of {cap} vertices")]
    SizeCap { n: usize, cap: usize },
    #[error("{f} is not in the finite divisor set used by the residue search")]
    NotInDivisorSet { f: u64 },
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("classifier disagrees with kernel oracle on {spec}: classify={classify}, oracle={oracle}")]
    OracleDisagreement { spec: String, classify: bool, oracle: bool },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
