use thiserror::Error;

/// Errors shared by carrier, relation, powerset, lifting and law-engine
/// operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label {0:?}")]
    DuplicateElement(String),

    #[error("carriers must have at least one element")]
    EmptyCarrier,

    #[error("element {label:?} does not occur in carrier {carrier:?}")]
    UnknownElement { carrier: String, label: String },

    #[error("carrier mismatch: expected {expected:?}, found {found:?}")]
    CarrierMismatch { expected: String, found: String },

    #[error("carrier {carrier:?} has {size} elements, above the powerset cap {cap}")]
    CarrierTooLarge {
        carrier: String,
        size: usize,
        cap: usize,
    },

    #[error("relation is not a subidentity")]
    NotSubidentity,

    #[error("relation target is not a powerset carrier")]
    NotPowersetTarget,

    #[error("{needed} choice functions exceed the enumeration cap {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u64 },

    #[error("universe too large: {0}")]
    UniverseTooLarge(String),
}
