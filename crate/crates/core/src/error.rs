use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("pog descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("element {element} is not a valid element of {pog}")]
    MalformedElement { pog: String, element: String },
    #[error("exponent {0} lies outside the positive cone")]
    OutsideCone(String),
    #[error("unsupported inclusion {sub} into {sup}")]
    UnsupportedInclusion { sub: String, sup: String },
    #[error("exhaustion is only defined for Q and Q%Z, got {0}")]
    UnsupportedExhaustion(String),
    #[error("cutoff must be positive, got {0}")]
    NonPositiveCutoff(String),
    #[error("cutoff {cutoff} is incompatible with the presentation: {reason}")]
    IncompatibleCutoff { cutoff: String, reason: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid pog spec {0:?}")]
    BadPogSpec(String),
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("missing periodicity data for grade {0}")]
    MissingPeriodicity(String),
    #[error("pog {0} is not directed")]
    NotDirected(String),
    #[error("presentation incomplete below grade {0}")]
    PresentationIncomplete(String),
    #[error("action does not close on the object set: {0}")]
    ActionNotClosed(String),
    #[error("subgroup {subgroup} does not act trivially: object {object} moves")]
    KernelViolation { subgroup: String, object: String },
    #[error("missing continuation data: {0}")]
    MissingContinuation(String),
    #[error("grading incompatibility: {0}")]
    GradingIncompatible(String),
    #[error("object {0} is not part of the category")]
    UnknownObject(String),
    #[error("functor does not send {0} into the target subcategory")]
    ObjectCondition(String),
    #[error("morphism {name} is not eligible for localization: {reason}")]
    IneligibleMorphism { name: String, reason: String },
    #[error("twisted complex rejected: {0}")]
    BadTwistedComplex(String),
    #[error("d^2 is not zero at degree {0}")]
    InvalidComplex(i32),
    #[error("not a chain map at degree {0}")]
    NotChainMap(i32),
    #[error("integer overflow during exact arithmetic")]
    Overflow,
    #[error("invalid input: {0}")]
    Invalid(String),
}
