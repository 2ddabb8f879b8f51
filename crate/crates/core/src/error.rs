use thiserror::Error;

/// Errors raised while building or checking algebraic objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is malformed at row {row}: {reason}")]
    MalformedTable { row: usize, reason: String },
    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element 0 is not a two-sided identity (fails against element {element})")]
    NoIdentity { element: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("group closure exceeded the order cap {cap}")]
    OrderLimitExceeded { cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element index {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("invalid module data: {0}")]
    InvalidModule(String),
    #[error("matrices do not define an action: action({g}*{h}) != action({g})*action({h})")]
    NotAnAction { g: usize, h: usize },
    #[error("action matrix of element {g} is not invertible modulo the invariants")]
    NotInvertible { g: usize },

    #[error("image column {column} does not lie in the kernel")]
    ImageNotInKernel { column: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("cohomological degree {degree} is not supported (maximum {max})")]
    DegreeUnsupported { degree: usize, max: usize },
    #[error("the peripheral family is empty")]
    EmptyFamily,
    #[error("cochain is not S-equivariant for member {member}: fails at s = {s}")]
    NotEquivariant { member: usize, s: usize },

    #[error("bad transversal: {0}")]
    BadTransversal(String),
    #[error("chain map systems do not share the same group and subgroup")]
    MismatchedSystems,

    #[error(
        "not a relative cocycle: d2(eta)([{g1},{g2}]) differs between coset {coset_a} and coset {coset_b}"
    )]
    NotARelativeCocycle { g1: usize, g2: usize, coset_a: usize, coset_b: usize },
    #[error("invalid set-theoretic section: {0}")]
    InvalidSection(String),
    #[error("invalid extension data: {0}")]
    InvalidExtension(String),
    #[error("relative extensions live over different pairs or modules")]
    MismatchedBase,
    #[error("search space too large: {bound} exceeds the cap {cap}")]
    SearchSpaceTooLarge { bound: u128, cap: u128 },

    #[error("invalid lifting problem: {0}")]
    InvalidLifting(String),
    #[error("kernel of the surjection is not abelian")]
    KernelNotAbelian,
    #[error("conjugation action on the kernel is ill defined")]
    ActionIllDefined,

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
