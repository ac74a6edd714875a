use thiserror::Error;

/// Errors raised while building or checking constacyclic codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The modulus is not an odd prime below 2^16.
    #[error("modulus {0} is not a prime with 2 < p < 65536")]
    InvalidModulus(u64),
    /// Two operands belong to different prime fields.
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    /// Inversion or division by zero.
    #[error("division by zero")]
    DivisionByZero,
    /// The multiplicative order of zero was requested.
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    /// No element of order `r * k` with `w^k = gamma` exists in the field.
    #[error("field lacks required root of unity: r = {r}, k = {k}, p = {p} (need r*k | p-1)")]
    MissingRootOfUnity { r: u64, k: u64, p: u32 },
    /// `x^n - c` would have repeated roots because `p | n`.
    #[error("repeated roots: modulus {modulus} is divisible by p = {p}")]
    RepeatedRoots { modulus: u64, p: u32 },
    /// Cyclotomic cosets need `gcd(q, modulus) = 1`.
    #[error("cyclotomic cosets need gcd(q, modulus) = 1 (q = {q}, modulus = {modulus})")]
    CosetDomain { modulus: u64, q: u64 },
    /// The constant must be 1 or -1 for this operation.
    #[error("{what}: constant {value} is not 1 or -1 in F_{p}")]
    UnsupportedConstant {
        what: &'static str,
        value: u32,
        p: u32,
    },
    /// Index out of range.
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    /// Ring elements with different parameters were combined.
    #[error("ring parameter mismatch")]
    ParamsMismatch,
    /// A vector had the wrong length.
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    /// Block lengths must be positive.
    #[error("block length {name} must be at least 1")]
    InvalidBlockLength { name: &'static str },
    /// A ring constant must be nonzero.
    #[error("constant {name} must be nonzero")]
    ZeroConstant { name: &'static str },
    /// A grid polynomial does not divide `x^s - alpha`.
    #[error("p_{j}^({t})(x) = {poly} does not divide x^{s} - alpha")]
    NotADivisor {
        t: usize,
        j: usize,
        s: usize,
        poly: String,
    },
    /// The divisor grid does not have shape k x l.
    #[error("divisor grid must be {k} x {l}, found {found}")]
    GridShape { k: usize, l: usize, found: String },
    /// The dual is only an ideal of the same ring for constants in {1, -1}.
    #[error(
        "dual construction needs alpha, beta, gamma in {{1, -1}}; the dual of an \
         (a,b,c)-constacyclic code is (a^-1,b^-1,c^-1)-constacyclic and lives in a different ring \
         (got alpha = {alpha}, beta = {beta}, gamma = {gamma}); use the null space of G instead"
    )]
    DualUnsupported { alpha: u32, beta: u32, gamma: u32 },
    /// The code is the zero code.
    #[error("the code has dimension 0")]
    ZeroDimension,
    /// An enumeration exceeded its work budget.
    #[error("enumeration needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    /// A spec or result file could not be read.
    #[error("invalid spec file: {0}")]
    SpecFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
