use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("degree must be at least 1, got {0}")]
    BadDegree(u32),
    #[error("GF({p}^{a}) exceeds the supported order 3^9")]
    TooLarge { p: u32, a: u32 },
    #[error("modulus has degree {got}, expected {expected}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("modulus coefficient out of range")]
    BadCoefficient,
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("no primitive element found")]
    NoPrimitive,
    #[error("division by zero")]
    ZeroDivision,
    #[error("square class of zero is undefined")]
    ZeroSquareClass,
    #[error("square classes need odd characteristic")]
    EvenCharacteristic,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is singular")]
    Degenerate,
    #[error("Gram matrix must be {dim}x{dim}")]
    Shape { dim: usize },
    #[error("quadratic forms need odd characteristic")]
    EvenCharacteristic,
    #[error("the zero vector has no type")]
    ZeroVector,
    #[error("vector has length {got}, space has dimension {dim}")]
    Length { dim: usize, got: usize },
    #[error("operation needs {0} dimension")]
    Parity(&'static str),
    #[error("dimension {dim} too large for {what}")]
    TooLarge { dim: usize, what: &'static str },
    #[error("singular-vector count gives sign {counted:?} but the discriminant rule gives {rule:?}")]
    SignMismatch { counted: crate::geometry::Sign, rule: crate::geometry::Sign },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("not a rank-3 parameter set: {0}")]
    NotRank3(String),
    #[error("m must be at least {min}, got {m}")]
    BadM { m: u32, min: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("vector u is singular; reflections need Q(u) != 0")]
    SingularReflection,
    #[error("matrix is not an isometry of the form")]
    NotIsometry,
    #[error("isometry has determinant {0}, expected 1")]
    DeterminantNotOne(u32),
    #[error("reflection decomposition failed at basis vector {0}")]
    DecompositionFailed(usize),
    #[error("Eichler transformation precondition failed: {0}")]
    EichlerPrecondition(&'static str),
    #[error("generator {index} is not invertible")]
    Singular { index: usize },
    #[error("dimension mismatch: group acts on dimension {group}, got {got}")]
    Dimension { group: usize, got: usize },
    #[error("orbit exceeds the cap of {cap} points")]
    OrbitCap { cap: usize },
    #[error("group enumeration exceeds {cap} elements")]
    GroupCap { cap: usize },
    #[error("generator self-check failed: {0}")]
    SelfCheck(String),
    #[error("start vector is zero")]
    ZeroStart,
    #[error("base point is singular")]
    SingularBase,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("construction self-check failed: {0}")]
    SelfCheck(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
