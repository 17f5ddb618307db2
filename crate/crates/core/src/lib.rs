//! Exact finite-field arithmetic, quadratic geometry, rank-3 parameters,
//! orthogonal groups and orbit enumeration for odd-dimensional orthogonal
//! spaces over GF(3).

pub mod constructions;
pub mod error;
pub mod field;
pub mod geometry;
pub mod gf3;
pub mod groups;
pub mod higman;
pub mod linalg;
pub mod orbit;

pub use error::{ConstructionError, FieldError, GeometryError, GroupError, ParamError};
pub use field::{Elem, FiniteField, SquareClass};
pub use geometry::{PointType, ProjectivePoint, QuadraticSpace, Sign};
pub use groups::MatrixGroup;
pub use higman::{CdPair, Eigen, RankThreeParams};
pub use linalg::Mat;
pub use orbit::{Orbit, OrbitReport};
