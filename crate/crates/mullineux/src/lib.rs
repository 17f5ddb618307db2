//! Partition combinatorics in positive characteristic: `p`-rims, Mullineux
//! symbols, `p`-modular Frobenius symbols, the Mullineux involution and the
//! JS-partition predicate.

pub mod partition;
pub mod symbol;

pub use partition::{is_p_regular, partitions, regular_partitions, Partition};
pub use symbol::{
    frobenius_symbol, is_js_partition, is_mullineux_fixed, mullineux_map, mullineux_map_frobenius, mullineux_symbol,
    p_rim, partition_from_symbol, FrobeniusSymbol, MullineuxSymbol,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MullineuxError {
    #[error("{0} is not {1}-regular")]
    NotRegular(Partition, u32),
    #[error("parts {0:?} are not weakly decreasing and positive")]
    NotAPartition(Vec<u32>),
    #[error("cannot parse partition '{0}'")]
    Parse(String),
    #[error("no partition has Mullineux symbol {0}")]
    InvalidSymbol(String),
    #[error("p must be a prime ≥ 2, got {0}")]
    BadPrime(u32),
}
