//! Structure representations, exact scalars and the interchange format.

pub mod carrier;
pub mod doc;
pub mod op;
pub mod structure;
pub mod value;

use thiserror::Error;

pub use carrier::{Carrier, Domain, SampleSpec, DEFAULT_SEED};
pub use doc::{from_json, parse_structure, serialize_structure, to_json};
pub use op::{Derived, Formula, OpImpl, Recipe, Table};
pub use structure::{ImmStructure, Kind, MobiStructure, RingStructure, Structure};
pub use value::{format_rational, is_dyadic, is_dyadic_value, parse_rational, parse_scalar, q, qi, Value, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate carrier label {0:?}")]
    DuplicateLabel(String),
    #[error("constant {role} = {value} is not in the carrier")]
    ConstantNotInCarrier { role: String, value: String },
    #[error("unknown operation {0:?}")]
    UnknownOp(String),
    #[error("unknown formula {0:?}")]
    UnknownFormula(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported document version {0}")]
    UnsupportedVersion(i64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{op} takes {expected} arguments, got {got}")]
    Arity { op: String, expected: usize, got: usize },
    #[error("argument {0} is not a carrier member")]
    NonMember(String),
    #[error("{op} leaves the carrier: result {value}")]
    Closure { op: String, value: String },
    #[error("division by zero in {0}")]
    DivisionByZero(String),
    #[error("type mismatch: {0}")]
    Type(String),
}
