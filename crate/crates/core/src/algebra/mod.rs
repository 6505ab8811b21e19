//! Algebra instances, their text format, check reports and the axiom checker.

pub mod checks;
pub mod format;
mod instance;
pub mod report;

pub use checks::{check_coalgebra, check_dual_quasi_bialgebra, check_dual_quasi_hopf, check_level, CheckError, Level};
pub use format::{parse_instance, serialize_instance, AnyInstance, ParseError};
pub use instance::{AlgebraInstance, HopfData, InstanceError, InstanceParts};
pub use report::{Check, Report, Status, Value, Witness};
