//! Reduced SU(N,K) modular category data and refined quantum invariants of
//! closed oriented 3-manifolds presented by plumbing forests.
//!
//! Everything is computed in exact arithmetic: scalars live in a cyclotomic
//! field extended by a formal square-root normalization, linking-matrix
//! signatures are integer-exact, and structure sets come from a Smith normal
//! form solver. Floating point appears only in advisory `approx` fields of
//! serialized values.

pub mod category;
pub mod dims;
pub mod exact;
pub mod invariants;
pub mod manifolds;
pub mod oracles;
pub mod partitions;
pub mod snf;

pub use category::{build_category, build_params, CategoryData, Mode, Params};
pub use exact::{make_field, ExactError, ExactValue, FieldContext};
pub use manifolds::PlumbingForest;
pub use partitions::YoungDiagram;
