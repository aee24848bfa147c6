//! Exact matrix algebra and brute-force ring analysis around one question:
//! which elements are sums of two nilpotents?
//!
//! * [`scalar`] and [`matrix`]: exact arithmetic over `GF(p^k)`, `Q`, the
//!   rational quaternions and `Z/m`, with row reduction from the left.
//! * [`nilpotency`]: nilpotency certificates, the unit-subdiagonal
//!   Hessenberg reduction, and the single-nonzero-row decision.
//! * [`nilsum`]: splitting non-scalar trace-zero matrices over a field
//!   into two nilpotents, and the trace obstruction.
//! * [`limit`]: the direct limit of `M_{2^n}(GF(2))` along `A -> diag(A, A)`.
//! * [`ring`]: finite rings given by tables, their units, center,
//!   Jacobson radical and ideals, and the two-nilpotent sum property.

pub mod error;
pub mod limit;
pub mod matrix;
pub mod nilpotency;
pub mod nilsum;
pub mod ring;
pub mod scalar;
pub mod text;

pub use error::AlgebraError;
pub use matrix::{normalize_column, ColumnNormalization, ExactMatrix};
pub use scalar::{GaloisField, Quaternion, Scalar, ScalarDomain};
