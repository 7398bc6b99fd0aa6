//! Cyclotomic periods and reduced period polynomials of degree `2^m` over
//! `F_{p^s}` for primes `p = 3, 5 (mod 8)`.
//!
//! * [`field`]: the finite field, its trace and norm maps.
//! * [`cyclotomic`], [`poly`]: exact arithmetic in `Z[zeta_n]` and `Z[X]`.
//! * [`partitions`]: normalized representations `p^k = A^2 + 2B^2` and
//!   `p^k = C^2 + D^2`.
//! * [`periods`]: brute-force periods and the period polynomial.
//! * [`gauss`]: Gauss and Jacobi sums, identity checks, and periods
//!   reconstructed from (possibly lifted) Gauss sums.
//! * [`closed_form`]: the explicit factorizations of `P*_{2^m}`.

pub mod arith;
pub mod closed_form;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod gauss;
pub mod partitions;
pub mod periods;
pub mod poly;
pub mod sweep;

pub use closed_form::{CaseTag, Factorization, FormulaCase};
pub use cyclotomic::CycElem;
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElem, FieldParams};
pub use partitions::{PartitionKind, PartitionRecord, PartitionSet};
pub use periods::{PeriodVector, TraceSpectrum};
pub use poly::IntPoly;
pub use sweep::Execution;

/// Default refusal threshold for brute-force enumeration.
pub const DEFAULT_MAX_Q: u64 = 100_000_000;
