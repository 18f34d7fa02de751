//! Reduced Padé approximants.
//!
//! The classical `(m, n)` Padé approximant of a power series is not unique
//! as a pair of polynomials whenever the Toeplitz system for its denominator
//! has a multidimensional kernel. Solvers that pick an arbitrary kernel
//! vector leave spurious common factors in the numerator and denominator,
//! which roundoff turns into near-coincident zero/pole pairs (Froissart
//! doublets). This crate computes the *reduced* approximant instead: the
//! denominator of minimal degree, read off the one-dimensional kernel of a
//! smaller Toeplitz matrix whose size is fixed by the numerical rank of
//! `T_m`. Coefficients that vanish in exact arithmetic are detected by rank
//! tests and set exactly to zero.
//!
//! ```
//! use pade_core::{reduced_pade, taylor_of_rational, Complex, PadeOrder, Polynomial,
//!                 RationalSpec, ReduceOptions};
//!
//! // 1 / (1 - z)
//! let spec = RationalSpec::new(
//!     Polynomial::from_real(&[1.0]),
//!     Polynomial::from_real(&[1.0, -1.0]),
//! ).unwrap();
//! let f = taylor_of_rational(&spec, Complex::new(0.0, 0.0), 7).unwrap();
//! let r = reduced_pade(&f, PadeOrder::new(3, 3), &ReduceOptions::default()).unwrap();
//! assert_eq!(r.denominator.effective_degree(), Some(1));
//! assert_eq!(r.numerator.effective_degree(), Some(0));
//! ```

pub mod diagnostics;
pub mod error;
pub mod numrank;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod reduced;
pub mod series;
pub mod table;
pub mod toeplitz;

pub use diagnostics::{
    analyze, compare, detect_doublets, group_roots, poly_roots, roots_or_empty, CompareOptions,
    Comparison, Doublet, DoubletReport, RootAnalysis, RootSet, DEFAULT_PAIRING_TOL,
};
pub use error::{PadeError, Result};
pub use numrank::{
    null_space, numerical_rank, rank_of, svd, RankReport, Svd, DEFAULT_GAP_THRESHOLD,
};
pub use reduced::{
    approximation_error, classical_pade, cleanup_denominator, cleanup_numerator, essential_indices,
    minimal_denominator, numerator_from_denominator, order_condition_residual, reduced_pade,
    ClassicalPade, Cleanup, EssentialIndices, ReduceOptions, ReducedPade, Warning,
};
pub use series::{
    parse_coefficients, read_coefficients, series_mul_poly, taylor_of_rational,
    taylor_of_rational_with_guard, write_coefficients, Complex, Polynomial, PowerSeries,
    RationalSpec, DEFAULT_POLE_GUARD,
};
pub use table::{pade_table, PadeTable, TableCell};
pub use toeplitz::{build_tk, delete_column, insert_row, Matrix, PadeOrder};
