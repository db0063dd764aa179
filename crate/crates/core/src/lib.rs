//! Exact enumeration of balanced vertices in three labeled tree varieties:
//! decreasing binary trees, non-plane 1-2 trees and plane 1-2 trees.
//!
//! A vertex is balanced when every leaf below it sits at the same distance;
//! that distance is its rank. Counts come from truncated exponential
//! generating functions with exact rational coefficients, and every count
//! can be cross-checked against brute-force enumeration in [`oracle`].

pub mod decreasing_binary;
pub mod error;
pub mod limits;
pub mod nonplane12;
pub mod oracle;
pub mod plane12;
pub mod scalar;
pub mod series;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use limits::{BigFloat, ClosedForm, LimitConstant, NamedConstant};
pub use scalar::{Coeff, Rational};
pub use series::Series;
pub use table::{CountTable, ProbMeaning, ProbSequence, TableKind, Variety};

/// Exact series, the default for every counting routine.
pub type QSeries = Series<Rational>;
/// Floating-point series for quick numerical sketches.
pub type F64Series = Series<f64>;
