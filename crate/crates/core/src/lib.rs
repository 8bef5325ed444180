//! Exact-arithmetic toolkit for diagonals of trivariate rational functions.
//!
//! Provides:
//! - exact rationals, univariate polynomials, truncated Laurent series,
//!   sparse trivariate polynomials (`rational`, `poly`, `series`, `tripoly`);
//! - a brute-force diagonal oracle by capped multi-Taylor expansion (`oracle`);
//! - closed-form diagonal series for the seven/eight/nine/ten-parameter
//!   rational-function families (`families`);
//! - a Gauss 2F1 engine and a catalog of two-pullback identities (`hyp2f1`);
//! - Hauptmoduls, modular-equation polynomials, Newton series roots and
//!   Schwarzian-equation checks (`modular`);
//! - monomial and rescaling transformation laws for diagonals (`symmetry`);
//! - a small expression parser shared with the CLI (`parse`).

pub mod error;
pub mod rational;
pub mod poly;
pub mod series;
pub mod tripoly;
pub mod parse;
pub mod oracle;
pub mod families;
pub mod hyp2f1;
pub mod modular;
pub mod symmetry;

pub use error::CoreError;
pub use rational::Rat;
pub use poly::UniPoly;
pub use series::TruncatedSeries;
pub use tripoly::{RationalFn3, TriPoly};
