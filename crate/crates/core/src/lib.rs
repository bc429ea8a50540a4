//! Exact truncated q-series and quasimodular forms.
//!
//! The crate is organized bottom-up:
//!
//! * [`series`]: the truncated power series ring over big rationals.
//! * [`generators`]: Eisenstein series, theta series, Euler products, Lambert sums.
//! * [`partitions`]: MacMahon-type families and their partition oracles.
//! * [`graded`]: polynomials in the `E`, `Theta`, `G` and `XY` bases, formal
//!   derivatives, and exact basis solving.
//! * [`recursions`]: the coefficient tables and weight sequences.
//! * [`verify`]: series oracles, identity checks, and the verification suite.

pub mod error;
pub mod generators;
pub mod graded;
pub mod partitions;
pub mod recursions;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use series::{ModSeries, TruncatedSeries};
