//! Interval exchange transformations and their translation-surface
//! suspensions.
//!
//! * [`perm`]: irreducibility, admissibility and stratum data.
//! * [`iet`]: evaluation, orbits, the proximity statistic `ε_n`, connections.
//! * [`pairing`]: the form `Q`, heights, the cone of good directions, the null
//!   space and the positive-pair test.
//! * [`surface`]: polygon suspensions, the `SL(2,ℝ)` action, saddle
//!   connections, return maps and real REL moves.
//! * [`experiments`]: recurrence diagnostics, line and curve scans, samplers.

pub mod error;
pub mod experiments;
pub mod iet;
pub mod linalg;
pub mod pairing;
pub mod perm;
pub mod scalar;
pub mod surface;

pub use error::{Error, Result};
pub use iet::{Connection, Direction, Iet};
pub use perm::{Permutation, StratumData};
pub use scalar::{QSqrt5, Rational, Scalar};
pub use surface::{Matrix2, SaddleConnection, TranslationSurface};
