//! Accelerated sequences converging to the Euler-Mascheroni constant.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`], [`real`], [`harmonic`], [`gamma`]: exact rationals,
//!   certified arbitrary-precision intervals, harmonic sums and a rigorous
//!   enclosure of the constant itself.
//! * [`series`]: truncated expansions in powers of `1/n`, with coefficients
//!   that may depend polynomially on family parameters `a`, `b`.
//! * [`sequences`]: evaluators for the classical sequences and the
//!   two-parameter family `v_n(a, b)`.
//! * [`poly`]: exact polynomial algebra and shifted-coefficient positivity
//!   certificates.
//! * [`convergence`]: convergence-rate extraction and the parameter
//!   optimizer.
//! * [`bounds`]: a catalog of two-sided inequalities with interval-certified
//!   verdicts.

pub mod bounds;
pub mod convergence;
pub mod error;
pub mod gamma;
pub mod harmonic;
pub mod poly;
pub mod rational;
pub mod real;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use gamma::{gamma_bootstrap, gamma_reference, gamma_series, Enclosure, EnclosureMethod};
pub use harmonic::{harmonic_exact, harmonic_float, HarmonicAccumulator};
pub use rational::{parse_rational, rat, Rational};
pub use real::{ln_real, BigReal, Dyadic, Round};
