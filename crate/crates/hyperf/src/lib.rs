//! High-precision evaluation of generalized hypergeometric series and a
//! laboratory for verifying closed-form identities built on them.
//!
//! The crate is organized in layers:
//!
//! * [`context`] — precision contexts and error-tracked values ([`ErrVal`]),
//!   the contract every approximate computation honors.
//! * [`combinatorics`] — exact rational building blocks: Pochhammer symbols,
//!   harmonic numbers, Bernoulli numbers, half-integer gamma values.
//! * [`constants`] — fundamental constants (π, γ, √3, ln 3) with error bounds.
//! * [`series`] — the pFq series engine: convergence classification and
//!   evaluation with a rigorous geometric tail bound.
//! * [`transforms`] — even/odd parameter splits, multiset parameter
//!   cancellation, and fused coefficient sequences.
//! * [`special`] — independent evaluators for trigamma and the Clausen
//!   function Cl₂, used as the "other side" of identity checks.
//! * [`lab`] — the identity catalog, the verifier, and the convergence
//!   benchmark.
//!
//! The `hyperf` binary exposes all of this on the command line; see the
//! `book/` guide for a narrative walk-through.
//!
//! ```
//! use hyperf::{PrecisionContext, series::HyperSpec, rat};
//!
//! // 3F2(1/2,1/2,1/2; 3/2,3/2; -1/4) = pi^2/10
//! let ctx = PrecisionContext::new(30).unwrap();
//! let spec = HyperSpec::new(
//!     vec![rat(1, 2), rat(1, 2), rat(1, 2)],
//!     vec![rat(3, 2), rat(3, 2)],
//!     rat(-1, 4),
//! ).unwrap();
//! let out = spec.evaluate(&ctx).unwrap();
//! assert!(out.result.value().to_f64() - 0.9869604401089358 < 1e-15);
//! ```

pub mod combinatorics;
pub mod constants;
pub mod context;
pub mod lab;
pub mod series;
pub mod special;
pub mod transforms;

pub use context::{ErrVal, PrecisionContext};
pub use rug::{Float, Integer, Rational};

/// Convenience constructor for small rationals, mostly for literals in
/// examples and tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Errors produced by the numeric engine and the identity lab.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("series diverges for the given parameters and argument")]
    DivergentSeries,
    #[error("conditionally convergent series on the unit circle are not summed")]
    ConditionalConvergenceUnsupported,
    #[error("requested precision unreachable within {terms} terms")]
    PrecisionUnreachable { terms: usize },
    #[error("ratio bound {0} is not in (0, 1)")]
    InvalidRatioBound(f64),
    #[error("coefficient sequences have different geometric bases")]
    MixedBase,
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("unknown benchmark series `{0}`")]
    UnknownSeries(String),
    #[error("argument must be positive")]
    NonpositiveArgument,
    #[error("argument outside the domain of the series")]
    OutOfDomain,
    #[error("unsupported constant name `{0}`")]
    UnsupportedConstant(String),
    #[error("denominator parameter {0} is zero or a negative integer")]
    InvalidDenominatorParam(Rational),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
