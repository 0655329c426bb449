//! Series solutions of Heun's general equation and their specialization to the
//! elliptic Darboux / associated Lame equation.
//!
//! The crate is organized around six layers:
//!
//! - [`specfun`]: gamma, Gauss hypergeometric, complete elliptic integral and
//!   Jacobi elliptic functions; everything else is built on these.
//! - [`heun`]: the Heun parameter algebra (homotopic and Moebius
//!   transformations, hypergeometric reductions, ODE residual oracle,
//!   confluent limit).
//! - [`recurrence`]: a generic three-term recurrence engine (forward and
//!   backward-minimal solving, truncation detection, characteristic
//!   determinants and continued fractions, the Arscott real-spectrum test,
//!   antidiagonal similarity).
//! - [`expansions`]: the four solution groups (power series around 0 and 1,
//!   two hypergeometric-function groups), their convergence regions, the
//!   confluent-Heun limits, and the Svartholm/Erdelyi expansions.
//! - [`darboux`]: the associated-Lame Schroedinger problem: potential
//!   mappings, the finite/infinite eigenfunction catalog, spectra,
//!   degeneracy and parity/period verification.
//! - [`verify`]: the acceptance suites, runnable from tests and from the CLI.
//!
//! Batch entry points accept an [`exec::ExecMode`]; with the default
//! `parallel` feature they fan out over rayon, otherwise they run
//! sequentially. Results are deterministic in either mode.

pub mod darboux;
pub mod exec;
pub mod expansions;
pub mod heun;
pub mod recurrence;
pub mod specfun;
pub mod verify;
