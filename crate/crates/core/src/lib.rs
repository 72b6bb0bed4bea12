//! A desk-scale laboratory for the zeros of the Riemann zeta function, the
//! primes, and the statistics that relate the two.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`] holds the scalar special functions (complex log-gamma,
//!   logarithmic integral, quadrature) the engines build on.
//! * [`zeta`] evaluates the Riemann–Siegel phase and the Hardy Z function;
//!   [`zeros`] isolates, refines and certifies zeros on the critical line and
//!   [`cache`] persists them.
//! * [`primes`] is the segmented sieve and the prime-gap machinery.
//! * [`spacing`] turns zero lists and gap streams into spacing statistics,
//!   [`duality`] pairs the n-th prime with the n-th zero.
//! * [`dirichlet`] repeats the whole story for arithmetic progressions and
//!   Dirichlet L-functions at small moduli.

pub mod cache;
pub mod dirichlet;
pub mod duality;
pub mod error;
mod isolate;
pub mod primes;
pub mod spacing;
pub mod special;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use isolate::{FlaggedBlock, ZeroSearch};
pub use zeros::{ZeroVerification, ZetaZero};
