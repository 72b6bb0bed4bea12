//! Dirichlet characters, primes in arithmetic progressions and the zeros of
//! Dirichlet L-functions at small moduli.

mod ap;
mod characters;
mod lfunc;

pub use ap::*;
pub use characters::*;
pub use lfunc::*;
