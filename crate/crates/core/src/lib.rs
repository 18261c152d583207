//! Exact reconstruction and certification of the icosahedral genus-10 surface, the
//! V-isotypic part of its homology, the nodal monodromies acting there, and the
//! identification of the monodromy group with Gamma_1(3).
//!
//! Everything is computed over Z, Q or Q(sqrt 5); nothing uses floating point.

pub mod arith;
pub mod certify;
pub mod icosa;
pub mod monodromy;
pub mod replat;
pub mod surface;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
