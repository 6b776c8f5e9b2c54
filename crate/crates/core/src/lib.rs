pub mod alexander;
pub mod chain_torsion;
pub mod cli;
pub mod covering_links;
pub mod error;
pub mod formats;
pub mod group_ring;
pub mod linalg;
pub mod satellite;
pub mod torsion_quotient;

pub use error::{Error, Result};
pub use group_ring::{Exponent, LaurentPoly, MonomialUnit, Rational, RationalFunction};
