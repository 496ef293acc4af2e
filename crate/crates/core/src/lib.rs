//! Exact computations with polar maps of projective hypersurfaces.
//!
//! The crate provides, over arbitrary-precision rationals:
//!
//! - a sparse multivariate polynomial ring with derivatives, evaluation,
//!   canonical forms, and a text grammar ([`poly`], [`parse`]);
//! - polar polynomials, degree-`k` polar cycles and their Chow coordinates,
//!   and the generalized Euler and reciprocity identity checks ([`polar`]);
//! - Buchberger's algorithm, projective emptiness tests, degrees of
//!   zero-dimensional ideals, and elimination ([`grobner`]);
//! - hypersurface-level analyses: polar-map regularity, cone detection,
//!   image degree and dimension, and polar class integers ([`geometry`]);
//! - plane-curve specializations: Hessians, quadric discriminants,
//!   Sylvester resultants, and flex enumeration ([`curves`]);
//! - contour extraction for plots, the one deliberately approximate
//!   corner of the crate ([`plot`]).

pub mod curves;
pub mod error;
pub mod geometry;
pub mod grobner;
pub mod linalg;
pub mod multi_index;
pub mod order;
pub mod parse;
pub mod plot;
pub mod point;
pub mod polar;
pub mod poly;
pub mod rat;

pub use error::{Error, ErrorClass, Result};
pub use multi_index::MultiIndex;
pub use order::MonomialOrder;
pub use point::ProjPoint;
pub use poly::Poly;
pub use rat::{Int, Rat};
