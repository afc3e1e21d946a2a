//! Orthosymplectic Kostka polynomials, odd-root partition functions,
//! `SO(N-1, O)`-orbit combinatorics and moment-map identities, all in exact
//! arithmetic.

pub mod character;
pub mod error;
pub mod euler;
pub mod kostka;
pub mod moment;
pub mod odd_roots;
pub mod orbits;
pub mod par;
pub mod poly;
pub mod root_data;

pub use error::{Error, Result};
pub use odd_roots::{BiWeight, OspRootData, Parity};
pub use poly::QPoly;
pub use root_data::{Family, GroupType, ProductType, Weight};
