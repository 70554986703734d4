//! Mapping-class and knot-Floer invariants of fibered knots, computed from
//! combinatorial data.
//!
//! Two independent routes decide whether a monodromy is right-veering:
//!
//! * from a standard-form representative of the monodromy, through
//!   fractional Dehn twist coefficients ([`twist_calculus`]) or through a
//!   symplectic Floer dimension count after gluing on a cable
//!   ([`floer_symp`], [`cable_glue`]);
//! * from a reduced knot Floer complex, through the invariant `b`
//!   ([`cfk`], [`classify`]).
//!
//! [`surgery`] computes the next-to-top Floer homology of zero surgery on
//! the connected sums used to relate the two.

pub mod cable_glue;
pub mod cfk;
pub mod classify;
pub mod error;
pub mod floer_symp;
pub mod gf2;
pub mod ratio;
pub mod surface_map;
pub mod surgery;
pub mod twist_calculus;

pub use error::{Error, Result};
