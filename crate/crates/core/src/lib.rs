//! Exact computations with representation rings of compact Lie groups:
//! character lattices of subtori, Weyl group actions, biquotient conditions,
//! and Tor groups of representation rings via Koszul homology.

pub mod biquot;
pub mod charlat;
pub mod diagtor;
pub mod error;
pub mod grob;
pub mod intlin;
mod laurent;
pub mod toraltor;
pub mod weyl;

pub use error::{Error, Result};
