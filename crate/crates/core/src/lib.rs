//! Symbolic-numeric toolkit for triangular Schlesinger systems and the
//! Painleve VI and Garnier solutions they produce, with numerical period
//! checks on superelliptic curves.

pub mod algebra;
pub mod curve;
pub mod error;
pub mod garnier;
pub mod golden;
pub mod painleve;
pub mod periods;
pub mod quadrature;
pub mod schlesinger;

pub use error::{Error, Result};
