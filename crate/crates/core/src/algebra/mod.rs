//! Exact arithmetic: rationals, sparse polynomials, gcd, reduced rational
//! functions and their canonical text form.

pub mod gcd;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod ring;
pub mod text;

pub use gcd::gcd;
pub use poly::MultiPoly;
pub use ratfunc::RatFunc;
pub use rational::{binom, int, pochhammer, rat, Rational};
pub use ring::{Field, Ring};
pub use text::{parse_poly, parse_ratfunc};
