//! Exact constructive machinery for the surfaces and double equations that
//! appear in Diophantus' *Arithmetica*.
//!
//! Everything here is pure, allocation-backed arithmetic over the rationals
//! and small prime fields: no IO, no floating point. The std companion crate
//! `dioph` adds JSON serialization and the command-line front end.
//!
//! Module map:
//!
//! * [`rat`], [`poly`], [`multipoly`], [`modp`], [`arith`]: exact arithmetic
//!   over Q and F_p.
//! * [`double_eq`]: classification, the factor-and-split solver, Fermat's
//!   secant iteration and reduction modulo primes.
//! * [`surface`]: the six surface models with membership checks.
//! * [`param`]: the closed-form parametrizations and fibre solvers.
//! * [`local`]: Hilbert symbols, conic solubility and p-adic search.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod double_eq;
pub mod error;
pub mod local;
pub mod modp;
pub mod multipoly;
pub mod param;
pub mod poly;
pub mod rat;
pub mod surface;

pub use double_eq::{CurvePoint, DoubleEqClass, DoubleEquation, FactorPair, HeathCase};
pub use error::{Error, Inapplicable, Result};
pub use modp::ModPoly;
pub use multipoly::MultiPoly;
pub use poly::UniPoly;
pub use rat::Rat;
pub use surface::{Problem, RatPoint, SurfaceModel};
