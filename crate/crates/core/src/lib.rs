//! The category of finite-dimensional Hilbert spaces and linear contractions.
//!
//! * [`numkernel`]: dense linear algebra (SVD, polar decomposition, null and
//!   range bases) over ℝ or ℂ.
//! * [`concat`]: the category **Con** itself, with dagger, `⊗`, `⊕`,
//!   equalisers, kernels, factorisation and the constructions used to check
//!   its axioms.
//! * [`fractions`]: the localisation of **Con** at nonzero scalars, realised
//!   as formal fractions `[t/z]`, and its identification with bounded maps.
//! * [`colimits`]: finite directed colimits and truncated scalar chains.
//! * [`axiomsuite`]: random instance generators and the axiom / lemma
//!   verification harness.
//! * [`cli`]: the command-line front end behind the `daghilb` binary.

// `!(x > t)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod axiomsuite;
pub mod cli;
pub mod colimits;
pub mod concat;
pub mod error;
pub mod fractions;
pub mod numkernel;

pub use error::{Error, Result};
