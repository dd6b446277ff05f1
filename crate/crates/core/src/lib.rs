//! Digital simulation of a PT-symmetric two-level system on a single qutrit.
//!
//! The crate is organised bottom-up:
//!
//! * [`qutrit`]: dense 2×2 / 3×3 complex algebra, states and the closed-form
//!   2×2 SVD.
//! * [`pt_model`]: closed-form physics of `H = σx + i r σz` valid on both
//!   sides of the exceptional point.
//! * [`block_encoding`]: the three-gate qutrit embedding of `V(t)/σ+` and the
//!   general `n → n+m` unitary dilation.
//! * [`transpiler`]: gate IR, native gate sets for trapped ions and
//!   transmons, and the two rewriting passes.
//! * [`experiment`]: shot sampling, readout confusion, per-ion
//!   miscalibration and `(r, t)` sweeps.

pub mod block_encoding;
mod error;
pub mod experiment;
pub mod pt_model;
pub mod qutrit;
pub mod transpiler;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
