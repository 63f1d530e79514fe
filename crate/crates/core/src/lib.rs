//! Exact symbolic construction and verification of free-field realizations of
//! affine vertex algebras at collapsing levels.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`]: root systems, Weyl dimensions, Dynkin indices;
//! * [`liealg`]: matrix realizations of the classical algebras, parabolic data,
//!   invariant forms and the minimal `sl₂`-triple;
//! * [`vertex`]: normally ordered local fields, Wick commutators, a Fock-space
//!   mode oracle and the Zhu / C₂ projections;
//! * [`freefield`]: the free-field homomorphisms attached to parabolics with
//!   commutative nilradical, in general and in the explicit classical forms;
//! * [`orbits`]: nilpotent orbits of classical algebras and the correspondence
//!   induced by the Slodowy slice;
//! * [`levels`]: collapsing levels, the shifted level on the centralizer,
//!   central charges and the recursion for associated varieties;
//! * [`dsred`]: the BRST charge of minimal Drinfeld–Sokolov reduction;
//! * [`cli`]: table rendering, golden files and the command-line driver.

pub mod cli;
pub mod dsred;
pub mod error;
pub mod freefield;
pub mod liealg;
pub mod vertex;
pub mod levels;
pub mod linalg;
pub mod orbits;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
pub use rational::{q, Q};
