//! Exact arithmetic for positive definite integral ternary quadratic forms
//! of level 4N (N odd squarefree).

pub mod arith;
pub mod clifford;
pub mod error;
pub mod forms;
pub mod genera;
pub mod hurwitz;
pub mod lattice;
pub mod local;
pub mod rational;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use forms::{FormInvariants, TernaryForm};
pub use rational::Rational;
