//! Exact combinatorial local lemma.
//!
//! Finite spaces and bad events are modeled exactly ([`space`], [`event`]),
//! measured by counting over support projections ([`measure`]), and fed
//! to certificate checkers ([`checker`]) and resampling solvers
//! ([`solver`]). [`instances`] encodes the application families and
//! [`format`] reads and writes instance files.

pub mod chain;
pub mod checker;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod event;
pub mod format;
pub mod instance;
pub mod instances;
pub mod measure;
pub mod rational;
pub mod solver;
pub mod space;

pub use enumerate::EnumConfig;
pub use error::{Error, Result};
pub use event::{BadEvent, EventKind, Literal};
pub use instance::{Instance, InstanceGate};
pub use rational::Rational;
pub use space::{Assignment, PermutationSpace, Space, VariableSpace};
