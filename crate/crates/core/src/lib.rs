//! Majorization-based uncertainty bounds and entanglement detection for
//! finite-dimensional quantum systems.
//!
//! The crate is organized around the majorization partial order on
//! probability vectors. [`probvec`] implements the order itself together
//! with the lattice operations (infimum and supremum), [`entropy`] the
//! Schur-concave scalar measures that respect it, [`quantum`] the states,
//! measurements, and linear algebra that produce probability vectors, and
//! [`bounds`] the optimizers that compute measurement uncertainty bounds
//! over all states and over separable states. [`detectors`] combines these
//! into entanglement detection criteria: a probability vector that escapes
//! the separable-state bound certifies entanglement.
//!
//! The core is `no_std`-compatible (allocation required); file formats and
//! the command-line interface live in the companion `majdet-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod bounds;
pub mod detectors;
pub mod entropy;
pub mod probvec;
pub mod quantum;

pub use bounds::{BoundResult, MeasurementSet, OptimizerConfig};
pub use detectors::{SubsystemDisorder, ThresholdPoint, Verdict, VerdictStatus};
pub use entropy::EntropyMeasure;
pub use probvec::{MajOrder, ProbVec};
pub use quantum::{ComplexMatrix, DensityMatrix, Observable, Povm, PureState};
