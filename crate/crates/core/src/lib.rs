//! Rate regions in (classical, quantum, entanglement) space.
//!
//! The crate covers the whole numerical pipeline behind three-way resource
//! trade-offs: finite-dimensional states and channels, entropic functionals,
//! the two σ-state constructions that feed the one-shot rate formulas,
//! polyhedral geometry of rate regions, the unit-resource region, converse
//! bound predicates, a resource-inequality mini language and seeded sweeps
//! over ensembles and instruments.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the companion `qtriple-cli` crate.
#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assembly;
pub mod channel;
pub mod entropy;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod optimizer;
pub mod ri;
pub mod state;
pub mod tradeoff;
pub mod unit;
pub mod zoo;

pub use assembly::{Ensemble, Instrument, SigmaDynamic, SigmaStatic};
pub use channel::{Isometry, QuantumChannel};
pub use error::Error;
pub use geometry::{OrthantSpec, RateRegion, RateTriple, Ray};
pub use state::{DensityMatrix, PureState, SubsystemLabel};

pub type Result<T, E = Error> = core::result::Result<T, E>;
