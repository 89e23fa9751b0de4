//! Classical correlation, quantum discord, mutual information and
//! logarithmic negativity for the bipartite reductions of a Dirac field
//! mode shared between an inertial and a uniformly accelerated observer.
//!
//! The tripartite state lives on modes `A` (inertial), `I` (accelerated,
//! Rindler region I) and `II` (the causally disconnected region). Every
//! bipartite reduction is analysed by projectively measuring its left
//! factor and optimizing the measurement direction on the Bloch sphere.

pub mod error;
pub mod measures;
pub mod optimizer;
pub mod qmat;
pub mod rindler;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{CorrelationResult, MeasurementAngles, MeasurementOutcome};
pub use optimizer::{OptimizerConfig, OptimumReport};
pub use qmat::{ComplexMatrix, DensityMatrix, StateVector};
pub use rindler::{RindlerPair, UnruhParameter};
pub use sweep::{CorrelationRecord, PairSelection, SweepConfig};
