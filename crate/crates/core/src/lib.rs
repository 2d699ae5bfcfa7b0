#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Monotones of the modular Hamiltonian, majorization decision procedures,
//! relative and thermodynamic bounds, Landauer erasure ladders, free-fermion
//! chain entanglement and CFT scaling-function predictions.

pub mod cftanalytic;
pub mod erasure;
pub mod error;
pub mod fermichain;
pub mod monotones;
pub mod numerics;
pub mod orderlab;
pub mod relative;
pub mod spectra;

pub use cftanalytic::{CftParams, CrossingQuantity};
pub use error::{Error, Result};
pub use erasure::ErasureReport;
pub use fermichain::{BlockOccupations, ChainModel, ChainSpec, PresetState};
pub use monotones::{ExtremalPoly, GammaMonotone, ModularStats, ShiftParams};
pub use orderlab::{Family, OrderVerdict, Verdict};
pub use relative::{RelativeStats, ThermalSpec};
pub use spectra::{CommutingPair, Spectrum};
