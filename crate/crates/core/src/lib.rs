//! Algebra over the field with one element: rigs, matrix 𝔽-rings, generalized
//! rings, δ-calculus terms, differentials, zeta volumes and spectra.

pub mod acceptance;
pub mod delta;
pub mod differentials;
pub mod error;
pub mod fin;
pub mod finite_ring;
pub mod fring;
pub mod genring;
pub mod norms;
pub mod report;
pub mod rig;
pub mod spectra;
pub mod zeta;

pub use delta::{RuleSet, Term};
pub use error::{Error, Result};
pub use fin::{FinSet, PartialBijection};
pub use finite_ring::TableRig;
pub use fring::RigMatrix;
pub use genring::{Elem, FiberVec, GenRing, GenRingOps};
pub use report::{LawReport, Report};
pub use rig::{Rig, RigElem, RigOps};
