//! Numerical laboratory for finite quantum groups.
//!
//! A finite quantum group is a finite-dimensional Hopf *-algebra with a
//! faithful Haar state. This crate stores such objects as structure tensors
//! and provides their GNS and Wedderburn data, the convolution algebra of
//! functionals, corepresentations and their unitarization, the multiplicative
//! unitary and the dual quantum group, and a truncated free-product Fock
//! space for norm experiments.

pub mod blocks;
pub mod convolution;
pub mod corep;
pub mod duality;
pub mod element;
pub mod error;
pub mod fock;
pub mod gns;
pub mod group;
pub mod json;
pub mod linalg;
pub mod multiplier;
pub mod quantum_group;

pub use blocks::BlockDecomposition;
pub use convolution::Functional;
pub use corep::Corepresentation;
pub use element::{AlgebraElement, Qg};
pub use error::{QgError, Result};
pub use gns::GnsData;
pub use group::GroupTable;
pub use quantum_group::{FiniteQuantumGroup, ValidationReport, DEFAULT_TOL};
