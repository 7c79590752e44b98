//! Irreducible cyclic orbit codes in the finite Grassmannian.
//!
//! * [`gfq`]: prime and extension field arithmetic.
//! * [`polyring`]: polynomials, irreducibility, order, companion matrices.
//! * [`matspace`]: matrices, canonical subspaces, the subspace distance.
//! * [`fieldmap`]: the map between `F_q^n` and `F_{q^n}`, discrete logs, orbits.
//! * [`orbitcode`]: orbit generation, spreads, predictions and the brute-force oracle.

pub mod error;
pub mod fieldmap;
pub mod gfq;
pub mod matspace;
pub mod orbitcode;
pub mod polyring;

pub use error::{Error, Result};
pub use fieldmap::{ExponentProfile, ExtensionContext, OrbitPartition};
pub use gfq::{field_make, FieldElement, FieldSpec};
pub use matspace::{Mat, Subspace};
pub use orbitcode::{AnalysisMode, AnalysisReport, DifferenceMultiset, OrbitCode};
pub use polyring::Poly;
