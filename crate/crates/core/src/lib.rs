//! Cohomology of dialgebras with an oriented group action.
pub mod cohomology;
pub mod config;
pub mod deformations;
pub mod degree1;
pub mod dialgebra;
pub mod error;
pub mod extensions;
pub mod io;
pub mod linalg;
pub mod oriented;
pub mod report;
pub mod trees;

pub use cohomology::{CohomologyResult, Engine};
pub use config::{EngineConfig, SignExponent};
pub use deformations::{DeformationEquivalence, TruncatedDeformation};
pub use degree1::Degree1Cochain;
pub use dialgebra::{Dialgebra, StructureTensor};
pub use error::{Error, Result};
pub use extensions::SingularExtension;
pub use io::Bundle;
pub use linalg::{Matrix, Rational, SparseMatrix};
pub use oriented::{OrientedDialgebra, OrientedGroup};
pub use report::Report;
pub use trees::{LeafOrientation, Tree};
