//! ACM bundles, tilting bundles and their classification on a Geigle-Lenzing
//! projective plane of weight type (2,2,2,p).

pub mod bundle;
pub mod classify;
pub mod clique;
pub mod domain;
pub mod endo;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod oracle;
pub mod render;
pub mod sheaf;
pub mod stable;
pub mod symbolic;
pub mod tilting;
pub mod upset;
pub mod verify;

pub use bundle::{ExtCoord, IndecBundle};
pub use error::Error;
pub use lattice::{GradedDegree, TwistClass, Weight};
