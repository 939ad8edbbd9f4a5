//! Exact-arithmetic workbench for polymatroids on small ground sets.
//!
//! The crate builds polymatroid extensions by convolving a ranked lattice of
//! subsets with an additive measure, and uses that to produce certificates
//! that a polymatroid with a non-principal modular cut has two extensions
//! without a common amalgam.
//!
//! ```
//! use polyconv::{extensions::certify_nonsticky, fixtures, Verdict};
//!
//! let cert = certify_nonsticky(&fixtures::p3()).unwrap();
//! assert_eq!(cert.verdict, Verdict::NotSticky);
//! let w = cert.witness.unwrap();
//! assert_eq!(w.comm_value.to_string(), "0");
//! assert_eq!(w.ing_value.to_string(), "-1");
//! ```

pub mod cli;
pub mod convolution;
pub mod cuts;
pub mod cyclic;
pub mod error;
pub mod extensions;
mod feasibility;
pub mod fixtures;
pub mod inequalities;
pub mod setcore;

pub use error::{Error, Result};
pub use extensions::{ObstructionCertificate, Verdict};
pub use setcore::{GroundSet, Measure, Polymatroid, Ratio, SetFunction, Subset};
