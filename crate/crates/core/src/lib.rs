//! Numerical certification of sharp weighted Caffarelli–Kohn–Nirenberg
//! inequalities for curl-free vector fields and their second-order scalar
//! counterparts.
//!
//! The crate evaluates the weighted functionals of each inequality on the
//! explicit extremizer families and checks them against the closed-form
//! sharp constants, the expanding-the-square identities and the
//! extremizer equations.

pub mod constants;
pub mod error;
pub mod extremizers;
pub mod functionals;
pub mod profile;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use constants::{ParamPoint, RegionLabel};
pub use error::{Error, Result};
pub use functionals::FunctionalTriple;
pub use profile::{Jet, ScalarProfile, VectorProfileRadialAligned};
pub use quadrature::QuadratureSpec;
pub use extremizers::{ExtremizerFamily, ExtremizerSpec};
pub use verify::{run_verification, Tolerances, VerificationReport};
