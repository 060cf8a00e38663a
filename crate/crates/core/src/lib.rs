//! Gowers uniformity norms and generalized additive energies on discrete
//! cubes, the sharp exponents `t_{k,n}` and `p_{k,n} = 2^k / t_{k,n}`, and
//! the entropy and majorization facts behind their asymptotics.

pub mod asymptotics;
pub mod cache;
pub mod entropy;
pub mod error;
pub mod format;
pub mod gowers;
pub mod io;
pub mod lattice;
pub mod solver;
pub mod terms;
pub mod verify;

pub use error::{GcubeError, Result};
pub use lattice::{CubeSet, ExactCount, LatticeFunction, LatticePoint};
pub use solver::{ExponentPair, SolverConfig};
pub use terms::SimplexVector;
