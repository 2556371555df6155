//! Generalized Chebyshev maps attached to Weyl groups, and the exact
//! criterion deciding when their reductions permute `F_q^n`.

pub mod arith;
pub mod error;
pub mod excep;
pub mod exppoly;
pub mod ffield;
pub mod matrix;
pub mod precise;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{Family, LieType, RootSystem, Weight};
pub use weyl::{WeylElement, WeylGroup};
