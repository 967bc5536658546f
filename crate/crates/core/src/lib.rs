//! Exact Weyl group, affine Weyl group and quantum Bruhat graph combinatorics,
//! with an evaluator for the parahoric affine Deligne-Lusztig dimension formula.

pub mod cartan;
pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod weyl;
pub mod affine;
pub mod qbg;
pub mod context;
pub mod theorems;
pub mod dimension;

pub use cartan::{CartanType, Family};
pub use error::{Error, Result};
pub use rootsys::{CoweightBasis, CoweightQ, Coroot, Root, RootSystem, Q};
pub use weyl::{NodeSet, ParabolicSubset, WeylElem, WeylGroup};
pub use affine::{AffineElem, Lattice, LevelType};
pub use qbg::QbgGraph;
pub use context::{Budgets, Context};
