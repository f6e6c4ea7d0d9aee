//! Exact computation of pattern-avoidance classes `S_n(Π)` and their
//! quasisymmetric generating functions `Q_n(Π) = Σ F_{Des σ}`, together with
//! Schur expansions, Robinson–Schensted machinery and a harness of named,
//! reproducible checks.

pub mod avoid;
pub mod error;
pub mod paperlab;
pub mod perm;
pub mod qsym;
pub mod tableau;

pub use error::{Error, Result};
pub use perm::{Composition, DescentSet, PatternSet, Permutation};
pub use qsym::{QSymElement, SchurExpansion, SymElement};
pub use tableau::{Partition, StandardTableau};
