//! Ext algebras of finite dimensional monomial path algebras: the multiplicative basis indexed by
//! maximal overlap sequences, closed walks along it, the graded centre modulo nilpotence and the
//! Hochschild cocycles realizing central elements.

pub mod algebra;
pub mod centre;
pub mod ext;
pub mod format;
pub mod hochschild;
pub mod linalg;
pub mod overlap;
pub mod quiver;
pub mod report;
pub mod scalar;
pub mod walks;

pub use algebra::{AlgebraError, MonomialAlgebra};
pub use centre::{CentreError, ClassData, QuotientOptions, QuotientReport};
pub use ext::{ExtElement, ExtError};
pub use hochschild::{build_chi, verify_cocycle, CochainChi, HochschildError};
pub use format::{load_algebra, AlgebraFile, FormatError};
pub use overlap::{is_overlap_relation, BasisError, Chain, Limits, Link, OverlapSequence, Record, ResolutionBasis};
pub use quiver::{compose, conjugate_decomposition, is_subpath, Path, Quiver, QuiverError};
pub use scalar::{Field, Scalar};
pub use walks::{Stability, StabilityReport, WalkClass, WalkError};
