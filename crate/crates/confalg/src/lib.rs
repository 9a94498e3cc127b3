//! Exact computation of the (associated-graded) compactly-supported
//! cohomology of unordered configuration spaces.
//!
//! Given a finite presentation of `H*_c(X)` as a graded-commutative algebra
//! with Frobenius weights, the engine builds the twisted free graded Lie
//! superalgebra `H*_c(X) ⊗ Free_Lie(V[-1])`, takes its weight-truncated
//! Chevalley homology weight by weight, and reports Betti tables with
//! cohomological degrees and Tate weights per configuration cardinality —
//! everything over exact rational arithmetic.
//!
//! Module map:
//!
//! * [`qlinalg`] — exact sparse linear algebra (ranks, kernels, homology);
//! * [`grvec`] — trigraded spaces, shifts, twists, Koszul symmetric powers;
//! * [`cdga`] — algebra presentations, validation, builtins, input format;
//! * [`freelie`] — free Lie superalgebras on super-Lyndon words;
//! * [`twist`] — the twisted Lie algebra `A ⊗ L`;
//! * [`chevalley`] — weight-truncated Chevalley complexes and homology;
//! * [`confspace`] — the per-cardinality orchestrator and stability reports.

pub mod cdga;
pub mod chevalley;
pub mod confspace;
pub mod freelie;
pub mod grvec;
pub mod qlinalg;
pub mod twist;

pub use cdga::{builtin, BuiltinId, GCAlgebra, SpaceMeta};
pub use chevalley::{ce_complex, ce_homology, BettiTable, ChainComplex};
pub use confspace::{
    conf_cohomology, default_generator, stability_report, ConfResult, StabilityReport, Verdict,
};
pub use freelie::{free_lie, graded_dimension_oracle, GLieAlgebra};
pub use grvec::{Bidegree, GradedSpace};
pub use qlinalg::{Rational, SparseMatrix};
pub use twist::tensor_lie;
