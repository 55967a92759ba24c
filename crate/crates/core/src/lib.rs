//! Graded Lie algebras on two generators over prime fields: construction
//! from homogeneous presentations, thin cores, diamond analysis and the
//! experiment harness.

pub mod algebra;
pub mod analysis;
pub mod fp;
pub mod harness;
pub mod linalg;
pub mod presentation;

pub use algebra::{compute, BasisLabel, EngineError, GradedAlgebra, HomElement, ALGEBRA_SCHEMA};
pub use analysis::{
    full_report, AnalysisError, DiamondKind, DiamondRecord, Frame, ReportOptions, ThinReport,
    REPORT_SCHEMA,
};
pub use fp::{lucas_binomial, FpError, PrimeField, Scalar};
pub use harness::{ExperimentResult, ExperimentSpec, HarnessError, ResultsDocument, Verdict};
pub use presentation::{
    build_minus1, build_minus1_chain, build_theorem41, parse_relators, v_word, Letter,
    ParseError, Presentation, PresentationError, Relator, Word,
};
