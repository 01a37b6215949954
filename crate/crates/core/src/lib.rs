//! Decision procedure for the sentential calculus with identity, built on a
//! labelled tableau calculus.
//!
//! The pipeline: [`parser::parse`] turns concrete syntax into a desugared
//! [`formula::Formula`]; [`tableau::decide`] runs the calculus and either
//! closes every branch or reads a finite countermodel off the first open
//! fully expanded branch ([`model::extract_model`]); [`oracle::oracle_sat`]
//! is an independent brute-force reference used for differential testing;
//! [`transform::transform_t`] reduces a formula to a provability-equivalent
//! chain of simple identities.

pub mod equality;
pub mod export;
pub mod formula;
pub mod generate;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod tableau;
pub mod transform;

pub use equality::{AssertOutcome, ClashKind, EqualityStore, Label, Polarity};
pub use formula::{render, Formula};
pub use model::{check_model_wellformed, extract_model, verify_model, SciModel, Valuation};
pub use oracle::{enumerate_models_sat, oracle_sat, OracleVerdict};
pub use parser::{parse, ParseError};
pub use tableau::{decide, Mode, Options, ProofTree, Verdict};
pub use transform::transform_t;
