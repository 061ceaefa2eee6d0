//! Covolumes, discriminant bounds and the exhaustive search for arithmetic
//! fake compact Hermitian symmetric spaces of type A3.

pub mod arith;
pub mod bounds;
pub mod classify;
pub mod error;
pub mod fields;
pub mod ingest;
pub mod parahoric;
pub mod rational;
pub mod real;
pub mod report;
pub mod zeta;

pub use bounds::{BoundReport, LargeDkReport, MartinetTable};
pub use classify::{Assignment, CandidateReport, Classification, ClassifyOptions, Database, TConfiguration};
pub use error::{BoundsError, ClassifyError, FieldError, IngestError, ParahoricError, ZetaError};
pub use fields::{BaseField, ExtensionField, FieldPair, Place, SplittingType};
pub use parahoric::ParahoricCase;
pub use rational::ExactRational;
pub use real::HighPrecisionReal;
pub use zeta::character::DirichletCharacter;
pub use zeta::{NumericConfig, ScriptR};
