pub mod alternant;
pub mod code;
pub mod decoder;
pub mod error;
pub mod experiment;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod poly;

pub use alternant::{feasibility_probe, AlternantCode, ProbeReport};
pub use code::{ErrorPattern, GeneratorKind, GoppaCode, MagnitudeDist};
pub use decoder::{decode, Candidate, DecodeOutcome, Decoder, Locator};
pub use error::{Error, Result};
pub use experiment::{run_trials, success_prob_model, TrialConfig, TrialReport};
pub use field::{FieldCtx, FqElem};
pub use lattice::{pivot_index, PolyMatrix, Reduction, ReductionStats};
pub use poly::{Degree, Poly, PthRootMod};
