//! Truncated reduced free products of finite-dimensional C*-algebras.
//!
//! The Fock space keeps words of length at most `max_len`. Operators are
//! compressions of the free actions; on words of length `< max_len` they act
//! exactly, which makes compression norms certified lower bounds.

pub mod factor;
pub mod khintchine;
pub mod noncb;
pub mod norm;
pub mod operator;
pub mod space;

pub use factor::FreeFactor;
pub use khintchine::{khintchine_check, norm_equivalence, KhintchineReport, KhintchineTerm, NormEquivalenceReport};
pub use noncb::{build_noncb_rep, cb_vs_bounded_probe, NonCbRep, NonCbReport};
pub use norm::{compression_norm, compression_profile, NormEstimate, NormOptions};
pub use operator::{free_action, vacuum, vacuum_state, AmplifiedOperator, FreeOperator, VacuumValue};
pub use space::{dim_cap_from_env, FockSpace, DEFAULT_DIM_CAP};
