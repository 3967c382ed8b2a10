//! Rooted flags, the flag expressions of rooted cuts, and the SDP built from them.
//!
//! A certificate bounds `D₂` from above for all large triangle-free graphs: every
//! cut's expected number of removed edges dominates `D₂`, so any convex combination
//! does too, and PSD flag products are nonnegative in the limit. If each constraint
//! graph's row stays below `2λ`, then `D₂ <= λn² + o(n²)`.

mod blocks;
mod certificate;
mod expression;
mod limit;
mod lp;
mod sdp;
mod sdpa;
mod types;

pub use blocks::product_block_matrices;
pub use certificate::{is_psd, rationalize_certificate, verify_certificate, Block, Certificate, Rejection, Verdict};
pub use expression::{cut_to_flag_expression, evaluate_expression, rooted_density, EvalForm, FlagExpression};
pub use limit::{c5_limit_densities, c5_limit_value};
pub use lp::{lp_certificate, MAX_CERTIFICATE_DENOMINATOR};
pub use sdp::{assemble_sdp, SdpProblem};
pub use sdpa::{emit_sdpa, SdpaData};
pub use types::{rooted_types, RootedType};
