//! Closed-form and algorithmic bounds on `D₂` for triangle-free graphs.

mod c5blowup;
mod efps;
mod peel;
mod regime;
mod scaling;

pub use c5blowup::{c5_blowup_d2, c5_blowup_edge_optimum, C5BlowUpProfile, MAX_OPTIMUM_TOTAL};
pub use efps::{efps_bound, efps_branches, efps_grid, efps_within_n2_over_18, GridReport};
pub use peel::{
    extend_bipartition, lemma1_bound, peel, PeelConfig, PeelStage, PeelTrace, StopReason,
};
pub use regime::{theorem3_regime, Regime, RegimeReport, RegimeThresholds};
pub use scaling::{blowup_scaling_check, haggkvist_premise, HaggkvistReport, ScalingReport};
