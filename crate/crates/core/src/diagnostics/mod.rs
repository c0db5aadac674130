//! Boundedness evidence for the multiplication operator: pencil sequences,
//! ratio tests, domination constants, weight extrema and zero radii.

pub mod checks;
pub mod domination;
pub mod sequences;
pub mod trend;
pub mod weights;

pub use checks::{
    corollary7_check, hull_containment, sobolev_zero_radius, support_relation,
    zeros_within_multnorm, Role, RoleVerdictReport, SobolevRadius, SupportRelation, Verdict,
};
pub use domination::{
    domination_check, tail_sum_family, theorem1_bound, DominationReport, PairDomination,
    TailSumReport,
};
pub use sequences::{
    eigen_sequence, multnorm_sequence, ratio_sequence, EigenRow, EigenSequence, MultNormRow,
    MultNormSequence, RatioRow, RatioSequence,
};
pub use trend::{classify_trend, Trend};
pub use weights::{esd_density_check, weight_extrema};
