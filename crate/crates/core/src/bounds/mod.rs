//! Completion to admissible sequences, the comparison factor and
//! finite-span distance bounds.

pub mod completion;
pub mod constants;
pub mod distance;
pub mod gram;

pub use completion::{complete_to_admissible, completion_report, Completion};
pub use constants::{
    e_of_r, e_partial, lambda_m_r, theta_psi_r, ComparisonFactor, FactorComponents, NormSource,
};
pub use distance::{
    distance_from_gram, distance_upper_bound, target_vector, Constraint, DistanceOptions,
    DistanceResult, Target, TargetData,
};
pub use gram::{gram_matrix, Gram, MAX_RATIO_DENOM};
