//! Closed-form asymptotic laws and their comparison with solver output.

mod laws;
mod levy;
mod trend;

pub use laws::{
    a_m_of, b_m_predict, bern_scaled, bern_target, c_from_limit, eq_a_target, sigma_of, t1_scaled,
    t1_target, t2_scaled, t2_target, tri_b, AsymptoticParams,
};
pub use levy::{
    levy_distance, levy_distance_with, levy_fixed_point, predicted_fixed_point, LevyPoint,
};
pub use trend::{aitken, sweep, trend_report, SweepKind, SweepRow, TrendReport};
