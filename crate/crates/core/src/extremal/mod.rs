//! The cosine representation `f = 1 - L cos φ` of the extremal functions
//! and its verification.

mod critical;
mod entire;
mod phi;
mod plot;

pub use critical::{verify_critical_values, CriticalReport};
pub use entire::{entire_extremal_boundary, first_critical_point};
pub use phi::{phi_from_poly, PhiTransform};
pub use plot::{plot_data, PlotData};
