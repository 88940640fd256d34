//! Conformal maps of the upper half-plane onto regions above a graph, in
//! the Schwarz-integral form `H(z) = σ z + (1/π) ∫ (1/(t - z) - 1/t) ρ(t) dt`.

mod constant;
mod curve;
mod entire;
mod map;
mod mesh;

pub use constant::{compute_c, constant_report, ConstantReport, C_EXACT};
pub use curve::{gamma_b, omega_star_height, BoundaryCurve};
pub use entire::{entire_a_of_b, solve_entire, EntireOptions, EntireSolution};
pub use map::{eval_map, solve_halfplane_map, BoundaryDensity, HalfPlaneMap, SolveInfo};
pub use mesh::MeshSpec;
