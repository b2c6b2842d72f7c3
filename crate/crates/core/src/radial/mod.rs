//! Spherically symmetric reduction: static and dynamic radial solvers, the
//! hedgehog lift and the autonomous equilibrium analysis.

pub mod dynamic;
pub mod equilibria;
pub mod hedgehog;
pub mod profile;
pub mod spline;
pub mod static_solver;

pub use dynamic::{discrete_energy, evolve_dynamic, Trajectory};
pub use equilibria::{autonomous_residual, equilibria, Equilibrium};
pub use hedgehog::{lift_hedgehog, Hedgehog, ProfileInterpolant, RadialFunction, RadialJet};
pub use profile::RadialProfile;
pub use spline::CubicSpline;
pub use static_solver::{potential_u, solve_static, solve_static_with, StaticParams, StaticSolution};
