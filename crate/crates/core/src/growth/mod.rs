//! Inverted orbits, `ν(n)`, word growth, orders and the circle coding `κ`.

pub mod ball;
pub mod kappa;
pub mod orbits;

pub use ball::{fingerprint_recount, growth_ball, periodicity_witness, pointwise_order, GrowthTable, PeriodicityWitness, DEFAULT_BUDGET};
pub use kappa::{circle_distance, kappa_numeric, semiconjugacy_residuals, KappaValue, PHI};
pub use orbits::{inverted_orbit, nu_exact, nu_sampled, prefix_images, FirstReturn, InvertedOrbitReport, NuTable, NuValue, NU_EXACT_BOUND};
