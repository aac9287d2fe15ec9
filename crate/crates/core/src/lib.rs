//! Linear-optical sampling engine and latent distribution generators.
//!
//! The crate computes exact boson-sampling output laws from matrix
//! permanents, samples them exactly with the chain rule, builds Haar-random
//! and time-bin loop interferometers, and turns samples into latent batches
//! for generative models alongside Gaussian and Bernoulli baselines.
//!
//! ```
//! use photonic_latents::{exact_distribution, InputSpec, UnitaryMatrix};
//!
//! let coupler = UnitaryMatrix::balanced_coupler();
//! let input = InputSpec::first_k(2, 2).unwrap();
//! let table = exact_distribution(&coupler, &input).unwrap();
//! // two identical photons never leave through different ports
//! let apart = table.entries().iter().find(|(c, _)| c.occupations() == [1, 1]).unwrap();
//! assert!(apart.1.abs() < 1e-12);
//! ```

pub mod diagnostics;
pub mod error;
pub mod fock;
pub mod formats;
pub mod haar;
pub mod interferometer;
pub mod latent;
pub mod matrix;
pub mod permanent;
pub mod rng;
pub mod sampler;

pub use diagnostics::{
    bench_sampling, bunching_fraction, l1_to_nearest_integer, tvd, BenchReport, EmpiricalDistribution,
};
pub use error::{Error, Result};
pub use fock::{Compositions, PhotonConfiguration};
pub use haar::haar_unitary;
pub use interferometer::{build_unitary, random_loop_spec, CircuitKind, CircuitSpec};
pub use latent::{gen_bernoulli, gen_gaussian, gen_photonic, CenteringPolicy, CircuitPolicy, LatentBatch, LatentKind};
pub use matrix::{repeated_submatrix, ComplexMatrix, UnitaryMatrix};
pub use permanent::{permanent_fast, permanent_naive};
pub use sampler::{
    apply_loss_and_postselect, exact_distinguishable_distribution, exact_distribution, sample_boson,
    sample_distinguishable, DistributionTable, InputSpec, Placement, SampleBatch,
};
