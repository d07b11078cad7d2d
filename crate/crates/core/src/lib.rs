//! Random-matrix analysis of dense network layers.
//!
//! This crate holds the pure numerical side of `mpsplit`:
//!
//! - [`mp`]: Marchenko–Pastur density, CDF, quantiles and support edges.
//! - [`tw`]: Tracy–Widom (β = 1) quantiles from an embedded table.
//! - [`spectral`]: Gram-matrix spectra and empirical spectral CDFs.
//! - [`bema`]: bulk-eigenvalue-matching edge estimation, spike counting and
//!   the bulk goodness-of-fit test.
//! - [`prune`]: SVD factorization, split planning and layer splitting.
//! - [`nn`]: a small dense ReLU network trained with mini-batch SGD.
//! - [`synth`]: seeded spiked-matrix generators.
//!
//! The crate is `no_std` with `alloc`. Enable the `std` feature to let the
//! linear-algebra backend use runtime CPU feature detection.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bema;
pub mod cycle;
pub mod dataset;
mod error;
mod math;
pub mod matrix;
pub mod mp;
pub mod nn;
pub mod prune;
pub mod spectral;
pub mod synth;
pub mod tw;

pub use bema::{bema_fit, goodness_of_fit, spike_count, BemaConfig, BemaResult, FitReport};
pub use dataset::{Dataset, Split};
pub use error::{Error, Result};
pub use matrix::{Matrix, WeightMatrix};
pub use mp::MpParams;
pub use nn::{Activation, Layer, Network, TrainConfig};
pub use prune::{decompose, plan_split, split, SplitDecision, SplitResult, SvdFactors};
pub use spectral::{symmetrized_spectrum, Esd};
pub use synth::{gen_spiked, DeterministicPart, SpikedMatrixSpec};
pub use tw::TwQuantileTable;
