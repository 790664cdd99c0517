//! Bound states of the Schrödinger equation with the Manning-Rosen potential
//! plus a ring-shaped non-central term.
//!
//! The radial problem is solved in closed form under the exponential
//! approximation of the centrifugal barrier,
//! `1/r² ≈ (1/b²)[C₀ + e^{-r/b}/(1 - e^{-r/b})²]`, and the polar-angle problem
//! exactly. The [`oracle`] module re-derives every energy with an independent
//! Numerov shooting solver.
//!
//! All numerical modules are generic over [`Scalar`]; the `*64` aliases below
//! fix the scalar to `f64`, which is what the tables and the CLI use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod constraints;
pub mod error;
pub mod golden;
pub mod oracle;
pub mod quadrature;
pub mod radial;
pub mod scalar;
pub mod specfun;
pub mod verify;

pub use angular::{angular_wavefunction, solve_angular, AngularSolution, RingParams};
pub use constraints::{check_bound_state, check_reality, check_state, feasible_region, FeasibilityReport};
pub use error::{Error, Result};
pub use oracle::{approximation_error_table, numerov_solve, ApproxRow, CentrifugalMode, NumerovConfig, OracleResult};
pub use radial::{
    centrifugal_approx, energy_level, energy_level_for_l, exact_centrifugal, normalization_constant,
    radial_wavefunction, PotentialParams, RadialSolution,
};
pub use scalar::Scalar;
pub use specfun::{hyp2f1_terminating, jacobi_eval, log_gamma, JacobiParams};

pub type PotentialParams64 = PotentialParams<f64>;
pub type RadialSolution64 = RadialSolution<f64>;
pub type RingParams64 = RingParams<f64>;
pub type AngularSolution64 = AngularSolution<f64>;
pub type NumerovConfig64 = NumerovConfig<f64>;
pub type OracleResult64 = OracleResult<f64>;
pub type JacobiParams64 = JacobiParams<f64>;

pub type PotentialParams32 = PotentialParams<f32>;
pub type RingParams32 = RingParams<f32>;
