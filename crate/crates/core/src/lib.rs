//! Non-Markovian decoherence of a single quantum dot whose source and drain
//! leads are joined by a tunnelling junction (coherent feedback).
//!
//! The crate computes the Lorentzian memory kernels with and without the
//! junction, the three poles and residues of the Laplace-domain Green's
//! function, the amplitude |g(t)|, and root loci over the feedback strength r,
//! the noise strength η or the junction phase θ. Two independent time-domain
//! solvers of the amplitude equation serve as oracles for the closed form.
//!
//! All quantities use ħ = 1: energies and frequencies in μeV, time in ħ/μeV.
//!
//! ```
//! use qdot_feedback::{FeedbackParams, GreensAnalytic, PhysicalParams};
//!
//! let dot = PhysicalParams::default();
//! let fb = FeedbackParams::new(0.3 * dot.omega_s, 0.0)?;
//! let open = GreensAnalytic::new(&dot, &FeedbackParams::open_loop())?;
//! let closed = GreensAnalytic::new(&dot, &fb)?;
//! assert!(closed.slow_rate() > open.slow_rate());
//! assert!(closed.evaluate(60.0).norm() > open.evaluate(60.0).norm());
//! # Ok::<(), qdot_feedback::Error>(())
//! ```

pub mod commands;
pub mod config;
pub mod cubic;
pub mod error;
pub mod export;
pub mod greens;
pub mod kernel;
pub mod locus;
pub mod params;
pub mod reproduce;
pub mod volterra;

pub use config::{ConfigOverrides, OutputFormat, RunConfig};
pub use error::{Error, Result};
pub use greens::{
    asymptotic_poles, closed_form_poles, cubic_coefficients, markovian_pole, residues,
    solve_poles, CubicCoefficients, GreensAnalytic, Mode,
};
pub use kernel::{
    closed_loop_kernel, effective_splitting, junction_offset, lorentzian_spectrum, mixing_angle,
    open_loop_kernel, split_spectra, transition_matrix, KernelModel, KernelTerm, TransitionMatrix,
};
pub use locus::{
    amplitude_comparison, decoherence_metric, sweep_poles, AmplitudeRow, LocusTrace,
    SweepParameter, SweepSpec,
};
pub use params::{FeedbackParams, PhysicalParams};
pub use reproduce::{reproduce, Figure};
pub use volterra::{
    compare_solutions, solve_exponential_ode, solve_quadrature, Scheme, SolverReport, TimeSeries,
};
