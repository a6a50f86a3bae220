//! Asymptotic analysis, power-profile optimization and finite-user simulation
//! of iterative soft interference cancellation for Gaussian random codes on
//! the real AWGN multiple-access channel.
//!
//! * [`numerics`] provides the stabilized scalar kernels (Gaussian tail,
//!   Gauss-Hermite rules, Marcum Q).
//! * [`asymptotic`] evaluates large-system block error probabilities and the
//!   residual-interference maps of soft cancellation.
//! * [`evolution`] iterates the multiuser-efficiency dynamical system.
//! * [`poweropt`] chooses user power profiles by linear programming.
//! * [`simulator`] runs the finite-user receiver on random Gaussian codebooks.

pub mod asymptotic;
pub mod error;
pub mod evolution;
pub mod numerics;
pub mod poweropt;
pub mod simulator;
pub mod units;

pub use asymptotic::{BoundKind, CodeSpec, EffectiveSnr};
pub use error::{Error, Result};
pub use evolution::{EvolutionState, PowerProfile, Trajectory};
pub use numerics::QuadratureRule;
