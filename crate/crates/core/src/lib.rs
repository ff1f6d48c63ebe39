//! The five-vertex model with scalar-product boundary conditions, treated
//! as a discrete log-gas.
//!
//! * [`exact`]: finite-size partition functions with exact rationals.
//! * [`asymptotics`]: free-energy densities, critical values and the
//!   scenario/regime classifier in the scaling limit.
//! * [`equilibrium`]: band end-points, equilibrium densities, resolvents and
//!   first moments of the constrained log-gas.
//! * [`verify`]: harness tying the finite and asymptotic levels together.

pub mod asymptotics;
pub mod equilibrium;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod verify;

pub use error::{Error, Result};
