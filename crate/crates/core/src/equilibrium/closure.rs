//! Evaluator bundle for one point of the phase diagram.

use super::{density, endpoints, first_moment, resolvent, BandSupport, Density, Resolvent};
use crate::asymptotics::ScaledGeometry;
use crate::error::Result;

/// Support, density, resolvent and first moment of the equilibrium measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureClosure {
    pub support: BandSupport,
    pub density: Density,
    pub resolvent: Resolvent,
    pub first_moment: f64,
}

impl MeasureClosure {
    pub fn new(geom: &ScaledGeometry, x: f64) -> Result<Self> {
        Self::from_support(endpoints(geom, x)?)
    }

    pub fn from_support(support: BandSupport) -> Result<Self> {
        Ok(Self {
            density: density(&support),
            resolvent: resolvent(&support),
            first_moment: first_moment(&support)?,
            support,
        })
    }
}
