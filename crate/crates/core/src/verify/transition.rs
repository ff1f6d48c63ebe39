//! Order of the phase transitions, from one-sided finite differences of `Φ`.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{critical_values, phi, CriticalPoint, ScaledGeometry};
use crate::equilibrium::{endpoints, first_moment};
use crate::error::{invalid, Result};

/// Default stencil widths for the refinement study.
pub const DEFAULT_STENCILS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Finite-difference data on both sides of a critical point at one stencil
/// width, in the variable `s = log x`. Jumps are right minus left.
///
/// The third derivative is taken as the second difference of the closed-form
/// first moment `E = dΦ/ds`; the pure third difference of `Φ` is kept in
/// `phi_third_jump` for comparison (its rounding floor is `noise[3]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionProbe {
    pub point: CriticalPoint,
    pub x_star: f64,
    pub stencil_h: f64,
    pub value_jump: f64,
    pub first_jump: f64,
    pub second_jump: f64,
    pub third_derivative_left: f64,
    pub third_derivative_right: f64,
    pub jump: f64,
    pub phi_third_jump: f64,
    /// Rounding floors `64 ε |Φ| / h^k` for `k = 0..=3`; the last entry is
    /// reused for `jump` as `64 ε |E| / h²`.
    pub noise: [f64; 5],
}

struct Side {
    value: f64,
    first: f64,
    second: f64,
    third: f64,
    phi_third: f64,
}

fn side(geom: &ScaledGeometry, s: f64, h: f64, dir: f64) -> Result<Side> {
    let at = |k: f64| phi(geom, (s + dir * k * h).exp());
    let moment = |k: f64| first_moment(&endpoints(geom, (s + dir * k * h).exp())?);
    Ok(Side {
        value: 2.0 * at(1.0)? - at(2.0)?,
        // First and second differences centred a distance h from the boundary.
        first: dir * (at(1.5)? - at(0.5)?) / h,
        second: (at(2.0)? - 2.0 * at(1.0)? + at(0.0)?) / (h * h),
        // Third derivatives centred at 2h.
        third: (moment(3.0)? - 2.0 * moment(2.0)? + moment(1.0)?) / (h * h),
        phi_third: dir * (at(3.5)? - 3.0 * at(2.5)? + 3.0 * at(1.5)? - at(0.5)?) / (h * h * h),
    })
}

/// Probes the transition at `which` for each stencil width in `h_list`.
pub fn transition_order(geom: &ScaledGeometry, which: CriticalPoint, h_list: &[f64]) -> Result<Vec<TransitionProbe>> {
    let crit = critical_values(geom)?;
    let x_star = crit
        .get(which)
        .ok_or_else(|| invalid(format!("{} does not exist for this geometry", which.name())))?;
    let s_star = x_star.ln();
    let phi_scale = phi(geom, x_star)?.abs().max(1.0);
    let e_scale = first_moment(&endpoints(geom, x_star)?)?.abs().max(1.0);
    h_list
        .iter()
        .map(|&h| {
            if !(h > 0.0) {
                return Err(invalid("stencil widths must be positive"));
            }
            let left = side(geom, s_star, h, -1.0)?;
            let right = side(geom, s_star, h, 1.0)?;
            let floor = 64.0 * f64::EPSILON * phi_scale;
            Ok(TransitionProbe {
                point: which,
                x_star,
                stencil_h: h,
                value_jump: right.value - left.value,
                first_jump: right.first - left.first,
                second_jump: right.second - left.second,
                third_derivative_left: left.third,
                third_derivative_right: right.third,
                jump: right.third - left.third,
                phi_third_jump: right.phi_third - left.phi_third,
                noise: [
                    floor,
                    floor / h,
                    floor / (h * h),
                    floor / (h * h * h),
                    64.0 * f64::EPSILON * e_scale / (h * h),
                ],
            })
        })
        .collect()
}

/// Summary of a refinement study, probes ordered from coarse to fine.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionVerdict {
    pub value_vanishes: bool,
    pub first_vanishes: bool,
    pub second_vanishes: bool,
    pub third_vanishes: bool,
    /// Jump of the third derivative at the finest stencil.
    pub third_jump: f64,
    /// `(max - min) / |finest|` over the third-derivative jumps.
    pub third_variation: f64,
    /// Lower derivatives continuous and a stable nonzero third-derivative jump.
    pub third_order: bool,
}

/// A jump sequence tends to zero if each refinement at least halves it or
/// drops it below the rounding floor, and the finest value is 5% of the
/// coarsest or below the floor.
fn vanishes(jumps: &[f64], floors: &[f64]) -> bool {
    let j: Vec<f64> = jumps.iter().map(|v| v.abs()).collect();
    let steps = j
        .windows(2)
        .zip(&floors[1..])
        .all(|(w, &floor)| w[1] <= (0.5 * w[0]).max(floor));
    match (j.first(), j.last(), floors.last()) {
        (Some(&first), Some(&last), Some(&floor)) => steps && last <= (0.05 * first).max(floor),
        _ => true,
    }
}

pub fn assess(probes: &[TransitionProbe]) -> TransitionVerdict {
    let column = |k: usize| -> (Vec<f64>, Vec<f64>) {
        probes
            .iter()
            .map(|p| {
                let v = [p.value_jump, p.first_jump, p.second_jump, p.jump][k];
                (v, p.noise[if k == 3 { 4 } else { k }])
            })
            .unzip()
    };
    let check = |k: usize| {
        let (j, f) = column(k);
        vanishes(&j, &f)
    };
    let (third, floors) = column(3);
    let third_jump = third.last().copied().unwrap_or(0.0);
    let (lo, hi) = third
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let third_variation = (hi - lo) / third_jump.abs();
    let (value_vanishes, first_vanishes, second_vanishes) = (check(0), check(1), check(2));
    let nonzero = third_jump.abs() > 2.0 * floors.last().copied().unwrap_or(0.0);
    TransitionVerdict {
        value_vanishes,
        first_vanishes,
        second_vanishes,
        third_vanishes: vanishes(&third, &floors),
        third_jump,
        third_variation,
        third_order: value_vanishes && first_vanishes && second_vanishes && nonzero && third_variation <= 0.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_third_order_at_both_points() {
        let g = ScaledGeometry::symmetric(2.0).unwrap();
        for which in [CriticalPoint::Xc, CriticalPoint::XcTilde] {
            let probes = transition_order(&g, which, &DEFAULT_STENCILS).unwrap();
            let v = assess(&probes);
            assert!(v.third_order, "{which:?}: {v:?} {probes:?}");
        }
    }

    #[test]
    fn asymmetric_signature() {
        let g = ScaledGeometry::new(2.0, 3.0).unwrap();
        assert!(assess(&transition_order(&g, CriticalPoint::Xc, &DEFAULT_STENCILS).unwrap()).third_order);
        for which in [CriticalPoint::X1, CriticalPoint::X2] {
            let v = assess(&transition_order(&g, which, &DEFAULT_STENCILS).unwrap());
            assert!(v.third_vanishes && !v.third_order);
        }
    }

    #[test]
    fn smooth_point_has_no_jump() {
        // Away from any transition the same stencils see nothing.
        let probes = transition_order(&ScaledGeometry::new(2.0, 3.0).unwrap(), CriticalPoint::X2, &DEFAULT_STENCILS).unwrap();
        let v = assess(&probes);
        assert!(v.value_vanishes && v.first_vanishes && v.second_vanishes && v.third_vanishes, "{v:?} {probes:?}");
    }

    #[test]
    fn missing_point_is_rejected() {
        let g = ScaledGeometry::symmetric(2.0).unwrap();
        assert!(transition_order(&g, CriticalPoint::X1, &DEFAULT_STENCILS).is_err());
    }
}
