//! Exact sweeps over small finite models: the two τ representations and the
//! structural identities of `P`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{
    binomial, leading_coefficient_from_plane_partitions, p_at_one_from_plane_partitions, p_polynomial,
    tau_hankel, tau_loggas, FiniteModel,
};

/// Grid of `(N, M, L, x)` for the exact sweeps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub max_n: u64,
    pub l_range: (u64, u64),
    pub m_range: (u64, u64),
    /// Points as `(numerator, denominator)`.
    pub xs: Vec<(i64, i64)>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            max_n: 4,
            l_range: (3, 9),
            m_range: (2, 9),
            xs: vec![(1, 3), (1, 2), (1, 1), (2, 1), (3, 1)],
        }
    }
}

impl SweepSpec {
    /// Every valid model in the grid, ordered by `(N, M, L)`.
    pub fn models(&self) -> Vec<FiniteModel> {
        let mut out = Vec::new();
        for n in 1..=self.max_n {
            for m in self.m_range.0..=self.m_range.1 {
                for l in self.l_range.0..=self.l_range.1 {
                    if let Ok(model) = FiniteModel::new(n, m, l) {
                        out.push(model);
                    }
                }
            }
        }
        out
    }

    pub fn points(&self) -> Vec<BigRational> {
        self.xs
            .iter()
            .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect()
    }
}

/// Outcome of one model in a sweep; `failures` names each violated check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCheck {
    pub n: u64,
    pub m: u64,
    pub l: u64,
    pub failures: Vec<String>,
}

impl ModelCheck {
    pub fn key(&self) -> String {
        format!("N={},M={},L={}", self.n, self.m, self.l)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub checks: Vec<ModelCheck>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ModelCheck::passed)
    }

    pub fn first_counterexample(&self) -> Option<&ModelCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

fn run(spec: &SweepSpec, check: impl Fn(&FiniteModel, &[BigRational]) -> Vec<String> + Sync) -> SweepReport {
    let points = spec.points();
    let checks = spec
        .models()
        .par_iter()
        .map(|model| ModelCheck {
            n: model.n(),
            m: model.m(),
            l: model.l(),
            failures: check(model, &points),
        })
        .collect();
    SweepReport { checks }
}

fn describe<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Exact equality `τ_hankel = τ_loggas` on every model and point.
pub fn equivalence_sweep(spec: &SweepSpec, budget: u128) -> SweepReport {
    run(spec, |model, points| {
        points
            .iter()
            .filter_map(|x| {
                let outcome = describe(tau_hankel(model, x))
                    .and_then(|h| describe(tau_loggas(model, x, budget)).map(|g| (h, g)));
                match outcome {
                    Ok((h, g)) if h == g => None,
                    Ok((h, g)) => Some(format!("x={x}: hankel {h} != log-gas {g}")),
                    Err(e) => Some(format!("x={x}: {e}")),
                }
            })
            .collect()
    })
}

/// Structural identities of `P`: normalization and degree (checked inside
/// [`p_polynomial`]), the `L ↔ M+1` symmetry, `P(1)` and the leading
/// coefficient against plane-partition counts.
pub fn structure_sweep(spec: &SweepSpec) -> SweepReport {
    run(spec, |model, _| {
        let mut failures = Vec::new();
        let p = match p_polynomial(model) {
            Ok(p) => p,
            Err(e) => return vec![e.to_string()],
        };
        match p_polynomial(&model.dual()) {
            Ok(q) if q == p => {}
            Ok(_) => failures.push("coefficients differ from the L <-> M+1 dual".into()),
            Err(e) => failures.push(format!("dual: {e}")),
        }
        let at_one = p.eval(&BigRational::one());
        match p_at_one_from_plane_partitions(model) {
            Ok(target) if target == at_one => {}
            Ok(target) => failures.push(format!("P(1) = {at_one}, plane partitions give {target}")),
            Err(e) => failures.push(e.to_string()),
        }
        // Integer form of the same identity: P(1) C(M, N) is a plane-partition count.
        let scaled = &at_one * BigRational::from_integer(BigInt::from(binomial(model.m(), model.n() as i64)));
        if !scaled.is_integer() {
            failures.push(format!("P(1) C(M,N) = {scaled} is not an integer"));
        }
        let lead = p.leading_coefficient().cloned().unwrap_or_default();
        match leading_coefficient_from_plane_partitions(model) {
            Ok(target) if target == lead => {}
            Ok(target) => failures.push(format!("leading coefficient {lead}, expected {target}")),
            Err(e) => failures.push(e.to_string()),
        }
        failures
    })
}
