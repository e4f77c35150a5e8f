//! Exhaustion of an infinite ladder by the finite ladders `Γₙ`.
//!
//! For the ladder graph the exhausting networks are exactly the finite
//! αβ-ladders: the far vertex `2n` is the grounded boundary of `Γₙ`.

use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::dirichlet::{effective_admittance, Admittance};
use crate::error::{Error, Result};
use crate::infinite::{cl_infinite_admittance, lc_infinite_admittance, LimitValue};
use crate::ladder::finite_ladder_admittance;
use crate::network::{build_ladder, LadderSpec, Lambda};

/// Default tolerance on successive differences.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Differences below this many ulps of the terms are rounding noise.
const NOISE_ULPS: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    ClosedForm,
    DirichletSolve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmittanceSequence {
    pub lambda: Lambda,
    /// `(n, Pₙ)` with `n = 1, 2, …`; unsolvable ladders appear as `Infinite`.
    pub terms: Vec<(usize, Admittance)>,
    pub source: Source,
}

fn ladder_admittances(spec: &LadderSpec, lambda: Lambda) -> Result<(Complex64, Complex64)> {
    let alpha = spec
        .alpha(lambda)
        .map_err(|_| Error::NotInLambdaSet { u: 0, v: 2 })?;
    let beta = spec
        .beta(lambda)
        .map_err(|_| Error::NotInLambdaSet { u: 1, v: 2 })?;
    Ok((alpha, beta))
}

/// `Pₙ(λ)` of the n-th exhausting ladder.
pub fn ladder_term(
    spec: &LadderSpec,
    lambda: Lambda,
    n: usize,
    source: Source,
) -> Result<Admittance> {
    match source {
        Source::ClosedForm => {
            let (alpha, beta) = ladder_admittances(spec, lambda)?;
            match finite_ladder_admittance(alpha, beta, n) {
                Ok(p) => Ok(Admittance::Finite(p)),
                Err(Error::UnitCircleDegeneracy) => {
                    effective_admittance(&build_ladder(spec, n)?, lambda)
                }
                Err(e) => Err(e),
            }
        }
        Source::DirichletSolve => effective_admittance(&build_ladder(spec, n)?, lambda),
    }
}

pub fn exhaust(
    spec: &LadderSpec,
    lambda: Lambda,
    n_max: usize,
    source: Source,
) -> Result<AdmittanceSequence> {
    if n_max < 2 {
        return Err(Error::InvalidSize { min: 2, got: n_max });
    }
    ladder_admittances(spec, lambda)?;
    let terms = (1..=n_max)
        .map(|n| ladder_term(spec, lambda, n, source).map(|p| (n, p)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdmittanceSequence {
        lambda,
        terms,
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvergenceStatus {
    Converged,
    Oscillating,
    Slow,
}

impl ConvergenceStatus {
    pub fn tag(self) -> &'static str {
        match self {
            ConvergenceStatus::Converged => "converged",
            ConvergenceStatus::Oscillating => "oscillating",
            ConvergenceStatus::Slow => "slow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceVerdict {
    pub status: ConvergenceStatus,
    /// Last term, reported only when converged.
    pub estimated_limit: Option<Complex64>,
    /// Ratio of successive differences, from the last three resolvable ones.
    pub estimated_rate: Option<f64>,
}

pub fn diagnose(seq: &AdmittanceSequence, tol: f64) -> Result<ConvergenceVerdict> {
    let terms: Vec<Admittance> = seq.terms.iter().map(|(_, p)| *p).collect();
    diagnose_terms(&terms, tol)
}

/// Differences `|P_{k+1} − P_k|`, with rounding noise flushed to zero and
/// `∞` when either term is infinite.
fn differences(terms: &[Admittance]) -> Vec<f64> {
    terms
        .windows(2)
        .map(|w| match (w[0], w[1]) {
            (Admittance::Finite(a), Admittance::Finite(b)) => {
                let d = (b - a).norm();
                let floor = NOISE_ULPS * f64::EPSILON * a.norm().max(b.norm());
                if d <= floor {
                    0.0
                } else {
                    d
                }
            }
            _ => f64::INFINITY,
        })
        .collect()
}

fn non_increasing(d: &[f64]) -> bool {
    d.windows(2).all(|w| w[1] <= w[0])
}

fn rate_estimate(diffs: &[f64]) -> f64 {
    let resolved: Vec<f64> = diffs
        .iter()
        .copied()
        .filter(|d| d.is_finite() && *d > 0.0)
        .collect();
    match resolved.len() {
        0 | 1 => 0.0,
        2 => resolved[1] / resolved[0],
        k => (resolved[k - 1] / resolved[k - 3]).sqrt(),
    }
}

pub fn diagnose_terms(terms: &[Admittance], tol: f64) -> Result<ConvergenceVerdict> {
    if terms.len() < 4 {
        return Err(Error::TooFewTerms {
            min: 4,
            got: terms.len(),
        });
    }
    let diffs = differences(terms);
    let tail = &diffs[diffs.len() - (diffs.len() / 2).max(3)..];
    let last3 = &diffs[diffs.len() - 3..];

    if tail.iter().any(|d| d.is_infinite()) {
        return Ok(ConvergenceVerdict {
            status: ConvergenceStatus::Oscillating,
            estimated_limit: None,
            estimated_rate: None,
        });
    }
    let rate = Some(rate_estimate(&diffs));
    let last = *diffs.last().unwrap();
    if last <= tol && non_increasing(last3) {
        let limit = terms.last().and_then(Admittance::finite);
        return Ok(ConvergenceVerdict {
            status: ConvergenceStatus::Converged,
            estimated_limit: limit,
            estimated_rate: rate,
        });
    }
    let status = if non_increasing(tail) {
        ConvergenceStatus::Slow
    } else {
        ConvergenceStatus::Oscillating
    };
    Ok(ConvergenceVerdict {
        status,
        estimated_limit: None,
        estimated_rate: rate,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    pub n: usize,
    /// `|Pₙ − P∞|`.
    pub error: f64,
    /// `K·|ψ₁|^{2n}`.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub psi1: Complex64,
    pub limit: Complex64,
    pub k: f64,
    pub rows: Vec<RateRow>,
}

impl RateReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.within_bound)
    }

    /// `|ψ₁|²`, the expected ratio of successive errors.
    pub fn expected_ratio(&self) -> f64 {
        self.psi1.norm_sqr()
    }
}

/// Checks `|Pₙ − P∞| ≤ K|ψ₁|^{2n}` over `n_range`.
///
/// From the closed form, `Pₙ − P∞ = α ψ₁^{2n} (ψ₂ − ψ₁) / (1 − ψ₁^{2n})`.
/// `K` is fitted on the first `n₀` and widened by `(1+q)/(1−q)`,
/// `q = |ψ₁|^{2n₀}`, which bounds the variation of `|1 − ψ₁^{2n}|` for
/// `n ≥ n₀`.
pub fn verify_rate(
    spec: &LadderSpec,
    lambda: Lambda,
    n_range: RangeInclusive<usize>,
) -> Result<RateReport> {
    let (first, last) = (*n_range.start(), *n_range.end());
    if first < 1 || last < first {
        return Err(Error::InvalidParameter(format!(
            "empty or invalid n range {first}..={last}"
        )));
    }
    let (value, psi1) = match *spec {
        LadderSpec::Lc {
            inductance,
            capacitance,
        } => {
            let r = lc_infinite_admittance(lambda, inductance, capacitance)?;
            (r.value, r.psi1)
        }
        LadderSpec::Cl {
            inductance,
            capacitance,
        } => {
            let r = cl_infinite_admittance(lambda, inductance, capacitance)?;
            (r.value, r.psi1)
        }
        LadderSpec::General { .. } => {
            return Err(Error::Unsupported(
                "rate verification needs an LC or CL ladder with a known limit".into(),
            ))
        }
    };
    let limit = match value {
        LimitValue::Finite(p) if psi1.norm() < 1.0 => p,
        _ => return Err(Error::NonConvergentInput),
    };
    let q = psi1.norm_sqr();
    let noise = NOISE_ULPS * f64::EPSILON * limit.norm().max(f64::MIN_POSITIVE);

    let error_at = |n: usize| -> Result<f64> {
        match ladder_term(spec, lambda, n, Source::ClosedForm)? {
            Admittance::Finite(p) => Ok((p - limit).norm()),
            Admittance::Infinite => Ok(f64::INFINITY),
        }
    };
    let e0 = error_at(first)?;
    let q0 = q.powi(first as i32);
    let widen = (1.0 + q0) / (1.0 - q0);
    let scale = e0 * widen;
    let k = scale / q0;

    let rows = (first..=last)
        .map(|n| {
            let error = if n == first { e0 } else { error_at(n)? };
            let bound = scale * q.powi((n - first) as i32);
            let within_bound = error <= bound * (1.0 + 1e-9) + noise;
            Ok(RateRow {
                n,
                error,
                bound,
                within_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport {
        psi1,
        limit,
        k,
        rows,
    })
}
