//! Closed-form admittance of the finite αβ-ladder.
//!
//! The rung voltages `v_k = v(2k)` obey `v_{k+1} − (2+μ) v_k + v_{k−1} = 0`
//! with `μ = β/α`, `v₀ = 1`, `v_n = 0`. The characteristic roots satisfy
//! `ψ₁ψ₂ = 1`, so everything can be written in terms of the root of smaller
//! modulus, which keeps powers bounded.

use num_complex::Complex64;

use crate::dirichlet::{effective_admittance, Admittance};
use crate::error::{Error, Result};
use crate::network::{build_ladder, LadderSpec, Lambda};

/// `|μ + 4|` at or below this is treated as the double root `ψ = −1`.
pub const DEGENERATE_TOL: f64 = 1e-12;
/// Inside this distance from `μ = −4` (but not degenerate) the root formula
/// cancels badly, and the admittance comes from the linear solver instead.
pub const NEAR_DEGENERATE_TOL: f64 = 1e-6;
/// `|ψ₁^{2n} − 1|` at or below this means the root formula is undefined.
pub const UNIT_POWER_TOL: f64 = 1e-10;
/// Largest `n` accepted by the binomial form.
pub const BINOMIAL_MAX_N: usize = 30;

const ROOT_ORDER_TOL: f64 = 1e-12;

/// Roots of `ψ² − (2+μ)ψ + 1 = 0`, ordered `|ψ₁| ≤ |ψ₂|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRoots {
    pub psi1: Complex64,
    pub psi2: Complex64,
    pub degenerate: bool,
    pub mu: Complex64,
}

pub fn characteristic_roots(mu: Complex64) -> Result<CharRoots> {
    if mu.norm() == 0.0 {
        return Err(Error::MuZero);
    }
    if (mu + 4.0).norm() <= DEGENERATE_TOL {
        let minus_one = Complex64::new(-1.0, 0.0);
        return Ok(CharRoots {
            psi1: minus_one,
            psi2: minus_one,
            degenerate: true,
            mu,
        });
    }
    // (2+μ)² − 4 = μ(μ+4), which avoids cancellation for small μ.
    let s = mu + 2.0;
    let d = (mu * (mu + 4.0)).sqrt();
    let plus = (s + d) * 0.5;
    let minus = (s - d) * 0.5;
    let big = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    let small = big.inv();

    let (psi1, psi2) = if (small.norm() - big.norm()).abs() <= ROOT_ORDER_TOL * big.norm() {
        if principal_arg(small) <= principal_arg(big) {
            (small, big)
        } else {
            (big, small)
        }
    } else {
        (small, big)
    };
    Ok(CharRoots {
        psi1,
        psi2,
        degenerate: false,
        mu,
    })
}

/// Argument in `(−π, π]`.
fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -std::f64::consts::PI {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}

/// Rung voltages `v₀, …, v_n` and the constants of `v_k = c₁ψ₁^k + c₂ψ₂^k`.
///
/// In the degenerate case the solution is `v_k = c₁(−1)^k + c₂ k(−1)^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderVoltages {
    pub v: Vec<Complex64>,
    pub c1: Complex64,
    pub c2: Complex64,
    pub roots: CharRoots,
}

impl LadderVoltages {
    /// Largest `|v_{k+1} − (2+μ)v_k + v_{k−1}|` over `1 ≤ k ≤ n−1`.
    pub fn recurrence_residual(&self) -> f64 {
        let s = self.roots.mu + 2.0;
        self.v
            .windows(3)
            .map(|w| (w[2] - s * w[1] + w[0]).norm())
            .fold(0.0, f64::max)
    }
}

fn check_inputs(alpha: Complex64, beta: Complex64, n: usize) -> Result<Complex64> {
    if n < 1 {
        return Err(Error::InvalidSize { min: 1, got: n });
    }
    if alpha.norm() == 0.0 || beta.norm() == 0.0 {
        return Err(Error::MuZero);
    }
    Ok(beta / alpha)
}

pub fn ladder_voltages(alpha: Complex64, beta: Complex64, n: usize) -> Result<LadderVoltages> {
    let mu = check_inputs(alpha, beta, n)?;
    let roots = characteristic_roots(mu)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let nf = n as f64;

    if roots.degenerate {
        let mut v: Vec<Complex64> = (0..=n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(sign * (1.0 - k as f64 / nf), 0.0)
            })
            .collect();
        v[0] = one;
        v[n] = zero;
        return Ok(LadderVoltages {
            v,
            c1: one,
            c2: Complex64::new(-1.0 / nf, 0.0),
            roots,
        });
    }

    let p2n = roots.psi1.powu(2 * n as u32);
    if (p2n - one).norm() <= UNIT_POWER_TOL {
        return Err(Error::UnitCircleDegeneracy);
    }
    let denom = one - p2n;
    let c1 = denom.inv();
    // c₂ = 1/(1 − ψ₂^{2n}) = −ψ₁^{2n}/(1 − ψ₁^{2n})
    let c2 = -p2n / denom;
    // c₂ψ₂^k = −ψ₁^{2n−k}/(1 − ψ₁^{2n}); only powers of ψ₁ appear.
    let mut v: Vec<Complex64> = (0..=n)
        .map(|k| (roots.psi1.powu(k as u32) - roots.psi1.powu((2 * n - k) as u32)) / denom)
        .collect();
    v[0] = one;
    v[n] = zero;
    Ok(LadderVoltages { v, c1, c2, roots })
}

/// `(ψ^{2n−1} + 1)(ψ − 1) / (ψ^{2n} − 1)`, the admittance divided by α.
pub fn root_form(psi: Complex64, n: usize) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let m = 2 * n as u32;
    (psi.powu(m - 1) + one) * (psi - one) / (psi.powu(m) - one)
}

/// Effective admittance of `Γₙ^{αβ}`.
///
/// `α(2n−1)/n` at `μ = −4`, otherwise `α(ψ₁^{2n−1}+1)(ψ₁−1)/(ψ₁^{2n}−1)`.
/// Close to `μ = −4` the value is taken from the Dirichlet solve on the
/// same ladder.
pub fn finite_ladder_admittance(alpha: Complex64, beta: Complex64, n: usize) -> Result<Complex64> {
    let mu = check_inputs(alpha, beta, n)?;
    let roots = characteristic_roots(mu)?;
    if roots.degenerate {
        return Ok(alpha * (2.0 * n as f64 - 1.0) / n as f64);
    }
    if (mu + 4.0).norm() < NEAR_DEGENERATE_TOL {
        return solve_ladder_directly(alpha, beta, n);
    }
    let p2n = roots.psi1.powu(2 * n as u32);
    if (p2n - 1.0).norm() <= UNIT_POWER_TOL {
        return Err(Error::UnitCircleDegeneracy);
    }
    Ok(alpha * root_form(roots.psi1, n))
}

fn solve_ladder_directly(alpha: Complex64, beta: Complex64, n: usize) -> Result<Complex64> {
    let net = build_ladder(&LadderSpec::general(alpha, beta), n)?;
    // Fixed admittances do not depend on λ; any admissible value works.
    let lambda = Lambda::from_parts(1.0, 0.0)?;
    match effective_admittance(&net, lambda)? {
        Admittance::Finite(p) => Ok(p),
        Admittance::Infinite => Err(Error::UnitCircleDegeneracy),
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The same admittance as a rational function of α and β, via the binomial
/// expansion of `ψ₁^m + ψ₂^m` with `ψ = a ± √b`, `a = 1 + β/(2α)`,
/// `b = β/α + (β/(2α))²`.
pub fn finite_ladder_admittance_binomial(
    alpha: Complex64,
    beta: Complex64,
    n: usize,
) -> Result<Complex64> {
    let mu = check_inputs(alpha, beta, n)?;
    if n > BINOMIAL_MAX_N {
        return Err(Error::BinomialOverflow {
            n,
            max: BINOMIAL_MAX_N,
        });
    }
    if (mu + 4.0).norm() <= DEGENERATE_TOL {
        return Err(Error::DegenerateMu);
    }
    let half = mu * 0.5;
    let a = half + 1.0;
    let b = mu + half * half;
    let n32 = n as u32;

    // ½(ψ₁^m + ψ₂^m) = Σ_k C(m, 2k) a^{m−2k} b^k
    let half_power_sum = |m: u32| -> Complex64 {
        (0..=m / 2)
            .map(|k| binomial(m, 2 * k) as f64 * a.powu(m - 2 * k) * b.powu(k))
            .sum()
    };
    let odd = half_power_sum(2 * n32 - 1);
    let even = half_power_sum(2 * n32);
    let denom = 2.0 - 2.0 * even;
    if denom.norm() <= UNIT_POWER_TOL {
        return Err(Error::UnitCircleDegeneracy);
    }
    Ok(alpha * (1.0 - (mu + 2.0 - 2.0 * odd) / denom))
}
