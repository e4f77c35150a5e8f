//! Infinite LC and CL ladders: limits of the finite admittances `Pₙ(λ)`.
//!
//! The finite admittances converge iff the smaller characteristic root has
//! `|ψ₁| < 1`, and then `P = α(1 − ψ₁)`. The primary path picks `ψ₁` by
//! comparing the moduli of the two roots. The branch formulas built on
//! `ξ₁(γ) = √r e^{iφ/2}`, `φ ∈ (−π/2, 3π/2)`, are kept alongside so the two
//! routes can be checked against each other on every Ω domain.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ladder::characteristic_roots;
use crate::network::Lambda;

/// `||ψ₁| − 1|` at or below this counts as non-convergent.
pub const UNIT_MODULUS_TOL: f64 = 1e-9;
/// `|μ + 4|` at or below this is the LC segment endpoint.
pub const LC_ENDPOINT_TOL: f64 = 1e-9;
/// Relative distance to `±i/(2√(CL))` that counts as the CL ray endpoint.
pub const CL_ENDPOINT_TOL: f64 = 1e-12;
/// Tolerance on the (dimensionless) defining expression of a Λ̄ curve.
pub const CURVE_TOL: f64 = 1e-9;
/// `|Re λ| ≤ AXIS_TOL·|λ|` puts λ on the imaginary axis.
pub const AXIS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLc {
    Omega1,
    Omega2,
    LambdaBarCurve,
    /// Open segment `λ² ∈ (−4/(LC), 0)` on the imaginary axis.
    SegmentInterior,
    /// `λ = ±2i/√(LC)`, where `μ = −4`.
    SegmentEndpoint,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionCl {
    Omega1,
    Omega2,
    Omega3,
    LambdaBarCurve,
    /// Open rays `λ² ∈ (−∞, −1/(4CL))` on the imaginary axis.
    RayInterior,
    /// `λ = ±i/(2√(CL))`.
    RayEndpoint,
    Zero,
}

impl RegionLc {
    pub fn tag(self) -> &'static str {
        match self {
            RegionLc::Omega1 => "omega1",
            RegionLc::Omega2 => "omega2",
            RegionLc::LambdaBarCurve => "lambda_bar",
            RegionLc::SegmentInterior => "segment",
            RegionLc::SegmentEndpoint => "endpoint",
            RegionLc::Zero => "zero",
        }
    }
}

impl RegionCl {
    /// Ray points share the `segment` tag with the LC segment.
    pub fn tag(self) -> &'static str {
        match self {
            RegionCl::Omega1 => "omega1",
            RegionCl::Omega2 => "omega2",
            RegionCl::Omega3 => "omega3",
            RegionCl::LambdaBarCurve => "lambda_bar",
            RegionCl::RayInterior => "segment",
            RegionCl::RayEndpoint => "endpoint",
            RegionCl::Zero => "zero",
        }
    }
}

/// One of the two continuous square-root branches of γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Xi1,
    Xi2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBranch {
    pub gamma: Complex64,
    pub xi1: Complex64,
    pub xi2: Complex64,
}

impl GammaBranch {
    pub fn get(&self, branch: Branch) -> Complex64 {
        match branch {
            Branch::Xi1 => self.xi1,
            Branch::Xi2 => self.xi2,
        }
    }
}

/// Square roots of γ continuous off the cut `(−i∞, 0)`.
pub fn xi_roots(gamma: Complex64) -> Result<GammaBranch> {
    if gamma.norm() == 0.0 {
        return Err(Error::GammaZero);
    }
    if gamma.re == 0.0 && gamma.im < 0.0 {
        return Err(Error::OnCut);
    }
    let mut phi = gamma.im.atan2(gamma.re);
    if phi <= -FRAC_PI_2 {
        phi += 2.0 * PI;
    }
    let xi1 = Complex64::from_polar(gamma.norm().sqrt(), phi / 2.0);
    Ok(GammaBranch {
        gamma,
        xi1,
        xi2: -xi1,
    })
}

fn check_lc(l: f64, c: f64) -> Result<()> {
    if !(l > 0.0 && l.is_finite() && c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "L and C must be positive and finite, got L={l}, C={c}"
        )));
    }
    Ok(())
}

fn on_imaginary_axis(lambda: Complex64) -> bool {
    lambda.re.abs() <= AXIS_TOL * lambda.norm()
}

pub fn classify_lc(lambda: Complex64, l: f64, c: f64) -> RegionLc {
    if lambda.norm() == 0.0 {
        return RegionLc::Zero;
    }
    let lc = l * c;
    let mu = lc * lambda * lambda;
    if (mu + 4.0).norm() <= LC_ENDPOINT_TOL {
        return RegionLc::SegmentEndpoint;
    }
    let (x, y) = (lambda.re, lambda.im);
    if on_imaginary_axis(lambda) && lc * y * y < 4.0 {
        return RegionLc::SegmentInterior;
    }
    let h = 1.0 + lc * (x * x - y * y) / 4.0;
    if h.abs() <= CURVE_TOL && x * y < 0.0 {
        return RegionLc::LambdaBarCurve;
    }
    if h.abs() <= CURVE_TOL {
        // Quadrants I and III: both sides of the hyperbola agree.
        return if x > 0.0 || y > 0.0 {
            RegionLc::Omega1
        } else {
            RegionLc::Omega2
        };
    }
    let positive = if h > 0.0 { x > 0.0 } else { y > 0.0 };
    if positive {
        RegionLc::Omega1
    } else {
        RegionLc::Omega2
    }
}

pub fn classify_cl(lambda: Complex64, l: f64, c: f64) -> RegionCl {
    if lambda.norm() == 0.0 {
        return RegionCl::Zero;
    }
    let lc = l * c;
    let threshold = 1.0 / (2.0 * lc.sqrt());
    for sign in [1.0, -1.0] {
        if (lambda - Complex64::new(0.0, sign * threshold)).norm() <= CL_ENDPOINT_TOL * threshold {
            return RegionCl::RayEndpoint;
        }
    }
    let (x, y) = (lambda.re, lambda.im);
    if on_imaginary_axis(lambda) && y.abs() > threshold {
        return RegionCl::RayInterior;
    }
    let h = 1.0 + 4.0 * lc * (x * x - y * y);
    if h.abs() <= CURVE_TOL && x * y < 0.0 {
        return RegionCl::LambdaBarCurve;
    }
    if h > 0.0 || x * y > 0.0 || h.abs() <= CURVE_TOL {
        return RegionCl::Omega1;
    }
    if x < 0.0 {
        RegionCl::Omega2
    } else {
        RegionCl::Omega3
    }
}

/// `γ = LC + L²C²λ²/4`.
pub fn lc_gamma(lambda: Complex64, l: f64, c: f64) -> Complex64 {
    let lc = l * c;
    lc + lc * lc * lambda * lambda / 4.0
}

/// `γ = 4CLλ² + 1`.
pub fn cl_gamma(lambda: Complex64, l: f64, c: f64) -> Complex64 {
    4.0 * l * c * lambda * lambda + 1.0
}

/// `1 + LCλ²/2 + λ ξ(γ)` on the chosen branch.
pub fn lc_psi_branch(lambda: Complex64, l: f64, c: f64, branch: Branch) -> Result<Complex64> {
    let xi = xi_roots(lc_gamma(lambda, l, c))?.get(branch);
    Ok(1.0 + l * c * lambda * lambda / 2.0 + lambda * xi)
}

/// `1 + (1 + ξ(γ)) / (2CLλ²)` on the chosen branch.
pub fn cl_psi_branch(lambda: Complex64, l: f64, c: f64, branch: Branch) -> Result<Complex64> {
    let xi = xi_roots(cl_gamma(lambda, l, c))?.get(branch);
    Ok(1.0 + (1.0 + xi) / (2.0 * l * c * lambda * lambda))
}

/// The branch that yields `|ψ₁| < 1` on an LC domain.
pub fn lc_branch(region: RegionLc) -> Option<Branch> {
    match region {
        RegionLc::Omega1 => Some(Branch::Xi2),
        RegionLc::Omega2 => Some(Branch::Xi1),
        _ => None,
    }
}

/// The branch that yields `|ψ₁| < 1` on a CL domain.
pub fn cl_branch(region: RegionCl) -> Option<Branch> {
    match region {
        RegionCl::Omega1 => Some(Branch::Xi2),
        RegionCl::Omega2 | RegionCl::Omega3 => Some(Branch::Xi1),
        _ => None,
    }
}

/// `−Cλ/2 − ξ(γ)/L` with the branch of the domain containing λ.
pub fn lc_admittance_by_branch(lambda: Lambda, l: f64, c: f64) -> Result<Complex64> {
    check_lc(l, c)?;
    let z = lambda.value();
    let region = classify_lc(z, l, c);
    let branch = lc_branch(region).ok_or_else(|| {
        Error::Unsupported(format!("no single branch on region {}", region.tag()))
    })?;
    let xi = xi_roots(lc_gamma(z, l, c))?.get(branch);
    Ok(-c * z / 2.0 - xi / l)
}

/// `−1/(2Lλ) − ξ(γ)/(2Lλ)` with the branch of the domain containing λ.
pub fn cl_admittance_by_branch(lambda: Lambda, l: f64, c: f64) -> Result<Complex64> {
    check_lc(l, c)?;
    let z = lambda.value();
    let region = classify_cl(z, l, c);
    let branch = cl_branch(region).ok_or_else(|| {
        Error::Unsupported(format!("no single branch on region {}", region.tag()))
    })?;
    let xi = xi_roots(cl_gamma(z, l, c))?.get(branch);
    Ok(-(1.0 + xi) / (2.0 * l * z))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitValue {
    Finite(Complex64),
    NonConvergent,
}

impl LimitValue {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            LimitValue::Finite(p) => Some(p),
            LimitValue::NonConvergent => None,
        }
    }
}

/// Infinite-ladder admittance with the selected root and the λ region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitResult<R> {
    pub value: LimitValue,
    pub psi1: Complex64,
    pub region: R,
}

/// `ψ₁` by direct modulus comparison, and whether it sits on the unit circle.
fn select_root(mu: Complex64) -> Result<(Complex64, bool)> {
    let roots = characteristic_roots(mu)?;
    let on_circle = (roots.psi1.norm() - 1.0).abs() <= UNIT_MODULUS_TOL;
    Ok((roots.psi1, on_circle))
}

pub fn lc_infinite_admittance(lambda: Lambda, l: f64, c: f64) -> Result<LimitResult<RegionLc>> {
    check_lc(l, c)?;
    let z = lambda.value();
    let region = classify_lc(z, l, c);
    if region == RegionLc::SegmentEndpoint {
        return Ok(LimitResult {
            value: LimitValue::Finite(2.0 / (l * z)),
            psi1: Complex64::new(-1.0, 0.0),
            region,
        });
    }
    let (psi1, on_circle) = select_root(l * c * z * z)?;
    let value = if region == RegionLc::SegmentInterior || on_circle {
        LimitValue::NonConvergent
    } else {
        LimitValue::Finite((1.0 - psi1) / (l * z))
    };
    Ok(LimitResult {
        value,
        psi1,
        region,
    })
}

pub fn cl_infinite_admittance(lambda: Lambda, l: f64, c: f64) -> Result<LimitResult<RegionCl>> {
    check_lc(l, c)?;
    let z = lambda.value();
    let region = classify_cl(z, l, c);
    if region == RegionCl::RayEndpoint {
        let sign = z.im.signum();
        return Ok(LimitResult {
            value: LimitValue::Finite(Complex64::new(0.0, sign * (c / l).sqrt())),
            psi1: Complex64::new(-1.0, 0.0),
            region,
        });
    }
    let (psi1, on_circle) = select_root((l * c * z * z).inv())?;
    let value = if region == RegionCl::RayInterior || on_circle {
        LimitValue::NonConvergent
    } else {
        LimitValue::Finite(c * z * (1.0 - psi1))
    };
    Ok(LimitResult {
        value,
        psi1,
        region,
    })
}

/// Approach direction onto the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// From `Re λ > 0`.
    Right,
    /// From `Re λ < 0`.
    Left,
}

/// One-sided limit of the LC admittance at `λ = iω` on the open segment:
/// `−iCω/2 ± √(C/L − C²ω²/4)`.
pub fn lc_boundary_limit(omega: f64, l: f64, c: f64, side: Side) -> Result<Complex64> {
    check_lc(l, c)?;
    let edge = 2.0 / (l * c).sqrt();
    if !(omega.is_finite() && omega != 0.0 && omega.abs() < edge) {
        return Err(Error::OutOfRange { omega });
    }
    let root = (c / l - c * c * omega * omega / 4.0).sqrt();
    let signed = match side {
        Side::Right => root,
        Side::Left => -root,
    };
    Ok(Complex64::new(signed, -c * omega / 2.0))
}

/// One-sided limit of the CL admittance at `λ = iω` on the open rays:
/// `i/(2Lω) ± √(C/L − 1/(4L²ω²))` for `ω > 0`; the lower ray follows from
/// `P(λ̄) = P̄(λ)`.
pub fn cl_boundary_limit(omega: f64, l: f64, c: f64, side: Side) -> Result<Complex64> {
    check_lc(l, c)?;
    let edge = 1.0 / (2.0 * (l * c).sqrt());
    if !(omega.is_finite() && omega.abs() > edge) {
        return Err(Error::OutOfRange { omega });
    }
    if omega < 0.0 {
        return Ok(cl_boundary_limit(-omega, l, c, side)?.conj());
    }
    let root = (c / l - 1.0 / (4.0 * l * l * omega * omega)).sqrt();
    let signed = match side {
        Side::Right => root,
        Side::Left => -root,
    };
    Ok(Complex64::new(signed, 1.0 / (2.0 * l * omega)))
}
