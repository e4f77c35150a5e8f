//! Test-side oracles written straight from the defining formulas.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::Rng;

use laddernet::Lambda;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn lam(re: f64, im: f64) -> Lambda {
    Lambda::from_parts(re, im).unwrap()
}

/// Modulus in `[0.5, 2]`, uniform phase.
pub fn random_admittance<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-PI..PI))
}

/// Ladder admittance by series/parallel reduction from the far end:
/// `P₁ = α`, `Pₖ₊₁ = α(β + Pₖ)/(α + β + Pₖ)`.
pub fn ladder_oracle(alpha: Complex64, beta: Complex64, n: usize) -> Complex64 {
    let mut p = alpha;
    for _ in 1..n {
        p = alpha * (beta + p) / (alpha + beta + p);
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleRegion {
    Omega1,
    Omega2,
    Omega3,
}

/// LC domains from their set definitions; `None` within `margin` of the
/// separating curve or of the closed imaginary segment.
pub fn region_lc_oracle(z: Complex64, l: f64, cap: f64, margin: f64) -> Option<OracleRegion> {
    let (x, y) = (z.re, z.im);
    let h = x * x - y * y + 4.0 / (l * cap);
    let edge = 2.0 / (l * cap).sqrt();
    if h.abs() <= margin || (x.abs() <= margin && y.abs() <= edge + margin) {
        return None;
    }
    if (h > 0.0 && x > 0.0) || (h < 0.0 && y > 0.0) {
        Some(OracleRegion::Omega1)
    } else {
        Some(OracleRegion::Omega2)
    }
}

/// CL domains from their set definitions; `None` within `margin` of the
/// hyperbola, of the imaginary rays, or of the origin.
pub fn region_cl_oracle(z: Complex64, l: f64, cap: f64, margin: f64) -> Option<OracleRegion> {
    let (x, y) = (z.re, z.im);
    let h = x * x - y * y + 1.0 / (4.0 * l * cap);
    let edge = 1.0 / (2.0 * (l * cap).sqrt());
    if h.abs() <= margin || z.norm() <= margin || (x.abs() <= margin && y.abs() >= edge - margin) {
        return None;
    }
    if h > 0.0 || x * y > 0.0 {
        Some(OracleRegion::Omega1)
    } else if x < 0.0 {
        Some(OracleRegion::Omega2)
    } else {
        Some(OracleRegion::Omega3)
    }
}

/// `√r e^{iφ/2}` with `φ ∈ (−π/2, 3π/2)`.
pub fn xi1(gamma: Complex64) -> Complex64 {
    let mut phi = gamma.arg();
    if phi <= -FRAC_PI_2 {
        phi += 2.0 * PI;
    }
    Complex64::from_polar(gamma.norm().sqrt(), phi / 2.0)
}

/// `1 + LCλ²/2 + λξ(γ)`, `γ = LC + L²C²λ²/4`, with `ξ₂` on Ω₁ and `ξ₁` on Ω₂.
pub fn branch_psi_lc(z: Complex64, l: f64, cap: f64, region: OracleRegion) -> Complex64 {
    let lc = l * cap;
    let xi = xi1(lc + lc * lc * z * z / 4.0);
    let xi = if region == OracleRegion::Omega1 {
        -xi
    } else {
        xi
    };
    1.0 + lc * z * z / 2.0 + z * xi
}

/// `1 + (1 + ξ(γ))/(2CLλ²)`, `γ = 4CLλ² + 1`, with `ξ₂` on Ω₁ and `ξ₁` on Ω₂, Ω₃.
pub fn branch_psi_cl(z: Complex64, l: f64, cap: f64, region: OracleRegion) -> Complex64 {
    let lc = l * cap;
    let xi = xi1(4.0 * lc * z * z + 1.0);
    let xi = if region == OracleRegion::Omega1 {
        -xi
    } else {
        xi
    };
    1.0 + (1.0 + xi) / (2.0 * lc * z * z)
}
