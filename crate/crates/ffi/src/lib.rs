//! C ABI for `laddernet`.
//!
//! Networks live behind an opaque `LnNetwork` handle. Every call returns an
//! `LnStatus`; on failure `ln_last_error` gives a message for the calling
//! thread. Strings returned by the library are released with
//! `ln_string_free`, networks with `ln_network_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use laddernet::dirichlet::Admittance;
use laddernet::infinite::{RegionCl, RegionLc};
use laddernet::{
    build_ladder, cl_boundary_limit, cl_infinite_admittance, effective_admittance,
    finite_ladder_admittance, lc_boundary_limit, lc_infinite_admittance, Error, LadderSpec, Lambda,
    LimitValue, Network, Side,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// An edge impedance vanishes at the requested λ.
    NotInLambdaSet = 4,
    NoSolution = 5,
    UnitCircleDegeneracy = 6,
    NonConvergent = 7,
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnLadderKind {
    /// Series inductors, capacitor rungs.
    Lc = 0,
    /// Series capacitors, inductor rungs.
    Cl = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnSide {
    Right = 0,
    Left = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LnRegion {
    Omega1 = 0,
    Omega2 = 1,
    Omega3 = 2,
    LambdaBar = 3,
    /// LC segment or CL rays on the imaginary axis.
    Segment = 4,
    Endpoint = 5,
    Zero = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnComplex {
    pub re: f64,
    pub im: f64,
}

impl From<LnComplex> for Complex64 {
    fn from(z: LnComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for LnComplex {
    fn from(z: Complex64) -> Self {
        LnComplex { re: z.re, im: z.im }
    }
}

/// Opaque network handle.
pub struct LnNetwork(Network);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

struct Failure(LnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotInLambdaSet { .. } | Error::ZeroImpedance => LnStatus::NotInLambdaSet,
            Error::NoSolution => LnStatus::NoSolution,
            Error::UnitCircleDegeneracy => LnStatus::UnitCircleDegeneracy,
            Error::NonConvergentInput => LnStatus::NonConvergent,
            Error::OutOfRange { .. } => LnStatus::OutOfRange,
            Error::Schema(_) => LnStatus::ParseError,
            _ => LnStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LnStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LnStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LnStatus::Panic
        }
    }
}

fn lambda(z: LnComplex) -> Result<Lambda, Failure> {
    Ok(Lambda::new(z.into())?)
}

fn spec(kind: LnLadderKind, l: f64, c: f64) -> Result<LadderSpec, Failure> {
    Ok(match kind {
        LnLadderKind::Lc => LadderSpec::lc(l, c)?,
        LnLadderKind::Cl => LadderSpec::cl(l, c)?,
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ln_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a JSON network description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ln_network_from_json(
    json: *const c_char,
    out: *mut *mut LnNetwork,
) -> LnStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(LnStatus::ParseError, e.to_string()))?;
        let net = Network::from_json(text)?;
        *out = Box::into_raw(Box::new(LnNetwork(net)));
        Ok(())
    })
}

/// Builds the n-th LC or CL ladder.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ln_network_build_ladder(
    kind: LnLadderKind,
    inductance: f64,
    capacitance: f64,
    n: usize,
    out: *mut *mut LnNetwork,
) -> LnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let net = build_ladder(&spec(kind, inductance, capacitance)?, n)?;
        *out = Box::into_raw(Box::new(LnNetwork(net)));
        Ok(())
    })
}

/// # Safety
/// `net` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ln_network_free(net: *mut LnNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Serialises a network to JSON; release the string with `ln_string_free`.
///
/// # Safety
/// `net` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ln_network_to_json(
    net: *const LnNetwork,
    out: *mut *mut c_char,
) -> LnStatus {
    guard(|| {
        let net = net.as_ref().ok_or_else(|| null("net"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CString::new(net.0.to_json()?)
            .map_err(|e| Failure(LnStatus::InvalidArgument, e.to_string()))?;
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ln_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Effective admittance of a network at λ. When the Dirichlet problem has
/// no solution, `*infinite` is set and `*out` holds `+inf`.
///
/// # Safety
/// `net` must be a live handle; `out` and `infinite` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn ln_effective_admittance(
    net: *const LnNetwork,
    lambda_value: LnComplex,
    out: *mut LnComplex,
    infinite: *mut bool,
) -> LnStatus {
    guard(|| {
        let net = net.as_ref().ok_or_else(|| null("net"))?;
        if out.is_null() || infinite.is_null() {
            return Err(null("out"));
        }
        match effective_admittance(&net.0, lambda(lambda_value)?)? {
            Admittance::Finite(p) => {
                *out = p.into();
                *infinite = false;
            }
            Admittance::Infinite => {
                *out = LnComplex {
                    re: f64::INFINITY,
                    im: 0.0,
                };
                *infinite = true;
            }
        }
        Ok(())
    })
}

/// Closed-form admittance of the finite αβ-ladder with `n` sections.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ln_finite_ladder_admittance(
    alpha: LnComplex,
    beta: LnComplex,
    n: usize,
    out: *mut LnComplex,
) -> LnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = finite_ladder_admittance(alpha.into(), beta.into(), n)?.into();
        Ok(())
    })
}

fn region_lc(r: RegionLc) -> LnRegion {
    match r {
        RegionLc::Omega1 => LnRegion::Omega1,
        RegionLc::Omega2 => LnRegion::Omega2,
        RegionLc::LambdaBarCurve => LnRegion::LambdaBar,
        RegionLc::SegmentInterior => LnRegion::Segment,
        RegionLc::SegmentEndpoint => LnRegion::Endpoint,
        RegionLc::Zero => LnRegion::Zero,
    }
}

fn region_cl(r: RegionCl) -> LnRegion {
    match r {
        RegionCl::Omega1 => LnRegion::Omega1,
        RegionCl::Omega2 => LnRegion::Omega2,
        RegionCl::Omega3 => LnRegion::Omega3,
        RegionCl::LambdaBarCurve => LnRegion::LambdaBar,
        RegionCl::RayInterior => LnRegion::Segment,
        RegionCl::RayEndpoint => LnRegion::Endpoint,
        RegionCl::Zero => LnRegion::Zero,
    }
}

/// Infinite-ladder admittance. Returns `LN_STATUS_NON_CONVERGENT` with the
/// region filled in when the finite ladders have no limit.
///
/// # Safety
/// `out` and `region` must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn ln_infinite_admittance(
    kind: LnLadderKind,
    inductance: f64,
    capacitance: f64,
    lambda_value: LnComplex,
    out: *mut LnComplex,
    region: *mut LnRegion,
) -> LnStatus {
    guard(|| {
        if out.is_null() || region.is_null() {
            return Err(null("out"));
        }
        let z = lambda(lambda_value)?;
        let (value, tag) = match kind {
            LnLadderKind::Lc => {
                let r = lc_infinite_admittance(z, inductance, capacitance)?;
                (r.value, region_lc(r.region))
            }
            LnLadderKind::Cl => {
                let r = cl_infinite_admittance(z, inductance, capacitance)?;
                (r.value, region_cl(r.region))
            }
        };
        *region = tag;
        match value {
            LimitValue::Finite(p) => {
                *out = p.into();
                Ok(())
            }
            LimitValue::NonConvergent => Err(Failure(
                LnStatus::NonConvergent,
                "no limit at this lambda".into(),
            )),
        }
    })
}

/// One-sided limit of the infinite-ladder admittance at `λ = iω` on the
/// non-convergent part of the imaginary axis.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ln_boundary_limit(
    kind: LnLadderKind,
    omega: f64,
    inductance: f64,
    capacitance: f64,
    side: LnSide,
    out: *mut LnComplex,
) -> LnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let side = match side {
            LnSide::Right => Side::Right,
            LnSide::Left => Side::Left,
        };
        let p = match kind {
            LnLadderKind::Lc => lc_boundary_limit(omega, inductance, capacitance, side)?,
            LnLadderKind::Cl => cl_boundary_limit(omega, inductance, capacitance, side)?,
        };
        *out = p.into();
        Ok(())
    })
}
