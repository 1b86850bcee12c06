//! C ABI over `bosonic-channels`.
//!
//! States and couplings cross the boundary as opaque heap handles that the
//! caller releases with the matching `*_free` function. Small results are
//! written into caller-owned `#[repr(C)]` structs. Every fallible function
//! returns a [`BgStatus`]; the message of the last failure on the calling
//! thread is available from [`bg_last_error_message`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use bosonic_channels::channels::{k_coupling, ChannelSpec, KChannel};
use bosonic_channels::coupling::{validate_coupling, CouplingMatrix};
use bosonic_channels::decompose::{
    apply_decomposed, decompose, generate_coupling, verify_decomposition, Case, Decomposition,
    GenerateParams, TargetRegime,
};
use bosonic_channels::degradability::{classify, composition_residual, Identity, MapKind};
use bosonic_channels::gaussian::{GaussianState, SqueezeParams};
use bosonic_channels::Error;
use num_complex::Complex64;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidState = 2,
    InvalidCoupling = 3,
    DisplacedEnvironment = 4,
    OutOfRange = 5,
    Unsupported = 6,
    InvalidParameter = 7,
    Panic = 8,
}

/// One-mode Gaussian state.
pub struct BgState(GaussianState);

/// Two-mode coupling matrix.
pub struct BgCoupling(CouplingMatrix);

/// Plain parameters of a state.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BgStateParams {
    pub n: f64,
    pub m_re: f64,
    pub m_im: f64,
    pub d_re: f64,
    pub d_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgMapKind {
    ConjugateAmplifier = 0,
    BeamSplitter = 1,
    Amplifier = 2,
    Undetermined = 3,
}

/// Classification verdict. Absent parameters are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BgClassification {
    pub q: f64,
    pub weakly_degradable: bool,
    pub anti_degradable: bool,
    pub degrading_k: f64,
    pub antidegrading_k: f64,
    pub equivalent_map: BgMapKind,
    pub equivalent_k: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgIdentity {
    WeakDegradability = 0,
    AntiDegradability = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BgResidual {
    pub k: f64,
    pub k_prime: f64,
    pub max_residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgRegime {
    /// `q = k ∈ (0, 1)`.
    BeamSplitter = 0,
    /// `q = k > 1`.
    Amplifier = 1,
    /// `q = 1 − k < 0`.
    Negative = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BgCase {
    BeamSplitter = 0,
    Amplifier = 1,
    ConjugateAmplifier = 2,
}

/// Parameters of a decomposed coupling; see the `decompose` module of the
/// Rust crate for the factor order.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BgDecomposition {
    pub case_: BgCase,
    pub k: f64,
    pub sa_r: f64,
    pub sa_phi: f64,
    pub sb_r: f64,
    pub sb_phi: f64,
    pub sb_prime_r: f64,
    pub sb_prime_phi: f64,
    pub phase_a: f64,
    pub phase_b: f64,
    pub global_phase: f64,
    pub swapped: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> BgStatus {
    match err {
        Error::InvalidState { .. } | Error::MalformedState => BgStatus::InvalidState,
        Error::InvalidCoupling { .. } => BgStatus::InvalidCoupling,
        Error::DisplacedEnvironment(_) => BgStatus::DisplacedEnvironment,
        Error::OutOfRange { .. } => BgStatus::OutOfRange,
        Error::Unsupported { .. } => BgStatus::Unsupported,
        Error::InvalidParameter(_) => BgStatus::InvalidParameter,
    }
}

enum Failure {
    Null,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure> + UnwindSafe>(f: F) -> BgStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => BgStatus::Ok,
        Ok(Err(Failure::Null)) => {
            set_last_error("null pointer argument");
            BgStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            BgStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    out.write(value);
    Ok(())
}

unsafe fn write_box<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(value)))
}

fn opt(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

/// Message of the last failed call on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn bg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn bg_state_new(
    n: f64,
    m_re: f64,
    m_im: f64,
    d_re: f64,
    d_im: f64,
    out: *mut *mut BgState,
) -> BgStatus {
    guard(|| {
        let s = GaussianState::new(n, Complex64::new(m_re, m_im), Complex64::new(d_re, d_im))?;
        write_box(out, BgState(s))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_state_free(state: *mut BgState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bg_state_params(
    state: *const BgState,
    out: *mut BgStateParams,
) -> BgStatus {
    guard(|| {
        let s = deref(state)?.0;
        write(
            out,
            BgStateParams {
                n: s.n(),
                m_re: s.m().re,
                m_im: s.m().im,
                d_re: s.d().re,
                d_im: s.d().im,
            },
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_state_char_fn(
    state: *const BgState,
    mu_re: f64,
    mu_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> BgStatus {
    guard(|| {
        let chi = deref(state)?.0.char_fn(Complex64::new(mu_re, mu_im));
        write(out_re, chi.re)?;
        write(out_im, chi.im)
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_state_squeeze(
    state: *const BgState,
    r: f64,
    phi: f64,
    out: *mut *mut BgState,
) -> BgStatus {
    guard(|| {
        let s = deref(state)?.0.squeeze(SqueezeParams::new(r, phi));
        write_box(out, BgState(s))
    })
}

/// Max-norm distance over `(n, Re m, Im m, Re d, Im d)`.
#[no_mangle]
pub unsafe extern "C" fn bg_state_distance(
    a: *const BgState,
    b: *const BgState,
    out: *mut f64,
) -> BgStatus {
    guard(|| {
        let d = deref(a)?.0.distance(&deref(b)?.0);
        write(out, d)
    })
}

/// Beam splitter (`k ≤ 1`) or amplifier (`k > 1`) coupling.
#[no_mangle]
pub unsafe extern "C" fn bg_coupling_canonical(k: f64, out: *mut *mut BgCoupling) -> BgStatus {
    guard(|| write_box(out, BgCoupling(k_coupling(k)?)))
}

/// Builds a coupling from 32 doubles: the 16 entries in row-major order,
/// each as `(re, im)`. The matrix is not validated here.
#[no_mangle]
pub unsafe extern "C" fn bg_coupling_from_entries(
    entries: *const f64,
    out: *mut *mut BgCoupling,
) -> BgStatus {
    guard(|| {
        if entries.is_null() {
            return Err(Failure::Null);
        }
        let e = std::slice::from_raw_parts(entries, 32);
        let m = nalgebra::Matrix4::from_fn(|i, j| {
            let idx = 2 * (4 * i + j);
            Complex64::new(e[idx], e[idx + 1])
        });
        write_box(out, BgCoupling(CouplingMatrix::from_matrix(m)))
    })
}

/// Writes the 16 entries as 32 doubles, row-major `(re, im)` pairs.
#[no_mangle]
pub unsafe extern "C" fn bg_coupling_entries(
    coupling: *const BgCoupling,
    out: *mut f64,
) -> BgStatus {
    guard(|| {
        let c = deref(coupling)?.0;
        if out.is_null() {
            return Err(Failure::Null);
        }
        let dst = std::slice::from_raw_parts_mut(out, 32);
        for i in 0..4 {
            for j in 0..4 {
                let idx = 2 * (4 * i + j);
                dst[idx] = c.entry(i, j).re;
                dst[idx + 1] = c.entry(i, j).im;
            }
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_coupling_free(coupling: *mut BgCoupling) {
    if !coupling.is_null() {
        drop(Box::from_raw(coupling));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bg_coupling_q(coupling: *const BgCoupling, out: *mut f64) -> BgStatus {
    guard(|| write(out, deref(coupling)?.0.q()))
}

/// Returns `Ok` iff the symplectic residual is at most `tol`; the residual
/// is written to `residual` either way.
#[no_mangle]
pub unsafe extern "C" fn bg_coupling_validate(
    coupling: *const BgCoupling,
    tol: f64,
    residual: *mut f64,
) -> BgStatus {
    guard(|| {
        let report = validate_coupling(&deref(coupling)?.0, tol);
        write(residual, report.max_residual)?;
        if report.passed {
            Ok(())
        } else {
            Err(Error::InvalidCoupling {
                residual: report.max_residual,
            }
            .into())
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_coupling_swap(
    coupling: *const BgCoupling,
    out: *mut *mut BgCoupling,
) -> BgStatus {
    guard(|| {
        let c = deref(coupling)?.0.swapped();
        write_box(out, BgCoupling(c))
    })
}

/// Random dressed coupling in the requested regime; pass `k = NaN` to draw
/// `k` from the seed as well.
#[no_mangle]
pub unsafe extern "C" fn bg_coupling_generate(
    seed: u64,
    regime: BgRegime,
    k: f64,
    out: *mut *mut BgCoupling,
) -> BgStatus {
    guard(|| {
        let regime = match regime {
            BgRegime::BeamSplitter => TargetRegime::BeamSplitter,
            BgRegime::Amplifier => TargetRegime::Amplifier,
            BgRegime::Negative => TargetRegime::Negative,
        };
        let params = GenerateParams {
            k: if k.is_nan() { None } else { Some(k) },
            dressing: None,
        };
        write_box(out, BgCoupling(generate_coupling(seed, regime, params)?))
    })
}

/// Output of `E[k, env]` (or its weakly complementary map) on `rho`.
#[no_mangle]
pub unsafe extern "C" fn bg_apply_k(
    k: f64,
    env: *const BgState,
    rho: *const BgState,
    complementary: bool,
    out: *mut *mut BgState,
) -> BgStatus {
    guard(|| {
        let ch = KChannel::new(k, deref(env)?.0)?;
        let rho = &deref(rho)?.0;
        let s = if complementary {
            ch.apply_complementary(rho)
        } else {
            ch.apply(rho)
        };
        write_box(out, BgState(s))
    })
}

/// Output of the channel given by an arbitrary coupling, through the joint
/// two-mode evolution.
#[no_mangle]
pub unsafe extern "C" fn bg_apply_general(
    coupling: *const BgCoupling,
    env: *const BgState,
    rho: *const BgState,
    complementary: bool,
    out: *mut *mut BgState,
) -> BgStatus {
    guard(|| {
        let spec = ChannelSpec::new(deref(coupling)?.0, deref(env)?.0)?;
        let rho = &deref(rho)?.0;
        let s = if complementary {
            spec.apply_complementary(rho)
        } else {
            spec.apply(rho)
        };
        write_box(out, BgState(s))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_classify(
    coupling: *const BgCoupling,
    out: *mut BgClassification,
) -> BgStatus {
    guard(|| {
        let c = classify(&deref(coupling)?.0)?;
        let equivalent_map = match c.equivalent_map.kind {
            MapKind::ConjugateAmplifier => BgMapKind::ConjugateAmplifier,
            MapKind::BeamSplitter => BgMapKind::BeamSplitter,
            MapKind::Amplifier => BgMapKind::Amplifier,
            MapKind::Undetermined => BgMapKind::Undetermined,
        };
        write(
            out,
            BgClassification {
                q: c.q,
                weakly_degradable: c.weakly_degradable,
                anti_degradable: c.anti_degradable,
                degrading_k: opt(c.degrading_k),
                antidegrading_k: opt(c.antidegrading_k),
                equivalent_map,
                equivalent_k: opt(c.equivalent_map.k),
            },
        )
    })
}

/// Max residual of a degrading-map identity over `samples` random inputs.
#[no_mangle]
pub unsafe extern "C" fn bg_verify_identity(
    identity: BgIdentity,
    k: f64,
    env: *const BgState,
    samples: usize,
    seed: u64,
    out: *mut BgResidual,
) -> BgStatus {
    guard(|| {
        let identity = match identity {
            BgIdentity::WeakDegradability => Identity::WeakDegradability,
            BgIdentity::AntiDegradability => Identity::AntiDegradability,
        };
        let env = &deref(env)?.0;
        let r = composition_residual(identity, k, env, env, samples, seed)?;
        write(
            out,
            BgResidual {
                k: r.k,
                k_prime: r.k_prime,
                max_residual: r.max_residual,
            },
        )
    })
}

fn to_c(d: &Decomposition) -> BgDecomposition {
    BgDecomposition {
        case_: match d.case {
            Case::BeamSplitter => BgCase::BeamSplitter,
            Case::Amplifier => BgCase::Amplifier,
            Case::ConjugateAmplifier => BgCase::ConjugateAmplifier,
        },
        k: d.k,
        sa_r: d.sa.r,
        sa_phi: d.sa.phi,
        sb_r: d.sb.r,
        sb_phi: d.sb.phi,
        sb_prime_r: d.sb_prime.r,
        sb_prime_phi: d.sb_prime.phi,
        phase_a: d.phase_a,
        phase_b: d.phase_b,
        global_phase: d.global_phase,
        swapped: d.swapped,
    }
}

fn from_c(d: &BgDecomposition) -> Decomposition {
    Decomposition {
        case: match d.case_ {
            BgCase::BeamSplitter => Case::BeamSplitter,
            BgCase::Amplifier => Case::Amplifier,
            BgCase::ConjugateAmplifier => Case::ConjugateAmplifier,
        },
        k: d.k,
        sa: SqueezeParams::new(d.sa_r, d.sa_phi),
        sb: SqueezeParams::new(d.sb_r, d.sb_phi),
        sb_prime: SqueezeParams::new(d.sb_prime_r, d.sb_prime_phi),
        phase_a: d.phase_a,
        phase_b: d.phase_b,
        global_phase: d.global_phase,
        swapped: d.swapped,
    }
}

#[no_mangle]
pub unsafe extern "C" fn bg_decompose(
    coupling: *const BgCoupling,
    out: *mut BgDecomposition,
) -> BgStatus {
    guard(|| {
        let d = decompose(&deref(coupling)?.0)?;
        write(out, to_c(&d))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bg_apply_decomposed(
    decomposition: *const BgDecomposition,
    env: *const BgState,
    rho: *const BgState,
    out: *mut *mut BgState,
) -> BgStatus {
    guard(|| {
        let d = from_c(deref(decomposition)?);
        let s = apply_decomposed(&d, &deref(env)?.0, &deref(rho)?.0)?;
        write_box(out, BgState(s))
    })
}

/// Max distance between the direct channel and its decomposed form.
#[no_mangle]
pub unsafe extern "C" fn bg_verify_decomposition(
    coupling: *const BgCoupling,
    env: *const BgState,
    samples: usize,
    seed: u64,
    residual: *mut f64,
) -> BgStatus {
    guard(|| {
        let r = verify_decomposition(&deref(coupling)?.0, &deref(env)?.0, samples, seed)?;
        write(residual, r.max_residual)
    })
}
