use std::ffi::CStr;
use std::ptr;

use bosonic_channels_ffi::*;

unsafe fn state(n: f64, m: (f64, f64), d: (f64, f64)) -> *mut BgState {
    let mut out = ptr::null_mut();
    assert_eq!(bg_state_new(n, m.0, m.1, d.0, d.1, &mut out), BgStatus::Ok);
    out
}

unsafe fn params(s: *const BgState) -> BgStateParams {
    let mut p = BgStateParams::default();
    assert_eq!(bg_state_params(s, &mut p), BgStatus::Ok);
    p
}

unsafe fn last_error() -> String {
    CStr::from_ptr(bg_last_error_message())
        .to_string_lossy()
        .into_owned()
}

#[test]
fn thermal_characteristic_function() {
    unsafe {
        let s = state(1.0, (0.0, 0.0), (0.0, 0.0));
        let (mut re, mut im) = (0.0, 0.0);
        assert_eq!(
            bg_state_char_fn(s, 1.0, 0.0, &mut re, &mut im),
            BgStatus::Ok
        );
        assert!((re - (-1.5f64).exp()).abs() < 1e-15);
        assert_eq!(im, 0.0);
        bg_state_free(s);
    }
}

#[test]
fn invalid_state_reports_code_and_message() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            bg_state_new(0.0, 1.0, 0.0, 0.0, 0.0, &mut out),
            BgStatus::InvalidState
        );
        assert!(out.is_null());
        assert!(last_error().contains("invalid Gaussian state"));
        assert_eq!(
            bg_state_new(0.0, 0.0, 0.0, 0.0, 0.0, ptr::null_mut()),
            BgStatus::NullPointer
        );
        let mut p = BgStateParams::default();
        assert_eq!(bg_state_params(ptr::null(), &mut p), BgStatus::NullPointer);
    }
}

#[test]
fn beam_splitter_on_coherent_state() {
    unsafe {
        let env = state(0.0, (0.0, 0.0), (0.0, 0.0));
        let rho = state(0.0, (0.0, 0.0), (1.0, 0.0));
        let mut c = ptr::null_mut();
        assert_eq!(bg_coupling_canonical(0.3, &mut c), BgStatus::Ok);

        let mut out = ptr::null_mut();
        assert_eq!(bg_apply_general(c, env, rho, false, &mut out), BgStatus::Ok);
        let p = params(out);
        assert!(p.n.abs() < 1e-12);
        assert!((p.d_re - 0.3f64.sqrt()).abs() < 1e-12);
        bg_state_free(out);

        let mut out = ptr::null_mut();
        assert_eq!(bg_apply_k(0.3, env, rho, true, &mut out), BgStatus::Ok);
        let p = params(out);
        assert!((p.d_re + 0.7f64.sqrt()).abs() < 1e-12);
        bg_state_free(out);

        bg_coupling_free(c);
        bg_state_free(env);
        bg_state_free(rho);
    }
}

#[test]
fn displaced_environment_rejected() {
    unsafe {
        let env = state(0.0, (0.0, 0.0), (0.5, 0.0));
        let rho = state(0.0, (0.0, 0.0), (0.0, 0.0));
        let mut out = ptr::null_mut();
        assert_eq!(
            bg_apply_k(0.5, env, rho, false, &mut out),
            BgStatus::DisplacedEnvironment
        );
        bg_state_free(env);
        bg_state_free(rho);
    }
}

#[test]
fn classify_amplifier() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(bg_coupling_canonical(2.0, &mut c), BgStatus::Ok);
        let mut q = 0.0;
        assert_eq!(bg_coupling_q(c, &mut q), BgStatus::Ok);
        assert!((q - 2.0).abs() < 1e-12);
        let mut cls = std::mem::MaybeUninit::<BgClassification>::uninit();
        assert_eq!(bg_classify(c, cls.as_mut_ptr()), BgStatus::Ok);
        let cls = cls.assume_init();
        assert!(cls.weakly_degradable);
        assert!(!cls.anti_degradable);
        assert_eq!(cls.equivalent_map, BgMapKind::Amplifier);
        assert!((cls.degrading_k - 1.5).abs() < 1e-12);
        assert!(cls.antidegrading_k.is_nan());
        bg_coupling_free(c);
    }
}

#[test]
fn entries_round_trip_and_validation() {
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(bg_coupling_canonical(0.4, &mut c), BgStatus::Ok);
        let mut e = [0.0; 32];
        assert_eq!(bg_coupling_entries(c, e.as_mut_ptr()), BgStatus::Ok);
        e[0] *= 2.0;
        let mut bad = ptr::null_mut();
        assert_eq!(bg_coupling_from_entries(e.as_ptr(), &mut bad), BgStatus::Ok);
        let mut residual = 0.0;
        assert_eq!(
            bg_coupling_validate(bad, 1e-10, &mut residual),
            BgStatus::InvalidCoupling
        );
        assert!((residual - 1.2).abs() < 1e-12);
        assert_eq!(bg_coupling_validate(c, 1e-10, &mut residual), BgStatus::Ok);
        bg_coupling_free(bad);
        bg_coupling_free(c);
    }
}

#[test]
fn decomposition_through_abi() {
    unsafe {
        let env = state(0.7, (0.1, -0.2), (0.0, 0.0));
        let rho = state(0.3, (0.05, 0.1), (0.4, -1.1));
        for regime in [
            BgRegime::BeamSplitter,
            BgRegime::Amplifier,
            BgRegime::Negative,
        ] {
            let mut c = ptr::null_mut();
            assert_eq!(
                bg_coupling_generate(7, regime, f64::NAN, &mut c),
                BgStatus::Ok
            );
            let mut d = std::mem::MaybeUninit::<BgDecomposition>::uninit();
            assert_eq!(bg_decompose(c, d.as_mut_ptr()), BgStatus::Ok);
            let d = d.assume_init();
            assert_eq!(d.swapped, regime == BgRegime::Negative);

            let (mut direct, mut via) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(
                bg_apply_general(c, env, rho, false, &mut direct),
                BgStatus::Ok
            );
            assert_eq!(bg_apply_decomposed(&d, env, rho, &mut via), BgStatus::Ok);
            let mut dist = 1.0;
            assert_eq!(bg_state_distance(direct, via, &mut dist), BgStatus::Ok);
            assert!(dist < 1e-9, "{regime:?}: {dist}");

            let mut residual = 1.0;
            assert_eq!(
                bg_verify_decomposition(c, env, 20, 1, &mut residual),
                BgStatus::Ok
            );
            assert!(residual < 1e-9);

            bg_state_free(direct);
            bg_state_free(via);
            bg_coupling_free(c);
        }
        let mut c = ptr::null_mut();
        assert_eq!(bg_coupling_canonical(1.0, &mut c), BgStatus::Ok);
        let mut d = std::mem::MaybeUninit::<BgDecomposition>::uninit();
        assert_eq!(bg_decompose(c, d.as_mut_ptr()), BgStatus::Unsupported);
        bg_coupling_free(c);
        bg_state_free(env);
        bg_state_free(rho);
    }
}

#[test]
fn identity_residuals() {
    unsafe {
        let env = state(1.0, (0.0, 0.0), (0.0, 0.0));
        let mut r = BgResidual::default();
        assert_eq!(
            bg_verify_identity(BgIdentity::WeakDegradability, 2.0, env, 50, 42, &mut r),
            BgStatus::Ok
        );
        assert!(r.max_residual < 1e-9);
        assert!((r.k_prime - 1.5).abs() < 1e-12);
        assert_eq!(
            bg_verify_identity(BgIdentity::AntiDegradability, 0.8, env, 50, 42, &mut r),
            BgStatus::OutOfRange
        );
        bg_state_free(env);
    }
}

#[test]
fn free_accepts_null() {
    unsafe {
        bg_state_free(ptr::null_mut());
        bg_coupling_free(ptr::null_mut());
    }
}
