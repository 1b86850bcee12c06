//! Reduction of a generic one-mode Gaussian coupling to squeezers around a
//! canonical beam splitter or amplifier.
//!
//! A coupling `U` with `q ∉ {0, 1}` factors as
//!
//! ```text
//! U = Ξ^s (S_a R_a(θ_a) ⊗ S_b R_b(θ_b)) U^(k) S_b′ R_b(θ′)
//! ```
//!
//! (operators act right to left), where `S` are squeezers, `R(θ)` phase
//! shifters with `R a R† = e^{iθ} a`, `U^(k)` the canonical coupling and `Ξ`
//! the mode exchange, present only when `q < 0`. Then `k = q` for
//! `q ∈ (0, 1) ∪ (1, ∞)` and `k = 1 − q` for `q < 0`, and the channel becomes
//!
//! ```text
//! E[U, σ_b](ρ) = V (E[k, σ_b′](ρ)) V†      (q > 0)
//! E[U, σ_b](ρ) = V (Ẽ[k, σ_b′](ρ)) V†      (q < 0)
//! ```
//!
//! with `σ_b′ = S_b′ R_b(θ′) σ_b R_b(θ′)† S_b′†` and `V = S_a R_a(θ_a)`
//! (resp. `S_b R_b(θ_b)` relabeled onto `a` when swapped).

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channels::{k_coupling, ChannelSpec, KChannel};
use crate::coupling::{CouplingMatrix, COUPLING_TOL};
use crate::degradability::BOUNDARY_TOL;
use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, SqueezeParams};
use crate::sampling;

/// Below this magnitude a squeezing phase is undefined and pinned to zero.
const PHASE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "BS")]
    BeamSplitter,
    Amplifier,
    ConjugateAmplifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub case: Case,
    /// Transmissivity (`BS`) or gain of the canonical coupling.
    pub k: f64,
    pub sa: SqueezeParams,
    pub sb: SqueezeParams,
    pub sb_prime: SqueezeParams,
    /// Phase shift applied on `a` before `S_a`.
    pub phase_a: f64,
    /// Phase shift applied on `b` before `S_b`.
    pub phase_b: f64,
    /// Phase shift applied on the environment before `S_b′`.
    pub global_phase: f64,
    pub swapped: bool,
}

fn wrap(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// Heisenberg coefficients of `S(r; φ) R(θ)`: `u = e^{iθ} cosh r`,
/// `v = e^{i(θ+φ)} sinh r`.
fn local_coefficients(s: SqueezeParams, theta: f64) -> (Complex64, Complex64) {
    let rot = Complex64::from_polar(1.0, theta);
    let (u, v) = s.bogoliubov();
    (rot * u, rot * v)
}

/// Inverse of [`local_coefficients`] with `r ≥ 0`, angles in `[0, 2π)` and
/// the squeezing phase pinned to zero when `r` vanishes.
fn split_local(u: Complex64, v: Complex64) -> (SqueezeParams, f64) {
    let theta = u.arg();
    let r = v.norm().asinh();
    let phi = if v.norm() > PHASE_TOL {
        wrap(v.arg() - theta)
    } else {
        0.0
    };
    (SqueezeParams::new(r, phi), wrap(theta))
}

impl Decomposition {
    fn assemble(case: Case, k: f64, d: Dressing, swapped: bool) -> Self {
        Self {
            case,
            k,
            sa: d.sa,
            sb: d.sb,
            sb_prime: d.sb_prime,
            phase_a: d.phase_a,
            phase_b: d.phase_b,
            global_phase: d.global_phase,
            swapped,
        }
    }

    fn check(&self) -> Result<()> {
        let ok = match self.case {
            Case::BeamSplitter => self.k > 0.0 && self.k < 1.0 && !self.swapped,
            Case::Amplifier => self.k > 1.0 && !self.swapped,
            Case::ConjugateAmplifier => self.k > 1.0 && self.swapped,
        };
        if ok && self.k.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "inconsistent decomposition: case {:?}, k = {}, swapped = {}",
                self.case, self.k, self.swapped
            )))
        }
    }

    /// Equivalent value of the invariant `q` of the represented coupling.
    pub fn q(&self) -> f64 {
        if self.swapped {
            1.0 - self.k
        } else {
            self.k
        }
    }

    /// Heisenberg matrices of the factors, in multiplication order:
    /// `[S_b′R_b(θ′), U^(k), (S_aR_a ⊗ S_bR_b), Ξ?]`.
    pub fn factors(&self) -> Result<Vec<CouplingMatrix>> {
        self.check()?;
        let (uw, vw) = local_coefficients(self.sb_prime, self.global_phase);
        let mut factors = vec![
            CouplingMatrix::local_b(uw, vw),
            k_coupling(self.k)?,
            CouplingMatrix::local(
                local_coefficients(self.sa, self.phase_a),
                local_coefficients(self.sb, self.phase_b),
            ),
        ];
        if self.swapped {
            factors.push(CouplingMatrix::exchange());
        }
        Ok(factors)
    }

    /// Multiplies the factors back into the coupling they represent.
    pub fn compose(&self) -> Result<CouplingMatrix> {
        Ok(self
            .factors()?
            .into_iter()
            .reduce(|acc, f| acc * f)
            .expect("at least three factors"))
    }
}

/// Factors `a` (with `q = |A₁₁|² − |A₁₂|²` already computed and `q > 0`,
/// `q ≠ 1`) around the canonical coupling of parameter `q`.
fn factor_canonical(a: &CouplingMatrix, q: f64) -> Result<Dressing> {
    let sq = q.sqrt();
    let (ua, va) = (a.entry(0, 0) / sq, a.entry(0, 1) / sq);
    let (ub, vb) = if q < 1.0 {
        let s = (1.0 - q).sqrt();
        (-a.entry(0, 2) / s, -a.entry(0, 3) / s)
    } else {
        let s = (q - 1.0).sqrt();
        (-a.entry(0, 3).conj() / s, -a.entry(0, 2).conj() / s)
    };
    let outer = k_coupling(q)? * CouplingMatrix::local((ua, va), (ub, vb));
    // What is left acts on b alone: A = A_W (A_k A_V).
    let inner = a.matrix() * outer.symplectic_inverse();
    let (uw, vw) = (inner[(2, 2)], inner[(2, 3)]);

    let (sa, phase_a) = split_local(ua, va);
    let (sb, phase_b) = split_local(ub, vb);
    let (sb_prime, global_phase) = split_local(uw, vw);
    Ok(Dressing {
        sa,
        sb,
        sb_prime,
        phase_a,
        phase_b,
        global_phase,
    })
}

pub fn decompose(a: &CouplingMatrix) -> Result<Decomposition> {
    a.validate(COUPLING_TOL)?;
    let q = a.q();
    if q.abs() <= BOUNDARY_TOL || (q - 1.0).abs() <= BOUNDARY_TOL {
        return Err(Error::Unsupported { q });
    }
    let (target, k, case, swapped) = if q < 0.0 {
        let swapped = a.swapped();
        let k = swapped.q();
        (swapped, k, Case::ConjugateAmplifier, true)
    } else if q < 1.0 {
        (*a, q, Case::BeamSplitter, false)
    } else {
        (*a, q, Case::Amplifier, false)
    };
    Ok(Decomposition::assemble(
        case,
        k,
        factor_canonical(&target, k)?,
        swapped,
    ))
}

/// Runs the channel through its decomposed form.
pub fn apply_decomposed(
    dec: &Decomposition,
    env: &GaussianState,
    rho: &GaussianState,
) -> Result<GaussianState> {
    dec.check()?;
    rho.validate()?;
    env.validate()?;
    let env_prime = env.rotate(dec.global_phase).squeeze(dec.sb_prime);
    let channel = KChannel::new(dec.k, env_prime)?;
    Ok(if dec.swapped {
        channel
            .apply_complementary(rho)
            .rotate(dec.phase_b)
            .squeeze(dec.sb)
    } else {
        channel.apply(rho).rotate(dec.phase_a).squeeze(dec.sa)
    })
}

/// Target sign pattern of `q` for [`generate_coupling`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetRegime {
    /// `q = k ∈ (0, 1)`.
    #[serde(rename = "BSq")]
    BeamSplitter,
    /// `q = k > 1`.
    #[serde(rename = "AMPq")]
    Amplifier,
    /// `q = 1 − k < 0` with `k > 1`.
    #[serde(rename = "NEGq")]
    Negative,
}

/// Local unitaries wrapped around the canonical coupling.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Dressing {
    pub sa: SqueezeParams,
    pub sb: SqueezeParams,
    pub sb_prime: SqueezeParams,
    pub phase_a: f64,
    pub phase_b: f64,
    pub global_phase: f64,
}

impl Dressing {
    /// Squeezing magnitudes in `[0, 1]`, all angles uniform.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut squeeze =
            || SqueezeParams::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..TAU));
        let (sa, sb, sb_prime) = (squeeze(), squeeze(), squeeze());
        Self {
            sa,
            sb,
            sb_prime,
            phase_a: rng.random_range(0.0..TAU),
            phase_b: rng.random_range(0.0..TAU),
            global_phase: rng.random_range(0.0..TAU),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GenerateParams {
    /// Parameter of the canonical coupling; drawn from the seed when absent.
    pub k: Option<f64>,
    /// Local dressing; drawn from the seed when absent.
    pub dressing: Option<Dressing>,
}

/// Builds the decomposition that [`generate_coupling`] multiplies out.
pub fn generate_decomposition(
    seed: u64,
    regime: TargetRegime,
    params: GenerateParams,
) -> Result<Decomposition> {
    let mut rng = sampling::rng(seed);
    let (case, swapped, lo, hi) = match regime {
        TargetRegime::BeamSplitter => (Case::BeamSplitter, false, 0.05, 0.95),
        TargetRegime::Amplifier => (Case::Amplifier, false, 1.05, 5.0),
        TargetRegime::Negative => (Case::ConjugateAmplifier, true, 1.05, 5.0),
    };
    let k = match params.k {
        Some(k) => k,
        None => rng.random_range(lo..=hi),
    };
    let valid = match regime {
        TargetRegime::BeamSplitter => k > BOUNDARY_TOL && k < 1.0 - BOUNDARY_TOL,
        TargetRegime::Amplifier | TargetRegime::Negative => k > 1.0 + BOUNDARY_TOL && k.is_finite(),
    };
    if !valid {
        return Err(Error::OutOfRange {
            name: "k",
            value: k,
            range: match regime {
                TargetRegime::BeamSplitter => "(0, 1)",
                _ => "(1, ∞)",
            },
        });
    }
    let dressing = match params.dressing {
        Some(d) => d,
        None => Dressing::random(&mut rng),
    };
    Ok(Decomposition::assemble(case, k, dressing, swapped))
}

/// Test coupling with a prescribed `q`: `q = k` for `BSq`/`AMPq`,
/// `q = 1 − k` for `NEGq`.
pub fn generate_coupling(
    seed: u64,
    regime: TargetRegime,
    params: GenerateParams,
) -> Result<CouplingMatrix> {
    generate_decomposition(seed, regime, params)?.compose()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub decomposition: Decomposition,
    pub max_residual: f64,
    pub samples: usize,
}

/// Compares the direct channel with its decomposed form on random inputs.
pub fn verify_decomposition(
    a: &CouplingMatrix,
    env: &GaussianState,
    samples: usize,
    seed: u64,
) -> Result<DecompositionReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let spec = ChannelSpec::new(*a, *env)?;
    let decomposition = decompose(a)?;
    let mut rng = sampling::rng(seed);
    let mut max_residual: f64 = 0.0;
    for _ in 0..samples {
        let rho = sampling::random_state(&mut rng);
        let direct = spec.apply(&rho);
        let via = apply_decomposed(&decomposition, env, &rho)?;
        max_residual = max_residual.max(direct.distance(&via));
    }
    Ok(DecompositionReport {
        decomposition,
        max_residual,
        samples,
    })
}
