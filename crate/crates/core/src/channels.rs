//! Beam-splitter and amplifier channels `E[k, σ_b]`, generic single-mode
//! environment channels `E[A, σ_b]`, and their weakly complementary maps.
//!
//! Every channel is computed along two independent routes:
//!
//! * [`apply_k`] / [`apply_k_complementary`] substitute the scaled arguments
//!   into the Gaussian characteristic function, which gives an affine map on
//!   `(n, m, d)`;
//! * [`apply_general`] / [`apply_general_complementary`] evolve the joint
//!   two-mode moments under the coupling and keep one block (the covariance
//!   counterpart of a partial trace).
//!
//! The second route serves as the oracle for the first.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coupling::{CouplingMatrix, COUPLING_TOL};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianState, StateJson, STATE_TOL};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Beam splitter of transmissivity `k ∈ [0, 1]`.
pub fn bs_coupling(k: f64) -> Result<CouplingMatrix> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k,
            range: "[0, 1]",
        });
    }
    let t = real(k.sqrt());
    let r = real((1.0 - k).sqrt());
    Ok(CouplingMatrix::from_rows(
        [t, ZERO, -r, ZERO],
        [r, ZERO, t, ZERO],
    ))
}

/// Amplifier of gain `k ≥ 1`.
pub fn amp_coupling(k: f64) -> Result<CouplingMatrix> {
    if !(k >= 1.0 && k.is_finite()) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k,
            range: "[1, ∞)",
        });
    }
    let g = real(k.sqrt());
    let h = real((k - 1.0).sqrt());
    Ok(CouplingMatrix::from_rows(
        [g, ZERO, ZERO, -h],
        [ZERO, -h, g, ZERO],
    ))
}

/// Canonical coupling `A^(k)`: beam splitter for `k ≤ 1`, amplifier above.
pub fn k_coupling(k: f64) -> Result<CouplingMatrix> {
    if k <= 1.0 {
        bs_coupling(k)
    } else {
        amp_coupling(k)
    }
}

fn check_env(env: &GaussianState) -> Result<()> {
    env.validate()?;
    let d = env.d().norm();
    if d > STATE_TOL {
        return Err(Error::DisplacedEnvironment(d));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    BeamSplitter,
    Amplifier,
}

/// The channel family `E[k, σ_b]`. `k = 1` is treated as a beam splitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KChannel {
    k: f64,
    env: GaussianState,
}

impl KChannel {
    pub fn new(k: f64, env: GaussianState) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::OutOfRange {
                name: "k",
                value: k,
                range: "[0, ∞)",
            });
        }
        check_env(&env)?;
        Ok(Self { k, env })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn env(&self) -> &GaussianState {
        &self.env
    }

    pub fn regime(&self) -> Regime {
        if self.k <= 1.0 {
            Regime::BeamSplitter
        } else {
            Regime::Amplifier
        }
    }

    pub fn coupling(&self) -> CouplingMatrix {
        k_coupling(self.k).expect("k validated at construction")
    }

    pub fn to_spec(&self) -> ChannelSpec {
        ChannelSpec {
            coupling: self.coupling(),
            env: self.env,
        }
    }

    /// `χ'(μ) = χ(√k μ) ξ(√(1−k) μ)` or `χ(√k μ) ξ(−√(k−1) μ*)`.
    pub fn apply(&self, rho: &GaussianState) -> GaussianState {
        let k = self.k;
        let env = &self.env;
        let (n, m) = match self.regime() {
            Regime::BeamSplitter => (
                k * (rho.n() + 0.5) + (1.0 - k) * (env.n() + 0.5) - 0.5,
                rho.m() * k + env.m() * (1.0 - k),
            ),
            Regime::Amplifier => (
                k * (rho.n() + 0.5) + (k - 1.0) * (env.n() + 0.5) - 0.5,
                rho.m() * k + env.m().conj() * (k - 1.0),
            ),
        };
        unchecked_state(n, m, rho.d() * k.sqrt())
    }

    /// `χ'(μ) = χ(−√(1−k) μ) ξ(√k μ)` or `χ(−√(k−1) μ*) ξ(√k μ)`.
    pub fn apply_complementary(&self, rho: &GaussianState) -> GaussianState {
        let k = self.k;
        let env = &self.env;
        match self.regime() {
            Regime::BeamSplitter => unchecked_state(
                (1.0 - k) * (rho.n() + 0.5) + k * (env.n() + 0.5) - 0.5,
                rho.m() * (1.0 - k) + env.m() * k,
                -rho.d() * (1.0 - k).sqrt(),
            ),
            Regime::Amplifier => unchecked_state(
                (k - 1.0) * (rho.n() + 0.5) + k * (env.n() + 0.5) - 0.5,
                rho.m().conj() * (k - 1.0) + env.m() * k,
                rho.d().conj() * (k - 1.0).sqrt(),
            ),
        }
    }
}

// Channel outputs of valid inputs are valid; no re-validation on the fast path.
fn unchecked_state(n: f64, m: Complex64, d: Complex64) -> GaussianState {
    GaussianState::from_parts(n, m, d)
}

/// A channel `E[U_ab, σ_b]` given by its coupling and environment state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelSpec {
    pub coupling: CouplingMatrix,
    pub env: GaussianState,
}

impl ChannelSpec {
    pub fn new(coupling: CouplingMatrix, env: GaussianState) -> Result<Self> {
        let spec = Self { coupling, env };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.coupling.validate(COUPLING_TOL)?;
        check_env(&self.env)
    }

    /// Same channel represented through `Ξ U`: channel and weakly
    /// complementary map trade places.
    pub fn swapped(&self) -> Self {
        Self {
            coupling: self.coupling.swapped(),
            env: self.env,
        }
    }

    /// Joint first moments and covariance of `U (ρ ⊗ σ_b) U†` in the
    /// `(a, a†, b, b†)` basis.
    fn evolve_joint(&self, rho: &GaussianState) -> (Vector4<Complex64>, Matrix4<Complex64>) {
        let (xa, ca) = rho.moments();
        let (xb, cb) = self.env.moments();
        let x = Vector4::new(xa[0], xa[1], xb[0], xb[1]);
        let mut cov = Matrix4::zeros();
        cov.fixed_view_mut::<2, 2>(0, 0).copy_from(&ca);
        cov.fixed_view_mut::<2, 2>(2, 2).copy_from(&cb);
        // Schrödinger-picture moments transform with U† v U = A⁻¹ v.
        let inv = self.coupling.symplectic_inverse();
        (inv * x, inv * cov * inv.adjoint())
    }

    fn reduced(&self, rho: &GaussianState, offset: usize) -> GaussianState {
        let (x, cov) = self.evolve_joint(rho);
        GaussianState::from_moments(
            &x.fixed_rows::<2>(offset).into_owned(),
            &cov.fixed_view::<2, 2>(offset, offset).into_owned(),
        )
    }

    /// `Tr_b[U (ρ ⊗ σ_b) U†]`.
    pub fn apply(&self, rho: &GaussianState) -> GaussianState {
        self.reduced(rho, 0)
    }

    /// `Tr_a[U (ρ ⊗ σ_b) U†]`, relabeled as a state of mode `a`.
    pub fn apply_complementary(&self, rho: &GaussianState) -> GaussianState {
        self.reduced(rho, 2)
    }
}

pub fn apply_k(ch: &KChannel, rho: &GaussianState) -> Result<GaussianState> {
    rho.validate()?;
    Ok(ch.apply(rho))
}

pub fn apply_k_complementary(ch: &KChannel, rho: &GaussianState) -> Result<GaussianState> {
    rho.validate()?;
    Ok(ch.apply_complementary(rho))
}

pub fn apply_general(spec: &ChannelSpec, rho: &GaussianState) -> Result<GaussianState> {
    spec.validate()?;
    rho.validate()?;
    Ok(spec.apply(rho))
}

pub fn apply_general_complementary(
    spec: &ChannelSpec,
    rho: &GaussianState,
) -> Result<GaussianState> {
    spec.validate()?;
    rho.validate()?;
    Ok(spec.apply_complementary(rho))
}

/// Wire form of a coupling: a full matrix or a named canonical family.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CouplingJson {
    Matrix(Box<CouplingMatrix>),
    BeamSplitter { bs: f64 },
    Amplifier { amp: f64 },
}

impl CouplingJson {
    pub fn build(&self) -> Result<CouplingMatrix> {
        match *self {
            CouplingJson::Matrix(ref a) => Ok(**a),
            CouplingJson::BeamSplitter { bs } => bs_coupling(bs),
            CouplingJson::Amplifier { amp } => amp_coupling(amp),
        }
    }
}

/// Wire form of a [`ChannelSpec`]:
/// `{"coupling": {"A": ...} | {"bs": k} | {"amp": k}, "env": state}`.
/// `"bs"`/`"amp"` may also appear at top level; `env` defaults to vacuum.
#[derive(Debug, Clone, Deserialize)]
pub struct ChannelSpecJson {
    #[serde(default)]
    pub coupling: Option<CouplingJson>,
    #[serde(default)]
    pub bs: Option<f64>,
    #[serde(default)]
    pub amp: Option<f64>,
    #[serde(default)]
    pub env: Option<StateJson>,
}

impl ChannelSpecJson {
    pub fn coupling(&self) -> Result<CouplingMatrix> {
        match (&self.coupling, self.bs, self.amp) {
            (Some(c), None, None) => c.build(),
            (None, Some(k), None) => bs_coupling(k),
            (None, None, Some(k)) => amp_coupling(k),
            _ => Err(Error::InvalidParameter(
                "channel needs exactly one of \"coupling\", \"bs\" or \"amp\"".into(),
            )),
        }
    }

    pub fn env(&self) -> Result<GaussianState> {
        self.env
            .map(GaussianState::try_from)
            .unwrap_or_else(|| Ok(GaussianState::vacuum()))
    }

    pub fn build(&self) -> Result<ChannelSpec> {
        ChannelSpec::new(self.coupling()?, self.env()?)
    }
}
