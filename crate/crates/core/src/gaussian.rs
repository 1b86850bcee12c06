//! One-mode Gaussian states.
//!
//! A state is stored through its first and second moments:
//!
//! * `d = <a>` is the displacement,
//! * `n + 1/2 = <{Δa, Δa†}>/2` is the symmetrized second moment (so `n` is the
//!   mean photon number of the undisplaced state),
//! * `m = <(Δa)²>` is the anomalous moment.
//!
//! With these conventions the characteristic function
//! `χ(μ) = Tr[ρ exp(μ a† − μ* a)]` reads
//!
//! ```text
//! χ(μ) = exp[ −(n + 1/2)|μ|² + Re(μ*² m) + μ d* − μ* d ]
//! ```
//!
//! which is the Gaussian form `exp[−ζ·Γ·ζ†/2 − ζ₀·ζ†]` with `ζ = (μ*, −μ)`,
//! covariance `Γ = [[n + 1/2, m], [m*, n + 1/2]]` and `ζ₀ = (−d*, −d)`. The
//! vacuum therefore has `χ(μ) = exp(−|μ|²/2)`.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the uncertainty relation `(n + 1/2)² − |m|² ≥ 1/4`.
pub const STATE_TOL: f64 = 1e-9;

/// One-mode Gaussian state `(n, m, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateJson")]
pub struct GaussianState {
    n: f64,
    m: Complex64,
    d: Complex64,
}

/// Unvalidated wire form `{"n": real, "m": [re, im], "d": [re, im]}`;
/// `m` and `d` default to zero.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub n: f64,
    #[serde(default)]
    pub m: Complex64,
    #[serde(default)]
    pub d: Complex64,
}

impl TryFrom<StateJson> for GaussianState {
    type Error = Error;

    fn try_from(raw: StateJson) -> Result<Self> {
        GaussianState::new(raw.n, raw.m, raw.d)
    }
}

impl GaussianState {
    pub fn new(n: f64, m: Complex64, d: Complex64) -> Result<Self> {
        let state = Self { n, m, d };
        state.validate()?;
        Ok(state)
    }

    pub(crate) fn from_parts(n: f64, m: Complex64, d: Complex64) -> Self {
        Self { n, m, d }
    }

    pub fn vacuum() -> Self {
        Self {
            n: 0.0,
            m: Complex64::new(0.0, 0.0),
            d: Complex64::new(0.0, 0.0),
        }
    }

    /// Thermal state with mean photon number `n`.
    pub fn thermal(n: f64) -> Result<Self> {
        Self::new(n, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// Coherent state `|d⟩`.
    pub fn coherent(d: Complex64) -> Self {
        Self {
            d,
            ..Self::vacuum()
        }
    }

    /// Thermal state of mean photon number `n` squeezed by `squeeze`.
    pub fn squeezed_thermal(n: f64, squeeze: SqueezeParams) -> Result<Self> {
        Ok(Self::thermal(n)?.squeeze(squeeze))
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> Complex64 {
        self.m
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    /// Returns the same state with its displacement replaced.
    pub fn with_displacement(&self, d: Complex64) -> Self {
        Self { d, ..*self }
    }

    /// `(n + 1/2)² − |m|²`, the determinant of the covariance matrix.
    pub fn symplectic_invariant(&self) -> f64 {
        let diag = self.n + 0.5;
        diag * diag - self.m.norm_sqr()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.symplectic_invariant() - 0.25).abs() <= tol
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.n.is_finite()
            && self.m.re.is_finite()
            && self.m.im.is_finite()
            && self.d.re.is_finite()
            && self.d.im.is_finite();
        if !finite || self.n < -STATE_TOL {
            return Err(Error::MalformedState);
        }
        let invariant = self.symplectic_invariant();
        if invariant < 0.25 - STATE_TOL {
            return Err(Error::InvalidState { invariant });
        }
        Ok(())
    }

    /// Max-norm distance over `(n, Re m, Im m, Re d, Im d)`.
    pub fn distance(&self, other: &Self) -> f64 {
        [
            self.n - other.n,
            self.m.re - other.m.re,
            self.m.im - other.m.im,
            self.d.re - other.d.re,
            self.d.im - other.d.im,
        ]
        .iter()
        .fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Characteristic function `Tr[ρ exp(μ a† − μ* a)]`.
    pub fn char_fn(&self, mu: Complex64) -> Complex64 {
        let exponent = -(self.n + 0.5) * mu.norm_sqr()
            + (mu.conj() * mu.conj() * self.m).re
            + mu * self.d.conj()
            - mu.conj() * self.d;
        exponent.exp()
    }

    /// Applies the squeezer `S(r; φ)`, i.e. returns `S ρ S†`.
    pub fn squeeze(&self, s: SqueezeParams) -> Self {
        let (u, v) = s.bogoliubov();
        self.evolve(u, v)
    }

    /// Applies the phase shifter `R(θ)` with `R a R† = e^{iθ} a`.
    pub fn rotate(&self, theta: f64) -> Self {
        self.evolve(Complex64::from_polar(1.0, theta), Complex64::new(0.0, 0.0))
    }

    /// Evolves the state under the single-mode Gaussian unitary `W` whose
    /// Heisenberg action is `W a W† = u a + v a†` (`|u|² − |v|² = 1`).
    pub(crate) fn evolve(&self, u: Complex64, v: Complex64) -> Self {
        // Moments of W ρ W† are those of ρ pushed through W† a W = u* a − v a†.
        let map = Matrix2::new(u.conj(), -v, -v.conj(), u);
        let (x, cov) = self.moments();
        Self::from_moments(&(map * x), &(map * cov * map.adjoint()))
    }

    /// First moments `(<a>, <a†>)` and covariance `Γ` in the `(a, a†)` basis.
    pub(crate) fn moments(&self) -> (Vector2<Complex64>, Matrix2<Complex64>) {
        let diag = Complex64::new(self.n + 0.5, 0.0);
        (
            Vector2::new(self.d, self.d.conj()),
            Matrix2::new(diag, self.m, self.m.conj(), diag),
        )
    }

    /// Inverse of [`moments`](Self::moments); symmetrizes the conjugate
    /// partner entries, which agree up to rounding for any physical input.
    pub(crate) fn from_moments(x: &Vector2<Complex64>, cov: &Matrix2<Complex64>) -> Self {
        Self {
            n: 0.5 * (cov[(0, 0)].re + cov[(1, 1)].re) - 0.5,
            m: 0.5 * (cov[(0, 1)] + cov[(1, 0)].conj()),
            d: 0.5 * (x[0] + x[1].conj()),
        }
    }
}

/// Squeezing transformation `S(r; φ)` with `S a S† = a cosh r + e^{iφ} a† sinh r`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SqueezeParams {
    pub r: f64,
    pub phi: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, phi: f64) -> Self {
        Self { r, phi }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn inverse(&self) -> Self {
        Self {
            r: -self.r,
            phi: self.phi,
        }
    }

    /// Heisenberg coefficients `(u, v)` of `S a S† = u a + v a†`.
    pub fn bogoliubov(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.r.cosh(), 0.0),
            Complex64::from_polar(self.r.sinh(), self.phi),
        )
    }
}

/// Evaluates the characteristic function of a validated state.
pub fn char_fn_eval(state: &GaussianState, mu: Complex64) -> Result<Complex64> {
    state.validate()?;
    Ok(state.char_fn(mu))
}

pub fn apply_squeeze(state: &GaussianState, s: SqueezeParams) -> Result<GaussianState> {
    state.validate()?;
    Ok(state.squeeze(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn vacuum_char_fn() {
        let chi = char_fn_eval(&GaussianState::vacuum(), c(1.0, 0.0)).unwrap();
        assert_relative_eq!(chi.re, (-0.5f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(chi.im, 0.0);
    }

    #[test]
    fn char_fn_at_origin_is_one() {
        let s = GaussianState::new(1.3, c(0.4, -0.2), c(0.7, 1.1)).unwrap();
        assert_eq!(s.char_fn(c(0.0, 0.0)), c(1.0, 0.0));
    }

    #[test]
    fn thermal_char_fn() {
        let s = GaussianState::thermal(1.0).unwrap();
        assert_relative_eq!(s.char_fn(c(1.0, 0.0)).re, (-1.5f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn rejects_uncertainty_violation() {
        let err = GaussianState::new(0.0, c(0.3, 0.0), c(0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidState { .. }));
        assert!(GaussianState::new(-2.0, c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(GaussianState::new(f64::NAN, c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn zero_squeeze_is_identity() {
        let s = GaussianState::new(0.8, c(0.1, 0.2), c(-0.3, 0.5)).unwrap();
        assert_eq!(s.squeeze(SqueezeParams::identity()).distance(&s), 0.0);
    }

    #[test]
    fn squeezed_vacuum_moments() {
        let r = 0.5;
        let s = GaussianState::vacuum().squeeze(SqueezeParams::new(r, 0.0));
        assert_relative_eq!(s.n() + 0.5, (2.0 * r).cosh() / 2.0, epsilon = 1e-14);
        assert_relative_eq!(s.n() + 0.5, 0.771_540_317_4, epsilon = 1e-10);
        assert_relative_eq!(s.m().re, -(2.0 * r).sinh() / 2.0, epsilon = 1e-14);
        assert!(s.is_pure(1e-12));
    }

    #[test]
    fn inverse_squeeze_restores_state() {
        let s = GaussianState::new(0.8, c(0.1, 0.2), c(-0.3, 0.5)).unwrap();
        let sq = SqueezeParams::new(0.7, 1.1);
        let back = s.squeeze(sq).squeeze(sq.inverse());
        assert!(back.distance(&s) < 1e-12);
    }

    #[test]
    fn squeeze_displacement_follows_inverse_bogoliubov() {
        let sq = SqueezeParams::new(0.3, 0.4);
        let s = GaussianState::coherent(c(1.0, 0.5)).squeeze(sq);
        let d = c(1.0, 0.5);
        let expected = d * 0.3f64.cosh() - Complex64::from_polar(0.3f64.sinh(), 0.4) * d.conj();
        assert!((s.d() - expected).norm() < 1e-14);
    }

    #[test]
    fn rotation_shifts_phases() {
        let s = GaussianState::new(0.5, c(0.2, 0.0), c(1.0, 0.0)).unwrap();
        let r = s.rotate(0.25);
        assert!((r.d() - Complex64::from_polar(1.0, -0.25)).norm() < 1e-15);
        assert!((r.m() - Complex64::from_polar(0.2, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let s = GaussianState::new(1.0, c(0.25, -0.5), c(2.0, 0.0)).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"n":1.0,"m":[0.25,-0.5],"d":[2.0,0.0]}"#);
        let back: GaussianState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<GaussianState>(r#"{"n":0.0,"m":[0.9,0.0]}"#).is_err());
    }
}
