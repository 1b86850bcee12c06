//! Weak-degradability / anti-degradability of one-mode Gaussian channels.
//!
//! The verdict depends only on `q = |A₁₁|² − |A₁₂|²`: weakly degradable for
//! `q ≥ 1/2`, anti-degradable for `q ≤ 1/2`. For the canonical family
//! `E[k, σ_b]` the degrading maps are explicit:
//!
//! * `k ≥ 1/2`: `Ẽ[k, σ_b] = Ẽ[k′, σ_b] ∘ E[k, σ_b]` with `k′ = (2k − 1)/k`,
//! * `k ≤ 1/2`: `E[k, σ_b] = Ẽ[k″, σ_b] ∘ Ẽ[k, σ_b]` with `k″ = (1 − 2k)/(1 − k)`,
//!
//! and both are checked numerically on random Gaussian inputs.

use serde::{Deserialize, Serialize};

use crate::channels::KChannel;
use crate::coupling::{CouplingMatrix, COUPLING_TOL};
use crate::error::{Error, Result};
use crate::gaussian::GaussianState;
use crate::sampling;

/// Half-width of the band around `q ∈ {0, 1/2, 1}` treated as the boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Residual below which a composition identity is considered verified.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Purity slack used when reporting whether the environment is pure.
const PURITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    /// Weakly complementary map of an amplifier of gain `1 − q`.
    ConjugateAmplifier,
    BeamSplitter,
    Amplifier,
    /// `q = 0` or `q = 1`: no equivalent beam splitter/amplifier in general.
    Undetermined,
}

/// Canonical channel unitarily equivalent to a given coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentMap {
    pub kind: MapKind,
    /// Transmissivity or gain of the canonical channel.
    pub k: Option<f64>,
}

impl EquivalentMap {
    pub fn for_q(q: f64) -> Self {
        let (kind, k) = if q < -BOUNDARY_TOL {
            (MapKind::ConjugateAmplifier, Some(1.0 - q))
        } else if q <= BOUNDARY_TOL || (q - 1.0).abs() <= BOUNDARY_TOL {
            (MapKind::Undetermined, None)
        } else if q < 1.0 {
            (MapKind::BeamSplitter, Some(q))
        } else {
            (MapKind::Amplifier, Some(q))
        };
        Self { kind, k }
    }

    pub fn description(&self) -> &'static str {
        match self.kind {
            MapKind::ConjugateAmplifier => "conjugate amplifier of gain 1-q",
            MapKind::BeamSplitter => "BS of transmissivity q",
            MapKind::Amplifier => "amplifier of gain q",
            MapKind::Undetermined => "no equivalent BS/amplifier in general",
        }
    }
}

impl Serialize for EquivalentMap {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            kind: MapKind,
            k: Option<f64>,
            description: &'static str,
        }
        Wire {
            kind: self.kind,
            k: self.k,
            description: self.description(),
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub q: f64,
    pub weakly_degradable: bool,
    pub anti_degradable: bool,
    /// `k′` of the degrading map, when weakly degradable with an equivalent
    /// beam splitter/amplifier.
    pub degrading_k: Option<f64>,
    /// `k″` of the anti-degrading map, when anti-degradable in the
    /// beam-splitter regime.
    pub antidegrading_k: Option<f64>,
    pub equivalent_map: EquivalentMap,
    /// Purity of the environment, when one was supplied.
    pub env_pure: Option<bool>,
    pub notes: Vec<String>,
}

impl Classification {
    /// Records the environment purity; a weakly degradable channel with a
    /// pure environment is degradable.
    pub fn with_env(mut self, env: &GaussianState) -> Self {
        let pure = env.is_pure(PURITY_TOL);
        self.env_pure = Some(pure);
        if self.weakly_degradable {
            self.notes.push(if pure {
                "degradable (env pure)".to_string()
            } else {
                "weakly degradable with a mixed environment; degradability not implied".to_string()
            });
        }
        self
    }
}

pub fn classify(a: &CouplingMatrix) -> Result<Classification> {
    a.validate(COUPLING_TOL)?;
    Ok(classify_q(a.q()))
}

/// Classification from the invariant alone.
pub fn classify_q(q: f64) -> Classification {
    let weakly_degradable = q >= 0.5 - BOUNDARY_TOL;
    let anti_degradable = q <= 0.5 + BOUNDARY_TOL;
    let equivalent_map = EquivalentMap::for_q(q);
    let mut notes = Vec::new();

    let degrading_k = match equivalent_map.kind {
        MapKind::BeamSplitter | MapKind::Amplifier if weakly_degradable => {
            Some((2.0 * q - 1.0) / q)
        }
        _ => None,
    };
    let antidegrading_k = match equivalent_map.kind {
        MapKind::BeamSplitter if anti_degradable => Some(((1.0 - 2.0 * q) / (1.0 - q)).max(0.0)),
        _ => None,
    };

    match equivalent_map.kind {
        MapKind::ConjugateAmplifier => notes.push(format!(
            "unitarily equivalent to the weakly complementary map of an amplifier of gain {}",
            1.0 - q
        )),
        MapKind::Undetermined if q.abs() <= BOUNDARY_TOL => notes.push(
            "q = 0: equivalent BS/amplifier map not always exists; anti-degradable".to_string(),
        ),
        MapKind::Undetermined => notes.push(
            "q = 1: equivalent BS/amplifier map not always exists; weakly degradable".to_string(),
        ),
        _ => {}
    }
    if weakly_degradable && anti_degradable {
        notes.push("q = 1/2: both weakly degradable and anti-degradable".to_string());
    }
    if anti_degradable {
        notes.push("anti-degradable: null quantum capacity".to_string());
    }

    Classification {
        q,
        weakly_degradable,
        anti_degradable,
        degrading_k,
        antidegrading_k,
        equivalent_map,
        env_pure: None,
        notes,
    }
}

/// `k′ = (2k − 1)/k`, defined for `k ≥ 1/2`.
pub fn degrading_k(k: f64) -> Result<f64> {
    if !(k >= 0.5 && k.is_finite()) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k,
            range: "[1/2, ∞)",
        });
    }
    Ok((2.0 * k - 1.0) / k)
}

/// `k″ = (1 − 2k)/(1 − k)`, defined for `k ∈ [0, 1/2]`.
pub fn antidegrading_k(k: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&k) {
        return Err(Error::OutOfRange {
            name: "k",
            value: k,
            range: "[0, 1/2]",
        });
    }
    Ok((1.0 - 2.0 * k) / (1.0 - k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `Ẽ[k, σ_b] = Ẽ[k′, σ_b] ∘ E[k, σ_b]`.
    #[serde(alias = "weak")]
    WeakDegradability,
    /// `E[k, σ_b] = Ẽ[k″, σ_b] ∘ Ẽ[k, σ_b]`.
    #[serde(alias = "anti")]
    AntiDegradability,
}

impl Identity {
    fn parameter(&self, k: f64) -> Result<f64> {
        match self {
            Identity::WeakDegradability => degrading_k(k),
            Identity::AntiDegradability => antidegrading_k(k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub identity: Identity,
    pub k: f64,
    pub k_prime: f64,
    pub max_residual: f64,
    pub samples: usize,
}

impl ResidualReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

/// Max-norm residual of a composition identity over `samples` random inputs.
///
/// `degrading_env` is the environment of the degrading map; the identities
/// hold when it equals `env`.
pub fn composition_residual(
    identity: Identity,
    k: f64,
    env: &GaussianState,
    degrading_env: &GaussianState,
    samples: usize,
    seed: u64,
) -> Result<ResidualReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let k_prime = identity.parameter(k)?;
    let channel = KChannel::new(k, *env)?;
    let degrading = KChannel::new(k_prime, *degrading_env)?;

    let mut rng = sampling::rng(seed);
    let max_residual = (0..samples)
        .map(|_| {
            let rho = sampling::random_state(&mut rng);
            let (lhs, rhs) = match identity {
                Identity::WeakDegradability => (
                    channel.apply_complementary(&rho),
                    degrading.apply_complementary(&channel.apply(&rho)),
                ),
                Identity::AntiDegradability => (
                    channel.apply(&rho),
                    degrading.apply_complementary(&channel.apply_complementary(&rho)),
                ),
            };
            lhs.distance(&rhs)
        })
        .fold(0.0, f64::max);

    Ok(ResidualReport {
        identity,
        k,
        k_prime,
        max_residual,
        samples,
    })
}

pub fn verify_weak_degradability(
    k: f64,
    env: &GaussianState,
    samples: usize,
    seed: u64,
) -> Result<ResidualReport> {
    composition_residual(Identity::WeakDegradability, k, env, env, samples, seed)
}

pub fn verify_anti_degradability(
    k: f64,
    env: &GaussianState,
    samples: usize,
    seed: u64,
) -> Result<ResidualReport> {
    composition_residual(Identity::AntiDegradability, k, env, env, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{amp_coupling, bs_coupling};
    use crate::gaussian::SqueezeParams;

    #[test]
    fn table_rows() {
        let c = classify(&bs_coupling(0.3).unwrap()).unwrap();
        assert!((c.q - 0.3).abs() < 1e-15);
        assert!(c.anti_degradable && !c.weakly_degradable);
        assert_eq!(c.equivalent_map.kind, MapKind::BeamSplitter);
        assert!((c.antidegrading_k.unwrap() - 0.4 / 0.7).abs() < 1e-14);
        assert_eq!(c.degrading_k, None);

        let c = classify(&bs_coupling(0.5).unwrap()).unwrap();
        assert!(c.anti_degradable && c.weakly_degradable);
        assert!(c.degrading_k.unwrap().abs() < 1e-15);
        assert!(c.antidegrading_k.unwrap().abs() < 1e-15);

        let c = classify(&amp_coupling(2.0).unwrap()).unwrap();
        assert!(c.weakly_degradable && !c.anti_degradable);
        assert_eq!(c.equivalent_map.kind, MapKind::Amplifier);
        assert!((c.degrading_k.unwrap() - 1.5).abs() < 1e-15);

        let c = classify_q(-0.5);
        assert!(c.anti_degradable);
        assert_eq!(c.equivalent_map.kind, MapKind::ConjugateAmplifier);
        assert_eq!(c.equivalent_map.k, Some(1.5));
        assert_eq!(c.antidegrading_k, None);

        let c = classify(&bs_coupling(0.0).unwrap()).unwrap();
        assert!(c.anti_degradable && !c.weakly_degradable);
        assert_eq!(c.equivalent_map.kind, MapKind::Undetermined);

        let c = classify(&CouplingMatrix::identity()).unwrap();
        assert!(c.weakly_degradable && !c.anti_degradable);
        assert_eq!(c.equivalent_map.kind, MapKind::Undetermined);
        assert_eq!(c.degrading_k, None);
    }

    #[test]
    fn env_purity_note() {
        let c = classify(&amp_coupling(2.0).unwrap())
            .unwrap()
            .with_env(&GaussianState::vacuum());
        assert_eq!(c.env_pure, Some(true));
        assert!(c.notes.iter().any(|n| n == "degradable (env pure)"));
        let c = classify_q(2.0).with_env(&GaussianState::thermal(1.0).unwrap());
        assert_eq!(c.env_pure, Some(false));
    }

    #[test]
    fn degrading_parameters() {
        assert_eq!(degrading_k(1.0).unwrap(), 1.0);
        assert_eq!(degrading_k(2.0).unwrap(), 1.5);
        assert!(degrading_k(0.4).is_err());
        assert_eq!(antidegrading_k(0.5).unwrap(), 0.0);
        assert_eq!(antidegrading_k(0.0).unwrap(), 1.0);
        assert!((antidegrading_k(0.25).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(antidegrading_k(0.6).is_err());
        assert!(antidegrading_k(-0.1).is_err());
    }

    #[test]
    fn identities_on_examples() {
        let thermal = GaussianState::thermal(1.0).unwrap();
        let sq = GaussianState::squeezed_thermal(0.5, SqueezeParams::new(0.4, 0.9)).unwrap();
        let vac = GaussianState::vacuum();

        assert!(verify_weak_degradability(2.0, &thermal, 100, 1)
            .unwrap()
            .passed(1e-9));
        assert!(verify_weak_degradability(0.75, &sq, 100, 2)
            .unwrap()
            .passed(1e-9));
        assert!(
            verify_weak_degradability(1.0, &sq, 100, 3)
                .unwrap()
                .max_residual
                < 1e-12
        );

        assert!(verify_anti_degradability(0.25, &vac, 100, 4)
            .unwrap()
            .passed(1e-9));
        let thermal3 = GaussianState::thermal(3.0).unwrap();
        assert!(verify_anti_degradability(0.5, &thermal3, 100, 5)
            .unwrap()
            .passed(1e-9));
        assert!(verify_weak_degradability(0.5, &thermal3, 100, 5)
            .unwrap()
            .passed(1e-9));
        assert!(
            verify_anti_degradability(0.0, &vac, 100, 6)
                .unwrap()
                .max_residual
                < 1e-12
        );
    }

    #[test]
    fn range_and_sample_errors() {
        let vac = GaussianState::vacuum();
        assert!(matches!(
            verify_weak_degradability(0.25, &vac, 10, 0),
            Err(Error::OutOfRange { .. })
        ));
        assert!(verify_anti_degradability(0.75, &vac, 10, 0).is_err());
        assert!(verify_anti_degradability(0.25, &vac, 0, 0).is_err());
    }

    #[test]
    fn mismatched_environment_breaks_identity() {
        let env = GaussianState::thermal(1.0).unwrap();
        let other = GaussianState::squeezed_thermal(2.0, SqueezeParams::new(0.5, 0.0)).unwrap();
        let report =
            composition_residual(Identity::WeakDegradability, 2.0, &env, &other, 100, 9).unwrap();
        assert!(report.max_residual > 1e-3);
    }
}
