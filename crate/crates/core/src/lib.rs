//! One-mode Bosonic Gaussian channels with a single-mode environment.
//!
//! * [`gaussian`]: Gaussian states, characteristic functions, squeezers.
//! * [`coupling`]: two-mode couplings `A`, symplectic validation, the invariant `q`.
//! * [`channels`]: beam-splitter/amplifier channels and generic couplings,
//!   each with its weakly complementary map.
//! * [`degradability`]: classification by `q` and numerical checks of the
//!   degrading-map identities.
//! * [`decompose`]: factorization of a coupling into squeezers around a
//!   canonical beam splitter/amplifier.
//! * [`cli`]: the `bgchan` command-line front end.

pub mod channels;
pub mod cli;
pub mod coupling;
pub mod decompose;
pub mod degradability;
pub mod error;
pub mod gaussian;
pub mod sampling;

pub use channels::{
    amp_coupling, apply_general, apply_general_complementary, apply_k, apply_k_complementary,
    bs_coupling, ChannelSpec, KChannel,
};
pub use coupling::{compute_q, swap_coupling, validate_coupling, CouplingMatrix, ValidationReport};
pub use decompose::{
    apply_decomposed, decompose, generate_coupling, verify_decomposition, Decomposition,
    GenerateParams, TargetRegime,
};
pub use degradability::{
    antidegrading_k, classify, degrading_k, verify_anti_degradability, verify_weak_degradability,
    Classification, ResidualReport,
};
pub use error::{Error, Result};
pub use gaussian::{apply_squeeze, char_fn_eval, GaussianState, SqueezeParams};
