//! Transport of extractable work (ergotropy) along an open XX spin chain.
//!
//! Everything here lives in the zero- and single-excitation sector of
//!
//! ```text
//! H = Σ_j 𝒥_j (σˣ_j σˣ_{j+1} + σʸ_j σʸ_{j+1}) − B Σ_j σᶻ_j
//! ```
//!
//! where the couplings interpolate between a uniform chain (`alpha = 0`) and
//! the perfect-state-transfer profile (`alpha = 1`). The crate is organised
//! bottom-up:
//!
//! - [`chain`]: configuration, coupling profiles, the tridiagonal block
//! - [`spectral`]: numerical diagonalisation plus the two closed-form spectra
//! - [`dynamics`]: transition amplitudes and single-site reduced states
//! - [`ergotropy`]: qubit ergotropy and the transport figures of merit
//! - [`disorder`]: seeded Monte-Carlo ensembles over coupling disorder
//! - [`work`]: two-point-measurement work statistics of the coupling quench
//!
//! Energies are in the units of `J` and `B`; times are in units of `1/J`
//! when `J = 1`.

pub mod bessel;
pub mod chain;
pub mod disorder;
pub mod dynamics;
pub mod ergotropy;
mod error;
pub mod spectral;
pub mod stats;
pub mod work;

pub use chain::{BondSet, ChainConfig, InitialSiteState, SingleExcitationHamiltonian};
pub use disorder::{EnsembleStats, MatchedEnsemble};
pub use dynamics::{QubitState, TransitionAmplitude};
pub use ergotropy::ErgotropyRecord;
pub use error::{Error, Result};
pub use spectral::{EdgeSpectrum, KrawtchoukTable, SpectralDecomposition};
pub use work::{WorkDistribution, WorkMoments};

pub use num_complex::Complex64;
