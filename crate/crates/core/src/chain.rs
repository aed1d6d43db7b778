//! Chain configuration, coupling profiles and the single-excitation block.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Physical parameters of one chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    /// Number of sites, at least 2.
    pub n: usize,
    /// On-site field, local Hamiltonian `−B σᶻ`.
    pub b: f64,
    /// Global coupling scale.
    pub j: f64,
    /// 0 for uniform couplings, 1 for the perfect-state-transfer profile.
    pub alpha: f64,
    /// Relative disorder amplitude on each bond.
    pub delta: f64,
    pub seed: u64,
}

impl ChainConfig {
    /// Uniform chain with `B = J = 1` and no disorder.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            b: 1.0,
            j: 1.0,
            alpha: 0.0,
            delta: 0.0,
            seed: 0,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_field(mut self, b: f64) -> Self {
        self.b = b;
        self
    }

    pub fn with_coupling(mut self, j: f64) -> Self {
        self.j = j;
        self
    }

    pub fn with_disorder(mut self, delta: f64, seed: u64) -> Self {
        self.delta = delta;
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config(format!("chain length {} < 2", self.n)));
        }
        if !(self.j > 0.0 && self.j.is_finite()) {
            return Err(Error::config(format!("coupling scale J = {} must be > 0", self.j)));
        }
        if !self.b.is_finite() {
            return Err(Error::config("field B must be finite"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::config(format!("alpha = {} outside [0, 1]", self.alpha)));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(Error::config(format!("disorder amplitude {} must be >= 0", self.delta)));
        }
        Ok(())
    }

    pub(crate) fn is_clean(&self) -> bool {
        self.delta == 0.0
    }
}

/// Off-diagonal elements `⟨1_j|H|1_{j+1}⟩` of the single-excitation block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BondSet(Vec<f64>);

impl BondSet {
    pub fn new(bonds: Vec<f64>) -> Self {
        BondSet(bonds)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of sites the bonds connect.
    pub fn sites(&self) -> usize {
        self.0.len() + 1
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for BondSet {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Real symmetric tridiagonal block of the Hamiltonian on the one-excitation
/// states, together with the energy of the all-ground vacuum.
///
/// The diagonal is the constant `−(N−2)B`, so only one number is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleExcitationHamiltonian {
    diagonal: f64,
    bonds: BondSet,
    vacuum_energy: f64,
}

impl SingleExcitationHamiltonian {
    pub fn dim(&self) -> usize {
        self.bonds.sites()
    }

    pub fn diagonal_value(&self) -> f64 {
        self.diagonal
    }

    pub fn diagonal(&self) -> Vec<f64> {
        vec![self.diagonal; self.dim()]
    }

    pub fn offdiagonal(&self) -> &BondSet {
        &self.bonds
    }

    pub fn vacuum_energy(&self) -> f64 {
        self.vacuum_energy
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = self.diagonal;
        }
        for (i, &b) in self.bonds.as_slice().iter().enumerate() {
            m[i][i + 1] = b;
            m[i + 1][i] = b;
        }
        m
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn norm_inf(&self) -> f64 {
        let b = self.bonds.as_slice();
        (0..self.dim())
            .map(|i| {
                let left = if i > 0 { b[i - 1].abs() } else { 0.0 };
                let right = b.get(i).map_or(0.0, |x| x.abs());
                self.diagonal.abs() + left + right
            })
            .fold(0.0, f64::max)
    }
}

/// State of the first site before the couplings are switched on. Every other
/// site starts in its local ground state `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialSiteState {
    /// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`
    Pure { theta: f64, phi: f64 },
    /// `q|1⟩⟨1| + (1−q)|0⟩⟨0|`
    Mixed { q: f64 },
}

impl InitialSiteState {
    pub fn pure(theta: f64) -> Self {
        InitialSiteState::Pure { theta, phi: 0.0 }
    }

    pub fn mixed(q: f64) -> Self {
        InitialSiteState::Mixed { q }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialSiteState::Pure { theta, phi } => {
                if !(0.0..=std::f64::consts::PI).contains(&theta) || !phi.is_finite() {
                    return Err(Error::input(format!("pure state angle theta = {theta} outside [0, π]")));
                }
            }
            InitialSiteState::Mixed { q } => {
                if !(0.0..=1.0).contains(&q) {
                    return Err(Error::input(format!("excited population q = {q} outside [0, 1]")));
                }
            }
        }
        Ok(())
    }

    /// Excited-state population `ρ₁₁(0)`.
    pub fn excited_population(&self) -> f64 {
        match *self {
            InitialSiteState::Pure { theta, .. } => (theta / 2.0).sin().powi(2),
            InitialSiteState::Mixed { q } => q,
        }
    }

    pub fn ground_population(&self) -> f64 {
        match *self {
            InitialSiteState::Pure { theta, .. } => (theta / 2.0).cos().powi(2),
            InitialSiteState::Mixed { q } => 1.0 - q,
        }
    }

    /// Coherence `ρ₀₁(0) = ⟨0|ρ|1⟩`.
    pub fn coherence(&self) -> Complex64 {
        match *self {
            InitialSiteState::Pure { theta, phi } => {
                let half = theta / 2.0;
                Complex64::from_polar(half.cos() * half.sin(), -phi)
            }
            InitialSiteState::Mixed { .. } => Complex64::new(0.0, 0.0),
        }
    }

    /// Short label used in tables, e.g. `pure(theta=1.5708)`.
    pub fn descriptor(&self) -> String {
        match *self {
            InitialSiteState::Pure { theta, phi } if phi == 0.0 => format!("pure(theta={theta})"),
            InitialSiteState::Pure { theta, phi } => format!("pure(theta={theta},phi={phi})"),
            InitialSiteState::Mixed { q } => format!("mixed(q={q})"),
        }
    }
}

/// Parity factor of the perfect-state-transfer couplings:
/// 1 for even `n`, `1/√(1 − 1/n²)` for odd `n`.
pub fn gn_factor(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::config(format!("chain length {n} < 2")));
    }
    if n % 2 == 0 {
        Ok(1.0)
    } else {
        let nf = n as f64;
        Ok(1.0 / (1.0 - 1.0 / (nf * nf)).sqrt())
    }
}

/// Perfect-state-transfer profile `J_{j,j+1} = (2J/N)√(j(N−j))·G_N`.
pub fn pst_couplings(cfg: &ChainConfig) -> Result<BondSet> {
    cfg.validate()?;
    let n = cfg.n;
    let nf = n as f64;
    let scale = 2.0 * cfg.j / nf * gn_factor(n)?;
    let bonds = (1..n)
        .map(|j| scale * ((j * (n - j)) as f64).sqrt())
        .collect();
    Ok(BondSet(bonds))
}

/// Clean bonds for the configured `alpha`:
/// `−[(1−α)J + α·J_{j,j+1}]`.
///
/// Both endpoints carry the same (negative) sign so the magnitude moves
/// monotonically from the uniform to the PST profile. At `alpha = 0` every
/// bond is `−J`; at `alpha = 1` the bonds are the negated PST profile, which
/// makes the Krawtchouk eigenvectors appear in ascending energy order.
pub fn interpolated_bonds(cfg: &ChainConfig) -> Result<BondSet> {
    cfg.validate()?;
    let pst = pst_couplings(cfg)?;
    let a = cfg.alpha;
    let bonds = pst
        .0
        .iter()
        .map(|&p| -((1.0 - a) * cfg.j + a * p))
        .collect();
    Ok(BondSet(bonds))
}

/// Stream of i.i.d. relative perturbations `δ_j ∈ [−Δ, Δ)` for one disorder
/// realisation.
///
/// The generator is ChaCha8 keyed by `seed` with `realization` as the stream
/// id, so every realisation is reproducible on its own and independent of
/// evaluation order.
pub fn disorder_offsets(seed: u64, realization: u64, delta: f64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(realization);
    (0..count)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            delta * (2.0 * u - 1.0)
        })
        .collect()
}

/// Clean bonds multiplied by `(1 + δ_j)` for realisation `realization`.
pub fn disordered_bonds(cfg: &ChainConfig, realization: u64) -> Result<BondSet> {
    let clean = interpolated_bonds(cfg)?;
    if cfg.is_clean() {
        return Ok(clean);
    }
    let offsets = disorder_offsets(cfg.seed, realization, cfg.delta, clean.len());
    let bonds = clean
        .0
        .iter()
        .zip(&offsets)
        .map(|(b, d)| b * (1.0 + d))
        .collect();
    Ok(BondSet(bonds))
}

pub fn build_hamiltonian(bonds: BondSet, cfg: &ChainConfig) -> Result<SingleExcitationHamiltonian> {
    cfg.validate()?;
    if bonds.len() != cfg.n - 1 {
        return Err(Error::input(format!(
            "expected {} bonds for N = {}, got {}",
            cfg.n - 1,
            cfg.n,
            bonds.len()
        )));
    }
    let nf = cfg.n as f64;
    Ok(SingleExcitationHamiltonian {
        diagonal: -(nf - 2.0) * cfg.b,
        bonds,
        vacuum_energy: -nf * cfg.b,
    })
}

/// Convenience: disordered (or clean) Hamiltonian for one realisation.
pub fn hamiltonian_for(cfg: &ChainConfig, realization: u64) -> Result<SingleExcitationHamiltonian> {
    build_hamiltonian(disordered_bonds(cfg, realization)?, cfg)
}
