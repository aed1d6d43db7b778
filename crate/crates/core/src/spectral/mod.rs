//! Spectra of the single-excitation block.
//!
//! [`diagonalize`] handles any bond set. The closed forms
//! [`analytic_uniform_spectrum`] (sine basis) and [`analytic_pst_spectrum`]
//! (Krawtchouk basis) only apply at the two clean endpoints and serve as
//! independent checks on the numerical route.

mod krawtchouk;
mod tridiag;

use std::f64::consts::PI;

use crate::chain::{gn_factor, ChainConfig, SingleExcitationHamiltonian};
use crate::{Error, Result};

pub use krawtchouk::{analytic_pst_spectrum, binomial_half_weights, krawtchouk, KrawtchoukTable};

/// Eigenpairs of the single-excitation block, energies ascending.
///
/// `vectors[k]` is the eigenvector for `energies[k]`, indexed by site
/// (0-based). Each vector has its first non-negligible component positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub energies: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub vacuum_energy: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Component of eigenvector `k` on site `site` (both 0-based).
    pub fn component(&self, k: usize, site: usize) -> f64 {
        self.vectors[k][site]
    }

    /// `max_k ‖H v_k − E_k v_k‖∞`.
    pub fn residual(&self, h: &SingleExcitationHamiltonian) -> f64 {
        let dense = h.to_dense();
        self.vectors
            .iter()
            .zip(&self.energies)
            .map(|(v, &e)| {
                dense
                    .iter()
                    .zip(v)
                    .map(|(row, &vi)| {
                        let hv: f64 = row.iter().zip(v).map(|(a, b)| a * b).sum();
                        (hv - e * vi).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// `max |VᵀV − I|` over all entries.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in a..n {
                let dot: f64 = self.vectors[a].iter().zip(&self.vectors[b]).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// The end-site rows only.
    pub fn edges(&self) -> EdgeSpectrum {
        let last = self.dim() - 1;
        EdgeSpectrum {
            energies: self.energies.clone(),
            first: self.vectors.iter().map(|v| v[0]).collect(),
            last: self.vectors.iter().map(|v| v[last]).collect(),
            vacuum_energy: self.vacuum_energy,
        }
    }
}

/// Energies plus the first- and last-site components of every eigenvector:
/// all that end-to-end transfer needs.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpectrum {
    pub energies: Vec<f64>,
    pub first: Vec<f64>,
    pub last: Vec<f64>,
    pub vacuum_energy: f64,
}

fn unit(n: usize, r: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[r] = 1.0;
    v
}

fn hopping_diagonal(n: usize) -> Vec<f64> {
    // The constant diagonal shifts every eigenvalue identically, so it is
    // added back afterwards instead of being fed through the rotations.
    vec![0.0; n]
}

/// Full numerical eigendecomposition.
pub fn diagonalize(h: &SingleExcitationHamiltonian) -> Result<SpectralDecomposition> {
    let n = h.dim();
    let mut rows: Vec<Vec<f64>> = (0..n).map(|r| unit(n, r)).collect();
    let hopping = tridiag::implicit_ql(&hopping_diagonal(n), h.offdiagonal().as_slice(), &mut rows)?;
    let shift = h.diagonal_value();

    let mut vectors: Vec<Vec<f64>> = (0..n).map(|k| rows.iter().map(|row| row[k]).collect()).collect();
    for v in &mut vectors {
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if let Some(first) = v.iter().copied().find(|x| x.abs() > 1e-12 * scale) {
            if first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }

    Ok(SpectralDecomposition {
        energies: hopping.into_iter().map(|e| e + shift).collect(),
        vectors,
        vacuum_energy: h.vacuum_energy(),
    })
}

/// Eigenvalues and the two end-site rows of the eigenvector matrix, in
/// O(N²) instead of O(N³).
pub fn diagonalize_edges(h: &SingleExcitationHamiltonian) -> Result<EdgeSpectrum> {
    let n = h.dim();
    let mut rows = vec![unit(n, 0), unit(n, n - 1)];
    let hopping = tridiag::implicit_ql(&hopping_diagonal(n), h.offdiagonal().as_slice(), &mut rows)?;
    let shift = h.diagonal_value();
    let last = rows.pop().expect("two tracked rows");
    let first = rows.pop().expect("two tracked rows");
    Ok(EdgeSpectrum {
        energies: hopping.into_iter().map(|e| e + shift).collect(),
        first,
        last,
        vacuum_energy: h.vacuum_energy(),
    })
}

pub(crate) fn require_clean_endpoint(cfg: &ChainConfig, alpha: f64, what: &str) -> Result<()> {
    cfg.validate()?;
    if cfg.alpha != alpha || cfg.delta != 0.0 {
        return Err(Error::NotApplicable(format!(
            "{what} needs alpha = {alpha} and no disorder (got alpha = {}, delta = {})",
            cfg.alpha, cfg.delta
        )));
    }
    Ok(())
}

/// Uniform chain: `E_k = −2J cos(kπ/(N+1)) − (N−2)B`,
/// `v_k[n] = √(2/(N+1)) sin(kπn/(N+1))`.
pub fn analytic_uniform_spectrum(cfg: &ChainConfig) -> Result<SpectralDecomposition> {
    require_clean_endpoint(cfg, 0.0, "uniform-chain spectrum")?;
    let n = cfg.n;
    let np1 = (n + 1) as f64;
    let shift = -((n as f64) - 2.0) * cfg.b;
    let norm = (2.0 / np1).sqrt();
    let energies = (1..=n)
        .map(|k| -2.0 * cfg.j * (k as f64 * PI / np1).cos() + shift)
        .collect();
    let vectors = (1..=n)
        .map(|k| {
            (1..=n)
                .map(|site| norm * ((k * site) as f64 * PI / np1).sin())
                .collect()
        })
        .collect();
    Ok(SpectralDecomposition {
        energies,
        vectors,
        vacuum_energy: -(n as f64) * cfg.b,
    })
}

/// Closed-form PST energies `−(2J/N)[N − (2k−1)]G_N − (N−2)B`, `k = 1..N`.
pub fn pst_energies(cfg: &ChainConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let n = cfg.n as f64;
    let g = gn_factor(cfg.n)?;
    let shift = -(n - 2.0) * cfg.b;
    Ok((1..=cfg.n)
        .map(|k| -(2.0 * cfg.j / n) * (n - (2 * k - 1) as f64) * g + shift)
        .collect())
}
