//! Two-point-measurement work statistics for suddenly switching the
//! couplings on.
//!
//! Before the quench the chain is a set of free spins, so the first energy
//! measurement projects onto product states. Only the vacuum and `|1_1⟩`
//! are populated, and both the initial and the final Hamiltonian carry the
//! same field term, so the work values are the hopping eigenvalues (plus
//! `W = 0` for the vacuum) and do not depend on `B`.

use serde::{Deserialize, Serialize};

use crate::chain::{gn_factor, hamiltonian_for, ChainConfig, InitialSiteState};
use crate::spectral::{binomial_half_weights, diagonalize_edges, require_clean_endpoint};
use crate::{Error, Result};

/// One point mass of the work distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkAtom {
    pub w: f64,
    pub p: f64,
}

/// Atomic work distribution, atoms sorted by `w`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkDistribution {
    pub atoms: Vec<WorkAtom>,
    pub n: usize,
    pub alpha: f64,
    /// Label of the initial first-site state.
    pub initial: String,
}

impl WorkDistribution {
    pub fn total_probability(&self) -> f64 {
        self.atoms.iter().map(|a| a.p).sum()
    }

    /// Total weight within `tol` of `w`.
    pub fn probability_at(&self, w: f64, tol: f64) -> f64 {
        self.atoms.iter().filter(|a| (a.w - w).abs() <= tol).map(|a| a.p).sum()
    }
}

/// Raw and central moments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkMoments {
    pub mean: f64,
    pub variance: f64,
    /// `higher[k − 1] = ⟨W^k⟩` for `k = 1..=max_order`.
    pub higher: Vec<f64>,
}

/// Sorts by `w`, merges atoms closer than `tol` (weighted position) and
/// drops zero-weight atoms.
fn merge_atoms(mut atoms: Vec<WorkAtom>, tol: f64) -> Vec<WorkAtom> {
    atoms.retain(|a| a.p > 0.0);
    atoms.sort_by(|a, b| a.w.total_cmp(&b.w));
    let mut out: Vec<WorkAtom> = Vec::with_capacity(atoms.len());
    let mut anchor = f64::NEG_INFINITY;
    for a in atoms {
        match out.last_mut() {
            Some(last) if a.w - anchor <= tol => {
                let p = last.p + a.p;
                last.w = (last.w * last.p + a.w * a.p) / p;
                last.p = p;
            }
            _ => {
                anchor = a.w;
                out.push(a);
            }
        }
    }
    out
}

fn merge_tol(cfg: &ChainConfig) -> f64 {
    1e-12 * cfg.j
}

/// Work distribution of the quench from free spins to the configured chain.
///
/// The vacuum branch contributes `(0, ρ₀₀)` and the excited branch
/// `(ω_k, ρ₁₁ v_k[1]²)`, where `ω_k` are the hopping eigenvalues. The vacuum
/// weight is taken as `1 − ρ₁₁`, so a pure state and the diagonal state with
/// the same population give bit-identical atoms.
pub fn tpm_distribution(cfg: &ChainConfig, initial: &InitialSiteState) -> Result<WorkDistribution> {
    initial.validate()?;
    let h = hamiltonian_for(cfg, 0)?;
    let edges = diagonalize_edges(&h)?;
    let shift = h.diagonal_value();
    let p1 = initial.excited_population();

    let mut atoms = Vec::with_capacity(cfg.n + 1);
    atoms.push(WorkAtom { w: 0.0, p: 1.0 - p1 });
    atoms.extend(
        edges
            .energies
            .iter()
            .zip(&edges.first)
            .map(|(&e, &v)| WorkAtom { w: e - shift, p: p1 * v * v }),
    );
    Ok(WorkDistribution {
        atoms: merge_atoms(atoms, merge_tol(cfg)),
        n: cfg.n,
        alpha: cfg.alpha,
        initial: initial.descriptor(),
    })
}

/// Fully excited first site on the clean PST chain: binomial weights
/// `2^{−(N−1)}C(N−1, k−1)` on `W_k = −(2J/N)[N − (2k−1)]G_N`.
pub fn pst_closed_distribution(cfg: &ChainConfig) -> Result<WorkDistribution> {
    require_clean_endpoint(cfg, 1.0, "PST work distribution")?;
    let nf = cfg.n as f64;
    let g = gn_factor(cfg.n)?;
    let atoms = binomial_half_weights(cfg.n - 1)
        .into_iter()
        .enumerate()
        .map(|(i, p)| WorkAtom {
            w: -(2.0 * cfg.j / nf) * (nf - (2 * i + 1) as f64) * g,
            p,
        })
        .collect();
    Ok(WorkDistribution {
        atoms: merge_atoms(atoms, merge_tol(cfg)),
        n: cfg.n,
        alpha: 1.0,
        initial: InitialSiteState::mixed(1.0).descriptor(),
    })
}

/// Fully excited first site on the clean uniform chain:
/// `p_k = 2/(N+1) sin²(kπ/(N+1))` on `W_k = −2J cos(kπ/(N+1))`.
pub fn uniform_closed_distribution(cfg: &ChainConfig) -> Result<WorkDistribution> {
    require_clean_endpoint(cfg, 0.0, "uniform-chain work distribution")?;
    let np1 = (cfg.n + 1) as f64;
    let atoms = (1..=cfg.n)
        .map(|k| {
            let x = k as f64 * std::f64::consts::PI / np1;
            WorkAtom {
                w: -2.0 * cfg.j * x.cos(),
                p: 2.0 / np1 * x.sin().powi(2),
            }
        })
        .collect();
    Ok(WorkDistribution {
        atoms: merge_atoms(atoms, merge_tol(cfg)),
        n: cfg.n,
        alpha: 0.0,
        initial: InitialSiteState::mixed(1.0).descriptor(),
    })
}

pub fn moments(d: &WorkDistribution, max_order: usize) -> WorkMoments {
    let mean: f64 = d.atoms.iter().map(|a| a.p * a.w).sum();
    let variance: f64 = d.atoms.iter().map(|a| a.p * (a.w - mean).powi(2)).sum();
    let higher = (1..=max_order)
        .map(|k| d.atoms.iter().map(|a| a.p * a.w.powi(k as i32)).sum())
        .collect();
    WorkMoments {
        mean,
        variance: variance.max(0.0),
        higher,
    }
}

/// `(2J/N)²(N−1)G_N²`, the work variance of the fully excited PST chain.
pub fn pst_work_variance(cfg: &ChainConfig) -> Result<f64> {
    cfg.validate()?;
    let nf = cfg.n as f64;
    let g = gn_factor(cfg.n)?;
    Ok((2.0 * cfg.j / nf).powi(2) * (nf - 1.0) * g * g)
}

/// Normal density with zero mean and the PST work variance.
pub fn gaussian_density(w: f64, cfg: &ChainConfig) -> Result<f64> {
    let var = pst_work_variance(cfg)?;
    Ok((-w * w / (2.0 * var)).exp() / (2.0 * std::f64::consts::PI * var).sqrt())
}

/// `√(4J² − W²)/(2πJ²)` inside the band, zero outside.
pub fn semicircle_density(w: f64, j: f64) -> f64 {
    let r = 4.0 * j * j - w * w;
    if r <= 0.0 {
        0.0
    } else {
        r.sqrt() / (2.0 * std::f64::consts::PI * j * j)
    }
}

/// Per-atom density estimate: each atom's weight spread over its cell,
/// the interval between the midpoints to its neighbours. End cells mirror
/// their inner half-width.
///
/// On a nearly evenly spread spectrum this is the natural binning, one
/// bin per level, and it tracks a continuum density without the aliasing a
/// fixed grid suffers when bins are narrower than the level spacing.
pub fn cell_density(d: &WorkDistribution) -> Result<Vec<(f64, f64)>> {
    if d.atoms.len() < 2 {
        return Err(Error::input("cell density needs at least two atoms"));
    }
    let a = &d.atoms;
    let last = a.len() - 1;
    Ok((0..a.len())
        .map(|i| {
            let width = match i {
                0 => a[1].w - a[0].w,
                i if i == last => a[last].w - a[last - 1].w,
                i => 0.5 * (a[i + 1].w - a[i - 1].w),
            };
            (a[i].w, a[i].p / width)
        })
        .collect())
}

/// Fixed-grid histogram: `(bin centre, probability / bin width)` for `bins`
/// equal bins over `[lo, hi)`. Atoms outside the range are ignored.
pub fn histogram(d: &WorkDistribution, bins: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64)>> {
    if bins == 0 || !(hi > lo) {
        return Err(Error::input(format!("bad histogram range [{lo}, {hi}) with {bins} bins")));
    }
    let width = (hi - lo) / bins as f64;
    let mut mass = vec![0.0; bins];
    for a in &d.atoms {
        if a.w >= lo && a.w < hi {
            let i = (((a.w - lo) / width) as usize).min(bins - 1);
            mass[i] += a.p;
        }
    }
    Ok(mass
        .into_iter()
        .enumerate()
        .map(|(i, m)| (lo + (i as f64 + 0.5) * width, m / width))
        .collect())
}

/// Default histogram for intermediate `α`: 101 bins over `[−2.2J, 2.2J)`.
pub fn default_histogram(d: &WorkDistribution, j: f64) -> Result<Vec<(f64, f64)>> {
    histogram(d, 101, -2.2 * j, 2.2 * j)
}
