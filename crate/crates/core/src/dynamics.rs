//! Transition amplitudes `f_n(t) = ⟨1_n| e^{−iHt} |1_1⟩` and the reduced
//! state of a single site.

use num_complex::Complex64;

use crate::bessel::bessel_j;
use crate::chain::{gn_factor, ChainConfig, InitialSiteState};
use crate::spectral::{binomial_half_weights, krawtchouk, pst_energies, require_clean_endpoint};
use crate::spectral::{EdgeSpectrum, SpectralDecomposition};
use crate::{Error, Result};

/// `f_n(t)` for a 1-based site `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionAmplitude {
    pub value: Complex64,
    pub site: usize,
    pub time: f64,
}

impl TransitionAmplitude {
    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }

    /// `|f_n(t)|²`, the probability of finding the excitation on site `n`.
    pub fn probability(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// Reduced density matrix of one qubit,
/// `[[p0, c], [c*, p1]]` in the `{|0⟩, |1⟩}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub p0: f64,
    pub p1: f64,
    pub c: Complex64,
}

impl QubitState {
    pub fn new(p0: f64, p1: f64, c: Complex64) -> Result<Self> {
        let s = Self { p0, p1, c };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.p0.is_finite()
            && self.p1.is_finite()
            && self.c.is_finite()
            && (self.p0 + self.p1 - 1.0).abs() <= 1e-12
            && self.p0 >= -1e-14
            && self.p1 >= -1e-14
            && self.c.norm_sqr() <= self.p0 * self.p1 + 1e-12;
        if ok {
            Ok(())
        } else {
            Err(Error::input(format!(
                "not a density matrix: p0 = {}, p1 = {}, c = {}",
                self.p0, self.p1, self.c
            )))
        }
    }

    /// Eigenvalues `(λ−, λ+)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let r = self.bloch_radius_half();
        (0.5 - r, 0.5 + r)
    }

    /// `√((p0 − p1)²/4 + |c|²)`, half the Bloch-vector length.
    pub(crate) fn bloch_radius_half(&self) -> f64 {
        let d = 0.5 * (self.p0 - self.p1);
        (d * d + self.c.norm_sqr()).sqrt()
    }
}

fn check_site(n: usize, dim: usize) -> Result<()> {
    if n == 0 || n > dim {
        return Err(Error::input(format!("site {n} outside 1..={dim}")));
    }
    Ok(())
}

fn phase_sum(weights: impl Iterator<Item = (f64, f64)>, t: f64) -> Complex64 {
    weights.fold(Complex64::new(0.0, 0.0), |acc, (w, e)| {
        acc + w * Complex64::from_polar(1.0, -e * t)
    })
}

/// `Σ_k v_k[1] v_k[n] e^{−iE_k t}` from a full decomposition.
pub fn amplitude_spectral(dec: &SpectralDecomposition, n: usize, t: f64) -> Result<TransitionAmplitude> {
    check_site(n, dec.dim())?;
    let weights = dec
        .vectors
        .iter()
        .zip(&dec.energies)
        .map(|(v, &e)| (v[0] * v[n - 1], e));
    Ok(TransitionAmplitude {
        value: phase_sum(weights, t),
        site: n,
        time: t,
    })
}

/// Every `f_n(t)`, `n = 1..N`, in site order.
pub fn amplitudes_all(dec: &SpectralDecomposition, t: f64) -> Vec<Complex64> {
    let phases: Vec<Complex64> = dec
        .energies
        .iter()
        .map(|&e| Complex64::from_polar(1.0, -e * t))
        .collect();
    (0..dec.dim())
        .map(|site| {
            dec.vectors
                .iter()
                .zip(&phases)
                .map(|(v, p)| v[0] * v[site] * p)
                .sum()
        })
        .collect()
}

/// End-to-end amplitude `f_N(t)` from the edge rows alone.
pub fn amplitude_end(edges: &EdgeSpectrum, t: f64) -> TransitionAmplitude {
    let weights = edges
        .first
        .iter()
        .zip(&edges.last)
        .zip(&edges.energies)
        .map(|((a, b), &e)| (a * b, e));
    TransitionAmplitude {
        value: phase_sum(weights, t),
        site: edges.energies.len(),
        time: t,
    }
}

/// Closed form for the uniform chain,
/// `(2/(N+1)) e^{−iNBt} Σ_k sin(kπ/(N+1)) sin(kπn/(N+1)) e^{−iE_k t}`.
///
/// The leading phase is kept as printed, so only the modulus agrees with
/// [`amplitude_spectral`].
pub fn amplitude_uniform_closed(cfg: &ChainConfig, n: usize, t: f64) -> Result<TransitionAmplitude> {
    require_clean_endpoint(cfg, 0.0, "uniform-chain amplitude")?;
    check_site(n, cfg.n)?;
    let np1 = (cfg.n + 1) as f64;
    let shift = -(cfg.n as f64 - 2.0) * cfg.b;
    let weights = (1..=cfg.n).map(|k| {
        let x = k as f64 * std::f64::consts::PI / np1;
        let e = -2.0 * cfg.j * x.cos() + shift;
        (x.sin() * (x * n as f64).sin(), e)
    });
    let sum = phase_sum(weights, t);
    let lead = Complex64::from_polar(2.0 / np1, -(cfg.n as f64) * cfg.b * t);
    Ok(TransitionAmplitude {
        value: lead * sum,
        site: n,
        time: t,
    })
}

/// Closed form for the PST chain,
/// `2^{−(N−1)} √C(N−1, n−1) e^{−iNBt} Σ_k K_{k−1}(n−1) e^{−iE_k t}`.
///
/// The prefactor is `(1/2)^{N−1}` because the Krawtchouk sum is
/// unnormalised (`K_k(0) = C(N−1, k)`); with `(1/2)^{(N−1)/2}` the amplitude
/// at `t = 0` would exceed one.
pub fn amplitude_pst_closed(cfg: &ChainConfig, n: usize, t: f64) -> Result<TransitionAmplitude> {
    require_clean_endpoint(cfg, 1.0, "PST amplitude")?;
    check_site(n, cfg.n)?;
    let m = cfg.n - 1;
    let energies = pst_energies(cfg)?;
    let polys = (0..cfg.n)
        .map(|k| krawtchouk(k, n - 1, m))
        .collect::<Result<Vec<_>>>()?;
    let sum = phase_sum(polys.into_iter().zip(energies), t);
    // √(C(m, n−1) 2^{−m}) · 2^{−m/2} = √C(m, n−1) · 2^{−m}
    let prefactor = (binomial_half_weights(m)[n - 1] * 0.5f64.powi(m as i32)).sqrt();
    let lead = Complex64::from_polar(prefactor, -(cfg.n as f64) * cfg.b * t);
    Ok(TransitionAmplitude {
        value: lead * sum,
        site: n,
        time: t,
    })
}

/// Thermodynamic-limit amplitude of the uniform chain, taken as printed:
/// `e^{i(N−2)Bt} [J_0(2Jt) δ_{1,n} + i^{n−1} J_{n−1}(2Jt)]`.
///
/// This is an approximation with no equality contract. At `n = 1` the two
/// terms coincide, so `|f_1(0)| = 2`; use it for `n ≥ 2`.
pub fn amplitude_bessel_limit(cfg: &ChainConfig, n: usize, t: f64) -> Result<TransitionAmplitude> {
    cfg.validate()?;
    if cfg.alpha != 0.0 {
        return Err(Error::NotApplicable(format!(
            "Bessel limit needs alpha = 0 (got {})",
            cfg.alpha
        )));
    }
    if n == 0 {
        return Err(Error::input("site index is 1-based"));
    }
    let x = 2.0 * cfg.j * t;
    let order = (n - 1) as i64;
    let i_pow = match order % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut bracket = i_pow * bessel_j(order, x);
    if n == 1 {
        bracket += bessel_j(0, x);
    }
    let phase = Complex64::from_polar(1.0, (cfg.n as f64 - 2.0) * cfg.b * t);
    Ok(TransitionAmplitude {
        value: phase * bracket,
        site: n,
        time: t,
    })
}

/// Reduced state of the site reached by amplitude `f`:
/// `p1 = ρ₁₁(0)|f|²`, `c = ρ₀₁(0) f`.
pub fn reduced_state(initial: &InitialSiteState, f: &TransitionAmplitude) -> QubitState {
    let p1 = initial.excited_population() * f.probability();
    QubitState {
        p0: 1.0 - p1,
        p1,
        c: initial.coherence() * f.value,
    }
}

/// PST transfer time `πN/(4G_N)` in units of `1/J`.
pub fn pst_transfer_time(n: usize) -> Result<f64> {
    Ok(std::f64::consts::PI * n as f64 / (4.0 * gn_factor(n)?))
}
