//! Ergotropy of a single qubit with local Hamiltonian `−Bσᶻ`, and the
//! transport figures of merit built on it.

use serde::{Deserialize, Serialize};

use crate::chain::{gn_factor, hamiltonian_for, ChainConfig, InitialSiteState};
use crate::dynamics::{amplitude_end, reduced_state, QubitState, TransitionAmplitude};
use crate::spectral::{diagonalize_edges, EdgeSpectrum};
use crate::{Complex64, Error, Result};

/// Default sampling step for window scans, in units of `1/J`.
pub const DEFAULT_TIME_STEP: f64 = 0.01;

/// Ergotropy delivered to a site, with the input it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErgotropyRecord {
    pub erg_in: f64,
    pub erg_max: f64,
    /// 1-based site the ergotropy was read from.
    pub site: usize,
    pub time: f64,
    /// `(erg_max/erg_in)·N^{2/3}`; `None` when `erg_in = 0`.
    pub eta: Option<f64>,
}

/// `Tr[ρH] − Tr[ρ_p H]` for `H = −Bσᶻ` (ground state `|0⟩`).
pub fn qubit_ergotropy(rho: &QubitState, b: f64) -> Result<f64> {
    rho.validate()?;
    if !(b > 0.0) {
        return Err(Error::input(format!("field B = {b} must be > 0")));
    }
    let energy = b * (rho.p1 - rho.p0);
    let passive = -2.0 * b * rho.bloch_radius_half();
    // rounding leaves ~1e−16 negatives for passive states
    Ok((energy - passive).max(0.0))
}

/// Ergotropy of the undisturbed initial state.
pub fn initial_ergotropy(initial: &InitialSiteState, b: f64) -> Result<f64> {
    initial.validate()?;
    let full = TransitionAmplitude {
        value: Complex64::new(1.0, 0.0),
        site: 1,
        time: 0.0,
    };
    qubit_ergotropy(&reduced_state(initial, &full), b)
}

/// Excited population `q = [1 + sin²(θ/2)]/2` whose diagonal state has the
/// same ergotropy as the pure state at angle `θ`.
pub fn match_mixed_to_pure(theta: f64) -> f64 {
    0.5 * (1.0 + (theta / 2.0).sin().powi(2))
}

/// Closed form for a pure initial state:
/// `B[2|f|²s − 1 + √(1 + 4s²|f|²(|f|² − 1))]`, `s = sin²(θ/2)`.
pub fn erg_coherent(theta: f64, fsq: f64, b: f64) -> f64 {
    let s = (theta / 2.0).sin().powi(2);
    let root = (1.0 + 4.0 * s * s * fsq * (fsq - 1.0)).max(0.0).sqrt();
    (b * (2.0 * fsq * s - 1.0 + root)).max(0.0)
}

/// Closed form for a diagonal initial state: `2B(2q|f|² − 1)` above the
/// activation threshold `q|f|² > 1/2`, zero below.
pub fn erg_mixed(q: f64, fsq: f64, b: f64) -> f64 {
    if q * fsq > 0.5 {
        2.0 * b * (2.0 * q * fsq - 1.0)
    } else {
        0.0
    }
}

/// First reflection time `[π/(4G_N)·α² + π/6·(1−α²)]·N` in units of `1/J`.
pub fn reflection_time(alpha: f64, n: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::config(format!("alpha = {alpha} outside [0, 1]")));
    }
    let g = gn_factor(n)?;
    let pi = std::f64::consts::PI;
    let a2 = alpha * alpha;
    Ok((pi / (4.0 * g) * a2 + pi / 6.0 * (1.0 - a2)) * n as f64)
}

/// `(erg_max/erg_in)·N^{2/3}`.
pub fn rescaled_efficiency(erg_max: f64, erg_in: f64, n: usize) -> Result<f64> {
    if erg_in == 0.0 {
        return Err(Error::Undefined("rescaled efficiency"));
    }
    Ok(erg_max / erg_in * (n as f64).powf(2.0 / 3.0))
}

fn end_ergotropy(edges: &EdgeSpectrum, initial: &InitialSiteState, b: f64, t: f64) -> Result<f64> {
    let f = amplitude_end(edges, t);
    qubit_ergotropy(&reduced_state(initial, &f), b)
}

fn record(cfg: &ChainConfig, erg_in: f64, erg_max: f64, time: f64) -> ErgotropyRecord {
    ErgotropyRecord {
        erg_in,
        erg_max,
        site: cfg.n,
        time,
        eta: rescaled_efficiency(erg_max, erg_in, cfg.n).ok(),
    }
}

/// Ergotropy on the last site at the first reflection time.
///
/// The swap onto an auxiliary qubit with the same local Hamiltonian is
/// not modelled explicitly: it hands over the reduced state unchanged.
/// Disordered configurations use realisation 0.
pub fn erg_at_reflection(cfg: &ChainConfig, initial: &InitialSiteState) -> Result<ErgotropyRecord> {
    let edges = diagonalize_edges(&hamiltonian_for(cfg, 0)?)?;
    erg_at_reflection_with(cfg, &edges, initial)
}

/// As [`erg_at_reflection`], reusing a precomputed edge spectrum.
pub fn erg_at_reflection_with(
    cfg: &ChainConfig,
    edges: &EdgeSpectrum,
    initial: &InitialSiteState,
) -> Result<ErgotropyRecord> {
    let erg_in = initial_ergotropy(initial, cfg.b)?;
    let t = reflection_time(cfg.alpha, cfg.n)? / cfg.j;
    let erg = end_ergotropy(edges, initial, cfg.b, t)?;
    Ok(record(cfg, erg_in, erg, t))
}

/// Largest last-site ergotropy on the grid `step, 2·step, …` up to `t_max`
/// with the default step.
pub fn erg_max_window(cfg: &ChainConfig, initial: &InitialSiteState, t_max: f64) -> Result<ErgotropyRecord> {
    erg_max_window_with_step(cfg, initial, t_max, DEFAULT_TIME_STEP)
}

/// Window maximum with an explicit grid step.
///
/// The grid always includes `t_max` and, when it lies inside the window,
/// the reflection time. Ties go to the earliest time.
pub fn erg_max_window_with_step(
    cfg: &ChainConfig,
    initial: &InitialSiteState,
    t_max: f64,
    step: f64,
) -> Result<ErgotropyRecord> {
    if !(t_max > 0.0 && t_max.is_finite()) || !(step > 0.0) {
        return Err(Error::input(format!("need t_max > 0 and step > 0 (got {t_max}, {step})")));
    }
    let edges = diagonalize_edges(&hamiltonian_for(cfg, 0)?)?;
    let erg_in = initial_ergotropy(initial, cfg.b)?;

    let mut times: Vec<f64> = Vec::new();
    let count = (t_max / step).floor() as usize;
    times.extend((1..=count).map(|i| i as f64 * step));
    if times.last().map_or(true, |&t| t < t_max) {
        times.push(t_max);
    }
    let t_ref = reflection_time(cfg.alpha, cfg.n)? / cfg.j;
    if t_ref <= t_max {
        times.push(t_ref);
    }
    times.sort_by(f64::total_cmp);

    let mut best = (f64::NEG_INFINITY, 0.0);
    for t in times {
        let e = end_ergotropy(&edges, initial, cfg.b, t)?;
        if e > best.0 {
            best = (e, t);
        }
    }
    Ok(record(cfg, erg_in, best.0, best.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn qs(p1: f64, c: f64) -> QubitState {
        QubitState::new(1.0 - p1, p1, Complex64::new(c, 0.0)).unwrap()
    }

    fn amp(f: Complex64) -> TransitionAmplitude {
        TransitionAmplitude { value: f, site: 2, time: 0.0 }
    }

    #[test]
    fn qubit_ergotropy_examples() {
        assert!((qubit_ergotropy(&qs(1.0, 0.0), 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(qubit_ergotropy(&qs(0.5, 0.0), 1.0).unwrap(), 0.0);
        assert!((qubit_ergotropy(&qs(0.625, 0.0), 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(qubit_ergotropy(&qs(0.5, 0.0), 0.0).is_err());
        let bad = QubitState { p0: 0.5, p1: 0.5, c: Complex64::new(0.7, 0.0) };
        assert!(qubit_ergotropy(&bad, 1.0).is_err());
    }

    #[test]
    fn matched_populations() {
        assert_eq!(match_mixed_to_pure(PI), 1.0);
        assert!((match_mixed_to_pure(PI / 2.0) - 0.75).abs() < 1e-15);
        assert_eq!(match_mixed_to_pure(0.0), 0.5);
        // the pairing in the transport figures: ε_in = 0.5, 1, 2
        for (theta, q, e) in [(PI / 3.0, 0.625, 0.5), (PI / 2.0, 0.75, 1.0), (PI, 1.0, 2.0)] {
            assert!((match_mixed_to_pure(theta) - q).abs() < 1e-15);
            let pure = initial_ergotropy(&InitialSiteState::pure(theta), 1.0).unwrap();
            let mixed = initial_ergotropy(&InitialSiteState::mixed(q), 1.0).unwrap();
            assert!((pure - e).abs() < 1e-12 && (mixed - e).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((erg_coherent(PI, 1.0, 1.0) - 2.0).abs() < 1e-15);
        assert!(erg_coherent(PI, 0.5, 1.0).abs() < 1e-15);
        for theta in [0.0, 0.4, 2.0, PI] {
            assert_eq!(erg_coherent(theta, 0.0, 1.0), 0.0);
        }
        assert_eq!(erg_mixed(1.0, 1.0, 1.0), 2.0);
        assert_eq!(erg_mixed(1.0, 0.75, 1.0), 1.0);
        assert_eq!(erg_mixed(0.6, 0.8, 1.0), 0.0);
    }

    #[test]
    fn reflection_time_examples() {
        assert!((reflection_time(1.0, 4).unwrap() - PI).abs() < 1e-15);
        assert!((reflection_time(0.0, 6).unwrap() - PI).abs() < 1e-15);
        assert!((reflection_time(1.0, 2).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(reflection_time(1.5, 4).is_err());
        assert!(reflection_time(0.5, 1).is_err());
    }

    #[test]
    fn rescaled_efficiency_examples() {
        assert!((rescaled_efficiency(0.5, 1.0, 8).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(rescaled_efficiency(0.0, 1.0, 8).unwrap(), 0.0);
        assert!((rescaled_efficiency(1.0, 1.0, 8).unwrap() - 4.0).abs() < 1e-14);
        assert!(rescaled_efficiency(0.3, 0.0, 8).is_err());
    }

    #[test]
    fn pst_delivers_everything() {
        for n in [2, 3, 10, 41] {
            let cfg = ChainConfig::new(n).with_alpha(1.0);
            for init in [InitialSiteState::pure(1.0), InitialSiteState::mixed(0.9), InitialSiteState::pure(PI)] {
                let r = erg_at_reflection(&cfg, &init).unwrap();
                assert!((r.erg_max - r.erg_in).abs() < 1e-9, "n={n}");
            }
        }
    }

    #[test]
    fn two_site_uniform_reflection() {
        let r = erg_at_reflection(&ChainConfig::new(2), &InitialSiteState::pure(PI)).unwrap();
        assert!((r.time - PI / 3.0).abs() < 1e-15);
        assert!((r.erg_max - 1.0).abs() < 1e-12);
        assert_eq!(r.site, 2);
    }

    #[test]
    fn mixed_state_cutoff_on_long_uniform_chain() {
        let r = erg_at_reflection(&ChainConfig::new(60), &InitialSiteState::mixed(0.75)).unwrap();
        assert_eq!(r.erg_max, 0.0);
        assert_eq!(r.eta, Some(0.0));
    }

    #[test]
    fn window_maximum() {
        let cfg = ChainConfig::new(9).with_alpha(1.0);
        let init = InitialSiteState::pure(2.0);
        let w = erg_max_window(&cfg, &init, 20.0).unwrap();
        assert!((w.erg_max - w.erg_in).abs() < 1e-9);
        assert!((w.time - reflection_time(1.0, 9).unwrap()).abs() < 1e-2);

        for n in [5, 12, 30] {
            let cfg = ChainConfig::new(n).with_alpha(0.3);
            let at = erg_at_reflection(&cfg, &init).unwrap();
            let w = erg_max_window_with_step(&cfg, &init, 3.0 * n as f64, 0.05).unwrap();
            assert!(w.erg_max >= at.erg_max - 1e-12);
        }
        assert!(erg_max_window(&cfg, &init, 0.0).is_err());
    }

    #[test]
    fn window_beats_first_reflection_somewhere_on_uniform_chain() {
        let init = InitialSiteState::pure(PI);
        let gains = (15..=30)
            .filter(|&n| {
                let cfg = ChainConfig::new(n);
                let at = erg_at_reflection(&cfg, &init).unwrap().erg_max;
                let w = erg_max_window(&cfg, &init, 1000.0).unwrap().erg_max;
                w > at
            })
            .count();
        assert!(gains > 0);
    }

    #[test]
    fn coherent_beats_mixed_on_uniform_chain() {
        for theta in [PI / 3.0, PI / 2.0] {
            let q = match_mixed_to_pure(theta);
            for n in 4..=100 {
                let cfg = ChainConfig::new(n);
                let edges = diagonalize_edges(&hamiltonian_for(&cfg, 0).unwrap()).unwrap();
                let coh = erg_at_reflection_with(&cfg, &edges, &InitialSiteState::pure(theta)).unwrap();
                let mix = erg_at_reflection_with(&cfg, &edges, &InitialSiteState::mixed(q)).unwrap();
                assert!(coh.erg_max >= mix.erg_max, "theta={theta}, n={n}");
            }
        }
    }

    #[test]
    fn optimal_angle_moves_toward_equal_superposition() {
        // For small |f|² the coherent formula is ≈ 2|f|²s(1−s): peak at s = 1/2.
        let argmax = |fsq: f64| {
            (0..=2000)
                .map(|i| PI * i as f64 / 2000.0)
                .max_by(|a, b| erg_coherent(*a, fsq, 1.0).total_cmp(&erg_coherent(*b, fsq, 1.0)))
                .unwrap()
        };
        assert!((argmax(1e-4) - PI / 2.0).abs() < 0.01);

        let best_theta = |n: usize| {
            let cfg = ChainConfig::new(n);
            let edges = diagonalize_edges(&hamiltonian_for(&cfg, 0).unwrap()).unwrap();
            (0..=400)
                .map(|i| PI * i as f64 / 400.0)
                .map(|th| {
                    let e = erg_at_reflection_with(&cfg, &edges, &InitialSiteState::pure(th)).unwrap();
                    (th, e.erg_max)
                })
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap()
                .0
        };
        assert!(best_theta(100) < best_theta(10));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn closed_forms_match_eigenvalue_route(theta in 0.0f64..=PI, q in 0.0f64..=1.0, re in -1.0f64..1.0, im in -1.0f64..1.0, b in 0.1f64..5.0) {
            let f = Complex64::new(re, im);
            let f = if f.norm() > 1.0 { f / f.norm() } else { f };
            let fsq = f.norm_sqr();
            let pure = qubit_ergotropy(&reduced_state(&InitialSiteState::pure(theta), &amp(f)), b).unwrap();
            prop_assert!((pure - erg_coherent(theta, fsq, b)).abs() < 1e-12 * b.max(1.0));
            let mixed = qubit_ergotropy(&reduced_state(&InitialSiteState::mixed(q), &amp(f)), b).unwrap();
            prop_assert!((mixed - erg_mixed(q, fsq, b)).abs() < 1e-12 * b.max(1.0));
        }

        #[test]
        fn delivered_never_exceeds_input(n in 2usize..60, alpha in 0.0f64..=1.0, theta in 0.0f64..=PI) {
            let r = erg_at_reflection(&ChainConfig::new(n).with_alpha(alpha), &InitialSiteState::pure(theta)).unwrap();
            prop_assert!(r.erg_max >= 0.0 && r.erg_max <= r.erg_in + 1e-12);
        }
    }
}
