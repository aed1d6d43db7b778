//! Browser bindings. Each function takes plain numbers and returns a flat
//! `Float64Array` so the page needs no glue beyond `wasm-bindgen`.

use ergochain_core::chain::{hamiltonian_for, ChainConfig, InitialSiteState};
use ergochain_core::dynamics::{amplitude_end, reduced_state};
use ergochain_core::ergotropy::{erg_at_reflection, qubit_ergotropy};
use ergochain_core::spectral::diagonalize_edges;
use ergochain_core::work::tpm_distribution;
use wasm_bindgen::prelude::*;

fn js_err(e: ergochain_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn state(coherent: bool, theta: f64) -> InitialSiteState {
    if coherent {
        InitialSiteState::pure(theta)
    } else {
        InitialSiteState::mixed(ergochain_core::ergotropy::match_mixed_to_pure(theta))
    }
}

/// Last-site ergotropy on `steps + 1` equally spaced times in `[0, t_max]`.
/// Returns `[t0, e0, t1, e1, …]`.
#[wasm_bindgen]
pub fn ergotropy_trace(n: usize, alpha: f64, coherent: bool, theta: f64, t_max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    trace(n, alpha, coherent, theta, t_max, steps).map_err(js_err)
}

fn trace(n: usize, alpha: f64, coherent: bool, theta: f64, t_max: f64, steps: usize) -> ergochain_core::Result<Vec<f64>> {
    let cfg = ChainConfig::new(n).with_alpha(alpha);
    let edges = diagonalize_edges(&hamiltonian_for(&cfg, 0)?)?;
    let init = state(coherent, theta);
    let steps = steps.max(1);
    let mut out = Vec::with_capacity(2 * (steps + 1));
    for i in 0..=steps {
        let t = t_max * i as f64 / steps as f64;
        let rho = reduced_state(&init, &amplitude_end(&edges, t));
        out.push(t);
        out.push(qubit_ergotropy(&rho, cfg.b)?);
    }
    Ok(out)
}

/// Ergotropy delivered at the first reflection time for `N = 2..=n_max`,
/// as `[N, coherent, mixed, …]` with the mixed state matched in input.
#[wasm_bindgen]
pub fn reflection_sweep(n_max: usize, alpha: f64, theta: f64) -> Result<Vec<f64>, JsError> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        let cfg = ChainConfig::new(n).with_alpha(alpha);
        let coh = erg_at_reflection(&cfg, &state(true, theta)).map_err(js_err)?;
        let mix = erg_at_reflection(&cfg, &state(false, theta)).map_err(js_err)?;
        out.extend([n as f64, coh.erg_max, mix.erg_max]);
    }
    Ok(out)
}

/// Two-point-measurement work atoms for a fully excited first site, as
/// `[w0, p0, w1, p1, …]` in units of `J`.
#[wasm_bindgen]
pub fn work_atoms(n: usize, alpha: f64) -> Result<Vec<f64>, JsError> {
    let cfg = ChainConfig::new(n).with_alpha(alpha);
    let d = tpm_distribution(&cfg, &InitialSiteState::pure(std::f64::consts::PI)).map_err(js_err)?;
    Ok(d.atoms.iter().flat_map(|a| [a.w, a.p]).collect())
}
