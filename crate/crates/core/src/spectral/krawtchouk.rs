//! Krawtchouk polynomials at `p = 1/2` and the PST eigenbasis built on them.

use super::{pst_energies, require_clean_endpoint, SpectralDecomposition};
use crate::chain::ChainConfig;
use crate::{Error, Result};

fn binomial_i128(n: u64, k: u64) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n − i) is divisible by (i + 1)
        acc = acc.checked_mul((n - i) as i128)? / (i + 1) as i128;
    }
    Some(acc)
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `K_k(x) = Σ_i (−1)^i C(x, i) C(m − x, k − i)` with `m = N − 1`.
///
/// This is the unnormalised sum, so `K_k(0) = C(m, k)`. Evaluated exactly in
/// 128-bit integers while the terms fit (`m` up to about 125). Beyond that
/// the alternating sum cancels catastrophically, so the value comes from the
/// three-term recurrence in degree after folding `k` and `x` into the lower
/// half with the reflection and duality identities, where the recurrence is
/// stable.
pub fn krawtchouk(k: usize, x: usize, m: usize) -> Result<f64> {
    if k > m || x > m {
        return Err(Error::input(format!(
            "Krawtchouk index out of range: k = {k}, x = {x}, N − 1 = {m}"
        )));
    }
    let (k64, x64, m64) = (k as u64, x as u64, m as u64);
    let exact = (0..=k64).try_fold(0i128, |acc, i| {
        let term = binomial_i128(x64, i)?.checked_mul(binomial_i128(m64 - x64, k64 - i)?)?;
        if i % 2 == 0 {
            acc.checked_add(term)
        } else {
            acc.checked_sub(term)
        }
    });
    Ok(match exact {
        Some(v) => v as f64,
        None => krawtchouk_folded(k, x, m),
    })
}

fn krawtchouk_folded(mut k: usize, mut x: usize, m: usize) -> f64 {
    let mut sign = 1.0;
    // K_k(m − x) = (−1)^k K_k(x)
    if 2 * x > m {
        x = m - x;
        if k % 2 == 1 {
            sign = -sign;
        }
    }
    // K_{m−k}(x) = (−1)^x K_k(x)
    if 2 * k > m {
        k = m - k;
        if x % 2 == 1 {
            sign = -sign;
        }
    }
    // K_k(x) / C(m, k) = K_x(k) / C(m, x)
    if x < k {
        let ratio = binomial_f64(m as u64, k as u64) / binomial_f64(m as u64, x as u64);
        sign * ratio * krawtchouk_recurrence(x, k, m)
    } else {
        sign * krawtchouk_recurrence(k, x, m)
    }
}

/// `(j+1) K_{j+1} = (m − 2x) K_j − (m − j + 1) K_{j−1}` from `K_0 = 1`.
fn krawtchouk_recurrence(k: usize, x: usize, m: usize) -> f64 {
    let a = m as f64 - 2.0 * x as f64;
    if k == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, a);
    for j in 1..k {
        let next = (a * cur - (m - j + 1) as f64 * prev) / (j + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// Binomial probabilities `C(m, i) 2^{−m}` for `i = 0..=m`.
pub fn binomial_half_weights(m: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(m + 1);
    if m <= 1000 {
        let mut p = 0.5f64.powi(m as i32);
        w.push(p);
        for i in 1..=m {
            p *= (m - i + 1) as f64 / i as f64;
            w.push(p);
        }
    } else {
        let mut lp = -(m as f64) * std::f64::consts::LN_2;
        w.push(lp.exp());
        for i in 1..=m {
            lp += ((m - i + 1) as f64 / i as f64).ln();
            w.push(lp.exp());
        }
    }
    w
}

/// `values[k][x] = K_k(x)` for `k, x = 0..N−1`, plus the binomial weight of
/// each site.
#[derive(Debug, Clone, PartialEq)]
pub struct KrawtchoukTable {
    pub values: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl KrawtchoukTable {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::config(format!("chain length {n} < 2")));
        }
        let m = n - 1;
        let values = (0..n)
            .map(|k| (0..n).map(|x| krawtchouk(k, x, m)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            values,
            weights: binomial_half_weights(m),
        })
    }

    pub fn order(&self) -> usize {
        self.weights.len()
    }
}

/// PST spectrum in the Krawtchouk basis.
///
/// The eigenvector paired with the `k`-th lowest energy is
/// `√w(n)·K_{k−1}(n−1)`, normalised to unit length afterwards because the
/// raw sum is not orthonormal.
pub fn analytic_pst_spectrum(cfg: &ChainConfig) -> Result<SpectralDecomposition> {
    require_clean_endpoint(cfg, 1.0, "PST spectrum")?;
    let table = KrawtchoukTable::new(cfg.n)?;
    let vectors = table
        .values
        .iter()
        .map(|poly| {
            let mut v: Vec<f64> = poly
                .iter()
                .zip(&table.weights)
                .map(|(k, w)| w.sqrt() * k)
                .collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            v
        })
        .collect();
    Ok(SpectralDecomposition {
        energies: pst_energies(cfg)?,
        vectors,
        vacuum_energy: -(cfg.n as f64) * cfg.b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_values() {
        for m in 1..10 {
            for x in 0..=m {
                assert_eq!(krawtchouk(0, x, m).unwrap(), 1.0);
                // K_1(x) = m − 2x
                assert_eq!(krawtchouk(1, x, m).unwrap(), m as f64 - 2.0 * x as f64);
            }
        }
        assert_eq!(krawtchouk(1, 2, 4).unwrap(), 0.0);
        assert_eq!(krawtchouk(1, 0, 4).unwrap(), 4.0);
        assert!(krawtchouk(5, 0, 4).is_err());
        assert!(krawtchouk(0, 5, 4).is_err());
    }

    #[test]
    fn endpoint_values_are_binomials() {
        // K_k(0) = C(m, k) and K_k(m) = (−1)^k C(m, k)
        let m = 40;
        for k in 0..=m {
            let c = binomial_i128(m as u64, k as u64).unwrap() as f64;
            assert_eq!(krawtchouk(k, 0, m).unwrap(), c);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(krawtchouk(k, m, m).unwrap(), sign * c);
        }
    }

    #[test]
    fn three_term_recurrence_in_degree() {
        // (k+1) K_{k+1}(x) = (m − 2x) K_k(x) − (m − k + 1) K_{k−1}(x)
        let m = 30;
        for x in 0..=m {
            for k in 1..m {
                let lhs = (k + 1) as f64 * krawtchouk(k + 1, x, m).unwrap();
                let rhs = (m as f64 - 2.0 * x as f64) * krawtchouk(k, x, m).unwrap()
                    - (m - k + 1) as f64 * krawtchouk(k - 1, x, m).unwrap();
                assert_eq!(lhs, rhs, "x={x}, k={k}");
            }
        }
    }

    #[test]
    fn weights_sum_to_one() {
        for m in [1, 5, 63, 511, 1500] {
            let s: f64 = binomial_half_weights(m).iter().sum();
            assert!((s - 1.0).abs() < 1e-12, "m={m}: {s}");
        }
    }

    #[test]
    fn table_shape() {
        let t = KrawtchoukTable::new(7).unwrap();
        assert_eq!(t.order(), 7);
        assert!(t.values[0].iter().all(|&v| v == 1.0));
        assert!(KrawtchoukTable::new(1).is_err());
    }

    #[test]
    fn normalised_vectors_are_orthonormal() {
        for n in [2, 3, 10, 31, 64] {
            let dec = analytic_pst_spectrum(&ChainConfig::new(n).with_alpha(1.0)).unwrap();
            assert!(dec.orthonormality_error() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn large_order_values() {
        // exact big-integer sums, rounded
        let cases = [
            (70, 3, 140, 0.0),
            (112, 3, 140, -4.64306893756371e28),
            (139, 3, 140, -134.0),
            (70, 70, 140, -1.1218627781666285e20),
            (45, 90, 140, 1.9958629007505977e19),
            (60, 61, 130, 3.245553864411018e18),
        ];
        for (k, x, m, expected) in cases {
            let got = krawtchouk(k, x, m).unwrap();
            // |K_k(x)| ≤ √(C(m,k)/w(x)), the natural error scale
            let scale = (binomial_f64(m as u64, k as u64) / binomial_half_weights(m)[x]).sqrt();
            assert!((got - expected).abs() <= 1e-13 * scale, "K_{k}({x}; {m}) = {got}");
        }
    }

    #[test]
    fn folded_path_matches_exact_path() {
        for m in [20, 57, 100] {
            for k in 0..=m {
                for x in 0..=m {
                    let exact = krawtchouk(k, x, m).unwrap();
                    let folded = krawtchouk_folded(k, x, m);
                    let scale = (binomial_f64(m as u64, k as u64) / binomial_half_weights(m)[x]).sqrt();
                    assert!((exact - folded).abs() <= 1e-13 * scale, "m={m} k={k} x={x}");
                }
            }
        }
    }

}
