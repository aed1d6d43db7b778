//! Integer-order Bessel functions of the first kind.
//!
//! Uses Bessel's integral `J_n(x) = (1/2π) ∫₀^{2π} cos(nτ − x sin τ) dτ`.
//! The integrand is periodic and analytic, and by Jacobi–Anger the
//! M-point trapezoid rule returns `Σ_j J_{n+jM}(x)`. Once `M` clears
//! `|n| + |x|` by a few Airy widths the aliased terms are below rounding,
//! which gives an absolute accuracy of a few ulps of 1 for any order and
//! argument.

use std::f64::consts::TAU;

fn node_count(order: u64, x: f64) -> usize {
    let ax = x.abs();
    (order as f64 + ax + 12.0 * ax.cbrt() + 40.0).ceil() as usize
}

/// `J_n(x)` for integer `n` (negative orders via `J_{−n} = (−1)ⁿ J_n`).
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let order = n.unsigned_abs();
    let m = node_count(order, x);
    let nf = order as f64;
    let h = TAU / m as f64;
    let sum: f64 = (0..m)
        .map(|j| {
            let tau = j as f64 * h;
            (nf * tau - x * tau.sin()).cos()
        })
        .sum();
    let value = sum / m as f64;
    if n < 0 && order % 2 == 1 {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Power series, accurate for small arguments.
    fn series(n: u32, x: f64) -> f64 {
        let half = x / 2.0;
        let mut term = half.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
        let mut sum = term;
        for k in 1..60 {
            term *= -half * half / (k as f64 * (k + n) as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn reference_values() {
        // frozen from an independent special-function library
        let cases = [
            (0, 0.0, 1.0),
            (0, 1.0, 0.7651976865579666),
            (1, 1.0, 0.44005058574493355),
            (4, 20.0, 0.13067093355486337),
            (10, 5.0, 0.0014678026473104737),
            (49, 104.71975511965977, 0.04806681523613414),
            (255, 268.08257310632, -0.030055614856013553),
            (3, -2.5, -0.21660039103911358),
            (1, 500.0, 0.010472613470372292),
        ];
        for (n, x, expected) in cases {
            let got = bessel_j(n, x);
            assert!((got - expected).abs() < 1e-14, "J_{n}({x}) = {got}, expected {expected}");
        }
        // absolute accuracy only: the deep tail is ~1e−21
        assert!(bessel_j(100, 50.0).abs() < 1e-14);
        assert!(bessel_j(1, 0.0).abs() < 1e-16);
        assert!((bessel_j(4, 20.0).abs() - 0.1307).abs() < 5e-5);
    }

    #[test]
    fn negative_orders() {
        for n in 0..8 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((bessel_j(-n, 3.3) - sign * bessel_j(n, 3.3)).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn agrees_with_power_series(n in 0u32..12, x in -6.0f64..6.0) {
            let s = series(n, x);
            prop_assert!((bessel_j(n as i64, x) - s).abs() < 1e-13);
        }

        #[test]
        fn satisfies_order_recurrence(n in 1i64..200, x in 0.5f64..300.0) {
            // J_{n−1} + J_{n+1} = (2n/x) J_n
            let lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
            let rhs = 2.0 * n as f64 / x * bessel_j(n, x);
            prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + 2.0 * n as f64 / x));
        }
    }
}
