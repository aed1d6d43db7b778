//! Implicit QL with Wilkinson shifts for real symmetric tridiagonal matrices
//! (the EISPACK `tql2` recurrence).
//!
//! The rotations act on the columns of the eigenvector matrix `Z`, so each
//! row of `Z` evolves on its own. Callers choose which rows to track: all of
//! them for a full decomposition, or only the two chain ends when just the
//! end-to-end amplitude is needed, which drops the cost from O(N³) to O(N²).

use crate::{Error, Result};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Diagonalises `tridiag(off, diag, off)`.
///
/// `rows[r]` must enter as row `r` of the identity restricted to the tracked
/// indices (i.e. a unit vector) and leaves as the matching row of the
/// eigenvector matrix. Returns eigenvalues in ascending order with the rows
/// permuted to match.
pub(crate) fn implicit_ql(diag: &[f64], off: &[f64], rows: &mut [Vec<f64>]) -> Result<Vec<f64>> {
    let n = diag.len();
    debug_assert_eq!(off.len() + 1, n);
    let mut d = diag.to_vec();
    let mut e = Vec::with_capacity(n);
    e.extend_from_slice(off);
    e.push(0.0);

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                    return Err(Error::NoConvergence {
                        residual: e[l].abs(),
                        iterations: sweeps - 1,
                    });
                }

                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for z in rows.iter_mut() {
                        let zh = z[i + 1];
                        z[i + 1] = s * z[i] + c * zh;
                        z[i] = c * z[i] - s * zh;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // ascending, stable for ties
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    for z in rows.iter_mut() {
        let permuted: Vec<f64> = order.iter().map(|&k| z[k]).collect();
        *z = permuted;
    }
    Ok(order.iter().map(|&k| d[k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_rows(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|r| {
                let mut row = vec![0.0; n];
                row[r] = 1.0;
                row
            })
            .collect()
    }

    #[test]
    fn two_by_two() {
        let mut rows = identity_rows(2);
        let ev = implicit_ql(&[0.0, 0.0], &[-1.0], &mut rows).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
        // ground state of tridiag(-1) is symmetric
        assert!((rows[0][0].abs() - rows[1][0].abs()).abs() < 1e-15);
        assert!(rows[0][0] * rows[1][0] > 0.0);
    }

    #[test]
    fn decoupled_blocks_and_ties() {
        let mut rows = identity_rows(4);
        let ev = implicit_ql(&[2.0, 2.0, -1.0, 5.0], &[0.0, 0.0, 0.0], &mut rows).unwrap();
        assert_eq!(ev, vec![-1.0, 2.0, 2.0, 5.0]);
        // stable ordering keeps the original order for the tied pair
        assert_eq!(rows[0][1], 1.0);
        assert_eq!(rows[1][2], 1.0);
    }

    #[test]
    fn tracked_rows_match_full_rows() {
        let diag = [0.3, -1.2, 0.7, 2.0, -0.4, 0.0];
        let off = [1.0, -0.5, 0.25, 1.5, -0.8];
        let mut full = identity_rows(6);
        let ev_full = implicit_ql(&diag, &off, &mut full).unwrap();
        let mut ends = vec![full_unit(6, 0), full_unit(6, 5)];
        let ev_ends = implicit_ql(&diag, &off, &mut ends).unwrap();
        assert_eq!(ev_full, ev_ends);
        assert_eq!(full[0], ends[0]);
        assert_eq!(full[5], ends[1]);
    }

    fn full_unit(n: usize, r: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[r] = 1.0;
        v
    }
}
