//! Sturm-sequence bisection and inverse iteration for symmetric tridiagonal
//! matrices.
//!
//! Everything here is self-contained: eigenvalues come from bisection on the
//! inertia count of `T - xI`, eigenvectors from shifted inverse iteration with
//! a partially pivoted tridiagonal LU.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::{diag_entry, offdiag_entry, NchoParams, SectorId, SymTridiag};

/// Absolute bisection width used when the caller has no preference.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Inverse-iteration cap used when the caller has no preference.
pub const DEFAULT_MAX_ITER: usize = 50;

/// Accepted eigenvector residual `‖Tv − λv‖`.
pub const RESIDUAL_LIMIT: f64 = 1e-8;

/// Interval `[lo, hi]` proven (by Sturm counts) to contain eigenvalue `index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenBracket {
    pub lo: f64,
    pub hi: f64,
    pub index: usize,
}

impl EigenBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigVector {
    pub components: Vec<f64>,
    /// `‖Tv − λv‖` for the unit vector `v`.
    pub residual: f64,
    pub iterations: usize,
}

/// Number of eigenvalues of `t` strictly below `x`.
pub fn sturm_count(t: &SymTridiag, x: f64) -> usize {
    let d = t.diag();
    let e = t.offdiag();
    let zero_pivot = -f64::EPSILON * t.scale().max(f64::MIN_POSITIVE);

    let mut count = 0;
    let mut q = d[0] - x;
    if q == 0.0 {
        q = zero_pivot;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
        if q == 0.0 {
            q = zero_pivot;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// `(min_i d_i − r_i, max_i d_i + r_i)`, `r_i` the absolute off-diagonal row sum.
pub fn gershgorin_bounds(t: &SymTridiag) -> (f64, f64) {
    let d = t.diag();
    let e = t.offdiag();
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { e[i].abs() } else { 0.0 };
        let r = left + right;
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    (lo, hi)
}

/// Bracket of width at most `tol` around the `k`-th smallest eigenvalue.
///
/// Bisection stops early only when the bracket can no longer be split in
/// floating point, in which case it is as narrow as the representation allows.
pub fn eigenvalue(t: &SymTridiag, k: usize, tol: f64) -> Result<EigenBracket> {
    let n = t.dim();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, dim: n });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bisection tolerance {tol} must be positive"
        )));
    }

    let (g_lo, g_hi) = gershgorin_bounds(t);
    // pad so rounding in the count cannot put an eigenvalue outside the start bracket
    let pad = 4.0 * f64::EPSILON * (n as f64) * t.scale().max(1.0);
    let mut lo = g_lo - pad;
    let mut hi = g_hi + pad;

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(t, mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(EigenBracket { lo, hi, index: k })
}

/// Partially pivoted LU of the tridiagonal `T − σI` (the LAPACK `gttrf` layout).
struct ShiftedLu {
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    dl: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiag, sigma: f64) -> Self {
        let n = t.dim();
        let tiny = f64::EPSILON * t.scale().max(1.0);
        let mut d: Vec<f64> = t.diag().iter().map(|x| x - sigma).collect();
        let mut du = t.offdiag().to_vec();
        let mut dl = t.offdiag().to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];

        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let upper = du[i];
                du[i] = d[i + 1];
                d[i + 1] = upper - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self {
            d,
            du,
            du2,
            dl,
            swapped,
        }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut b = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let top = b[i];
                b[i] = b[i + 1];
                b[i + 1] = top - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.du[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.du2[i] * x[i + 2];
            }
            x[i] = s / self.d[i];
        }
        x
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(t: &SymTridiag, v: &[f64], lambda: f64) -> f64 {
    let tv = t.apply(v);
    tv.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Unit eigenvector for the eigenvalue approximated by `lambda`.
///
/// Sign convention: the first nonzero component is positive.
pub fn eigenvector(t: &SymTridiag, lambda: f64, max_iter: usize) -> Result<EigVector> {
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be positive".into()));
    }
    let n = t.dim();
    let lu = ShiftedLu::factor(t, lambda);
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut res = f64::INFINITY;
    let mut iterations = 0;

    for it in 1..=max_iter {
        let y = lu.solve(&v);
        let len = norm(&y);
        if !len.is_finite() || len == 0.0 {
            break;
        }
        v = y.into_iter().map(|x| x / len).collect();
        res = residual(t, &v, lambda);
        iterations = it;
        if it >= 2 && res <= RESIDUAL_LIMIT {
            break;
        }
    }

    if !(res <= RESIDUAL_LIMIT) {
        return Err(Error::NoConvergence {
            iterations,
            residual: res,
        });
    }
    if let Some(first) = v.iter().copied().find(|x| *x != 0.0) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(EigVector {
        components: v,
        residual: res,
        iterations,
    })
}

/// Runs the three-term recurrence of `J u = 2λ u` forward from `u₀ = 1`.
///
/// Returns `(u₀, …, u_N)`. Only meant as a cross-check at small `N`: the
/// recurrence amplifies rounding error geometrically once it leaves the
/// eigenvector's decaying regime.
pub fn forward_recurrence_check(
    sector: SectorId,
    params: &NchoParams,
    lambda: f64,
    n_trunc: usize,
) -> Vec<f64> {
    let two_lambda = 2.0 * lambda;
    let mut u = Vec::with_capacity(n_trunc + 1);
    u.push(1.0);
    for n in 0..n_trunc {
        let m = n as u64;
        let a = offdiag_entry(sector.parity, m);
        let prev = if n == 0 {
            0.0
        } else {
            offdiag_entry(sector.parity, m - 1) * u[n - 1]
        };
        let next = ((two_lambda - diag_entry(sector, params, m)) * u[n] - prev) / a;
        u.push(next);
    }
    u
}
