//! Two-sided eigenvalue enclosures for the semi-infinite sector operators.
//!
//! For a truncation size `N`, write `T = Q̂_qp(N)` and `p_N` for the projection
//! onto the last basis vector. With the rank-one corrections `T± = T ± δ(N) p_N`,
//! every index `n` whose upper value `μ_n(T⁺)` stays below the cap `Λ_qp(N)`
//! satisfies
//!
//! ```text
//! μ_n(T⁻) ≤ λ_qp(n) ≤ μ_n(T⁺)
//! ```
//!
//! Rigor is "double precision plus outward nudge": the bisection brackets are
//! widened by a few ulps before being reported. This is not interval
//! arithmetic; rounding inside the Sturm recursion is not tracked.

use serde::{Deserialize, Serialize};

use crate::eigen::{eigenvalue, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::jacobi::{build_truncation, offdiag_entry, NchoParams, Parity, SectorId};

/// Number of ulps each reported endpoint is pushed outward.
pub const OUTWARD_ULPS: u32 = 4;

/// Relative slack subtracted from `Λ` before the certification comparison.
pub const CAP_SLACK: f64 = 1e-13;

/// Default truncation limit for [`enclose_auto`].
pub const DEFAULT_N_MAX: usize = 4096;

/// Closed interval of reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is inverted");
        Self { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `other ⊆ self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Enclosure of the `index`-th eigenvalue of one sector.
///
/// When `certified` is false the interval is only the pair of perturbed
/// truncation eigenvalues and is not guaranteed to contain the true value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Enclosure {
    pub sector: SectorId,
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
    /// Truncation size `N` (matrix dimension `N + 1`).
    pub truncation: usize,
    pub cap: f64,
    pub certified: bool,
    pub bisection_tol: f64,
}

impl Enclosure {
    pub fn interval(&self) -> Interval {
        Interval::new(self.lower, self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// The certification cap `Λ_qp(N)`.
pub fn lambda_cap(sector: SectorId, params: &NchoParams, n_trunc: usize) -> f64 {
    let (a, b) = params.oriented(sector.branch);
    let (near, far) = match sector.parity {
        Parity::Plus => (1.5, 3.5),
        Parity::Minus => (2.5, 4.5),
    };
    let m = 2.0 * n_trunc as f64;
    let candidates = if n_trunc % 2 == 0 {
        ((m + near) / a, (m + far) / b)
    } else {
        ((m + near) / b, (m + far) / a)
    };
    0.5 * (a * b - 1.0) * candidates.0.min(candidates.1)
}

/// The rank-one correction size `δ_qp(N)`.
pub fn delta(sector: SectorId, params: &NchoParams, n_trunc: usize) -> f64 {
    let (a, b) = params.oriented(sector.branch);
    let weight = if n_trunc % 2 == 0 { a } else { b };
    0.5 * weight * offdiag_entry(sector.parity, n_trunc as u64).abs()
}

fn nudge_down(mut x: f64) -> f64 {
    for _ in 0..OUTWARD_ULPS {
        x = x.next_down();
    }
    x
}

fn nudge_up(mut x: f64) -> f64 {
    for _ in 0..OUTWARD_ULPS {
        x = x.next_up();
    }
    x
}

/// Encloses `λ_qp(index)` using the truncation of size `n_trunc`.
pub fn enclose(
    sector: SectorId,
    params: &NchoParams,
    index: usize,
    n_trunc: usize,
    tol: f64,
) -> Result<Enclosure> {
    if index > n_trunc {
        return Err(Error::IndexOutOfRange {
            index,
            dim: n_trunc + 1,
        });
    }
    let t = build_truncation(sector, params, n_trunc);
    let d = delta(sector, params, n_trunc);
    let above = eigenvalue(&t.with_last_diag_shift(d), index, tol)?;
    let below = eigenvalue(&t.with_last_diag_shift(-d), index, tol)?;

    let lower = nudge_down(below.lo);
    let upper = nudge_up(above.hi);
    let cap = lambda_cap(sector, params, n_trunc);
    let certified = upper <= cap - CAP_SLACK * cap.abs();

    Ok(Enclosure {
        sector,
        index,
        lower,
        upper,
        truncation: n_trunc,
        cap,
        certified,
        bisection_tol: tol,
    })
}

/// Doubles `N` until a certified enclosure of width at most `width_goal`
/// appears, trying `N_max` itself as the last rung.
pub fn enclose_auto(
    sector: SectorId,
    params: &NchoParams,
    index: usize,
    width_goal: f64,
    n_max: usize,
) -> Result<Enclosure> {
    if !(width_goal > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "width goal {width_goal} must be positive"
        )));
    }
    let tol = DEFAULT_TOL.min(width_goal / 4.0);
    let not_certifiable = Error::NotCertifiable {
        index,
        width_goal,
        n_max,
    };
    if index > n_max {
        return Err(not_certifiable);
    }

    let mut n_trunc = (2 * index + 4).max(16).min(n_max);
    loop {
        let e = enclose(sector, params, index, n_trunc, tol)?;
        if e.certified && e.width() <= width_goal {
            return Ok(e);
        }
        if n_trunc >= n_max {
            return Err(not_certifiable);
        }
        n_trunc = n_trunc.saturating_mul(2).min(n_max);
    }
}
