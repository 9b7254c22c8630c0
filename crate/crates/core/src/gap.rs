//! Explicit lower bound on the parity gap `Q̂₋ₚ − Q̂₊ₚ`.
//!
//! The difference of the two parity sectors of a branch is, after a diagonal
//! rescaling, `√(αβ) − F/2` with `F = J(γ, 0)`. The norm of `F` is bounded by
//! running the recursion `a₀ = 2, aₙ = 2 − γ²ₙ₋₁/aₙ₋₁` up to `N₀` and
//! checking `aₙ > 0 (n < N₀)`, `a_{N₀} > 1`, which gives `‖F‖ ≤ 1 + γ²_{N₀}`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::NchoParams;

pub const DEFAULT_N0: usize = 10_000;

/// `γₙ = √((2n+2)(2n+3)) − √((2n+1)(2n+2))`.
pub fn gamma(n: u64) -> f64 {
    // rationalized: the direct difference cancels ~log10(4n) digits
    let m = n as f64;
    (2.0 * m + 2.0).sqrt() * 2.0 / ((2.0 * m + 3.0).sqrt() + (2.0 * m + 1.0).sqrt())
}

/// `1/(4N₀)²`, the margin constant attached to a given `N₀`.
pub fn margin(n0: usize) -> f64 {
    let q = 4.0 * n0 as f64;
    1.0 / (q * q)
}

/// `(a₀, …, a_{n0})`, checked for `aₙ > 0 (n < n0)` and `a_{n0} > 1`.
pub fn a_sequence(n0: usize) -> Result<Vec<f64>> {
    if n0 == 0 {
        return Err(Error::InvalidArgument("N0 must be at least 1".into()));
    }
    let mut seq = Vec::with_capacity(n0 + 1);
    seq.push(2.0);
    for n in 1..=n0 {
        let prev = seq[n - 1];
        let g = gamma(n as u64 - 1);
        seq.push(2.0 - g * g / prev);
    }
    if let Some((index, &value)) = seq[..n0].iter().enumerate().find(|(_, &a)| !(a > 0.0)) {
        return Err(Error::RecursionCheckFailed { index, value });
    }
    if !(seq[n0] > 1.0) {
        return Err(Error::RecursionCheckFailed {
            index: n0,
            value: seq[n0],
        });
    }
    Ok(seq)
}

/// `1 + γ²_{n0}`, an upper bound on `‖F‖` once the recursion checks pass.
pub fn f_norm_bound(n0: usize) -> Result<f64> {
    a_sequence(n0)?;
    Ok(norm_bound_unchecked(n0))
}

fn norm_bound_unchecked(n0: usize) -> f64 {
    let g2 = gamma(n0 as u64).powi(2);
    assert!(
        g2 < 1.0 + margin(n0),
        "γ²({n0}) = {g2} violates the closed-form bound"
    );
    1.0 + g2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapCertificate {
    pub params: NchoParams,
    /// `Δ(α,β) = 2·min{√(α/β), √(β/α)}·(√(αβ) − 1 − 1/(4N₀)²)`.
    pub delta_value: f64,
    pub n0: usize,
    /// `a_{N₀}`.
    pub a_tail: f64,
    pub f_norm_bound: f64,
    /// `√(αβ) > 1 + 1/(4N₀)²`.
    pub in_region: bool,
    /// `min{√(α/β), √(β/α)}·(√(αβ) − ‖F‖/2)`: the operator bound that follows
    /// from `f_norm_bound` once the ½ in `Q̂ = ½J` is carried through.
    pub operator_gap_bound: f64,
}

struct Recursion {
    a_tail: f64,
    f_norm_bound: f64,
}

fn default_recursion() -> &'static Recursion {
    static CACHE: OnceLock<Recursion> = OnceLock::new();
    CACHE.get_or_init(|| {
        let seq = a_sequence(DEFAULT_N0).expect("a-recursion holds at N0 = 10000");
        Recursion {
            a_tail: seq[DEFAULT_N0],
            f_norm_bound: norm_bound_unchecked(DEFAULT_N0),
        }
    })
}

fn certificate(params: &NchoParams, n0: usize, a_tail: f64, f_norm: f64) -> GapCertificate {
    let (a, b) = (params.alpha(), params.beta());
    let ratio = (a / b).sqrt().min((b / a).sqrt());
    let root = (a * b).sqrt();
    let eps = margin(n0);
    GapCertificate {
        params: *params,
        delta_value: 2.0 * ratio * (root - 1.0 - eps),
        n0,
        a_tail,
        f_norm_bound: f_norm,
        in_region: root > 1.0 + eps,
        operator_gap_bound: ratio * (root - 0.5 * f_norm),
    }
}

/// Gap certificate at `N₀ = 10000`; the recursion is evaluated once per process.
pub fn gap_lower_bound(params: &NchoParams) -> GapCertificate {
    let r = default_recursion();
    certificate(params, DEFAULT_N0, r.a_tail, r.f_norm_bound)
}

pub fn gap_lower_bound_with_n0(params: &NchoParams, n0: usize) -> Result<GapCertificate> {
    let seq = a_sequence(n0)?;
    Ok(certificate(params, n0, seq[n0], norm_bound_unchecked(n0)))
}
