//! Whole-operator views assembled from the four sector enclosures.
//!
//! The spectrum of `Q(α, β)` is the union of the sector spectra, each of which
//! is simple. Everything in this module is built from certified
//! [`Enclosure`]s, so orderings are only asserted where intervals are disjoint;
//! overlapping intervals are reported, never resolved by guesswork.

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{eigenvalue, eigenvector, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::enclosure::{enclose_auto, Enclosure, Interval, DEFAULT_N_MAX};
use crate::error::{Error, Result};
use crate::gap::gap_lower_bound;
use crate::jacobi::{build_truncation, Branch, NchoParams, Parity, SectorId};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub value_lower: f64,
    pub value_upper: f64,
    pub sector: SectorId,
    pub sector_index: usize,
    pub global_rank: usize,
    /// The interval overlaps another returned line, so the relative order of
    /// the two is not certified.
    pub potentially_degenerate: bool,
}

impl SpectrumLine {
    pub fn interval(&self) -> Interval {
        Interval::new(self.value_lower, self.value_upper)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.value_lower + self.value_upper)
    }
}

fn initial_budget(count: usize) -> usize {
    count.div_ceil(4) + 2
}

/// The lowest `count` eigenvalues of `Q(α, β)` with sector provenance.
///
/// Lines are sorted by midpoint, ties broken by sector order `+1, +2, −1, −2`.
/// A sector keeps receiving indices until its highest computed lower bound
/// clears every selected line, so no uncomputed eigenvalue can belong in the
/// result.
pub fn merged_spectrum(
    params: &NchoParams,
    count: usize,
    width_goal: f64,
) -> Result<Vec<SpectrumLine>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let step = initial_budget(count);
    let mut per_sector: Vec<Vec<Enclosure>> = vec![Vec::new(); 4];
    let mut budget = [step; 4];

    loop {
        let jobs: Vec<(usize, usize)> = (0..4)
            .flat_map(|s| (per_sector[s].len()..budget[s]).map(move |k| (s, k)))
            .collect();
        let fresh: Vec<(usize, Enclosure)> = jobs
            .par_iter()
            .map(|&(s, k)| {
                enclose_auto(SectorId::ALL[s], params, k, width_goal, DEFAULT_N_MAX).map(|e| (s, e))
            })
            .collect::<Result<_>>()?;
        for (s, e) in fresh {
            per_sector[s].push(e);
        }

        let mut all: Vec<&Enclosure> = per_sector.iter().flatten().collect();
        all.sort_by(|a, b| {
            a.midpoint()
                .total_cmp(&b.midpoint())
                .then(a.sector.cmp(&b.sector))
                .then(a.index.cmp(&b.index))
        });
        let selected = &all[..count.min(all.len())];
        let cutoff = selected
            .iter()
            .map(|e| e.upper)
            .fold(f64::NEG_INFINITY, f64::max);

        let mut complete = selected.len() == count;
        for s in 0..4 {
            let last = per_sector[s].last().expect("budget is positive");
            if last.lower <= cutoff {
                budget[s] += step;
                complete = false;
            }
        }
        if complete {
            let mut lines: Vec<SpectrumLine> = selected
                .iter()
                .enumerate()
                .map(|(rank, e)| SpectrumLine {
                    value_lower: e.lower,
                    value_upper: e.upper,
                    sector: e.sector,
                    sector_index: e.index,
                    global_rank: rank,
                    potentially_degenerate: false,
                })
                .collect();
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    if lines[i].interval().intersects(&lines[j].interval()) {
                        lines[i].potentially_degenerate = true;
                        lines[j].potentially_degenerate = true;
                    }
                }
            }
            return Ok(lines);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundStateReport {
    /// Lowest eigenvalue of the even part, `min` over the two Plus branches.
    pub e_plus: Interval,
    /// Lowest eigenvalue of the odd part.
    pub e_minus: Interval,
    /// Ground enclosures of sectors `+1` and `+2`.
    pub plus_branches: [Interval; 2],
    pub even: bool,
    pub simple: bool,
}

fn min_interval(a: Interval, b: Interval) -> Interval {
    Interval::new(a.lo.min(b.lo), a.hi.min(b.hi))
}

pub fn ground_state_report(params: &NchoParams, width_goal: f64) -> Result<GroundStateReport> {
    let ground: Vec<Interval> = SectorId::ALL
        .par_iter()
        .map(|&s| enclose_auto(s, params, 0, width_goal, DEFAULT_N_MAX).map(|e| e.interval()))
        .collect::<Result<_>>()?;
    let e_plus = min_interval(ground[0], ground[1]);
    let e_minus = min_interval(ground[2], ground[3]);
    let even = e_plus.hi < e_minus.lo;
    let simple = even && !ground[0].intersects(&ground[1]);
    Ok(GroundStateReport {
        e_plus,
        e_minus,
        plus_branches: [ground[0], ground[1]],
        even,
        simple,
    })
}

/// `[(n−½)·min{α,β}·s, (n−½)·max{α,β}·s]` with `s = √((αβ−1)/(αβ))`.
pub fn iw07_band(params: &NchoParams, n: usize) -> Interval {
    let (a, b) = (params.alpha(), params.beta());
    let s = ((a * b - 1.0) / (a * b)).sqrt();
    let k = n as f64 - 0.5;
    Interval::new(k * a.min(b) * s, k * a.max(b) * s)
}

/// Checks that the `n`-th pair of the merged spectrum (0-based ranks `2n−2`
/// and `2n−1`) lies inside the closed-form band.
///
/// Both enclosures must sit inside the band widened by `width_goal` on each
/// side. The widening only matters at `α = β`, where the band is a single
/// point that coincides with the exact degenerate pair.
pub fn iw07_check(params: &NchoParams, n: usize, width_goal: f64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("iw07 pair index starts at 1".into()));
    }
    let lines = merged_spectrum(params, 2 * n, width_goal)?;
    let band = iw07_band(params, n);
    let widened = Interval::new(band.lo - width_goal, band.hi + width_goal);
    Ok(lines[2 * n - 2..2 * n]
        .iter()
        .all(|l| widened.encloses(&l.interval())))
}

/// Whether the ground eigenvector of the size-`N` truncation is strictly
/// positive after sign normalization.
pub fn positivity_check(sector: SectorId, params: &NchoParams, n_trunc: usize) -> Result<bool> {
    if n_trunc < 2 {
        return Err(Error::InvalidArgument(
            "positivity check needs N >= 2".into(),
        ));
    }
    let t = build_truncation(sector, params, n_trunc);
    let b = eigenvalue(&t, 0, DEFAULT_TOL)?;
    let v = eigenvector(&t, b.midpoint(), DEFAULT_MAX_ITER)?;
    Ok(v.components.iter().all(|&x| x > 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub params: NchoParams,
    pub enclosure: Enclosure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTrace {
    /// Certified points, in grid order.
    pub points: Vec<CurvePoint>,
    /// Grid points with no certified enclosure within the truncation limit.
    pub omitted: Vec<NchoParams>,
}

pub fn trace_curve(sector: SectorId, n: usize, grid: &[NchoParams], width_goal: f64) -> CurveTrace {
    let results: Vec<(NchoParams, Option<Enclosure>)> = grid
        .par_iter()
        .map(|q| {
            (
                *q,
                enclose_auto(sector, q, n, width_goal, DEFAULT_N_MAX).ok(),
            )
        })
        .collect();

    let mut trace = CurveTrace {
        points: Vec::with_capacity(results.len()),
        omitted: Vec::new(),
    };
    for (params, enclosure) in results {
        match enclosure {
            Some(enclosure) => trace.points.push(CurvePoint { params, enclosure }),
            None => {
                warn!(
                    "dropping uncertified point alpha={} beta={} sector={sector} n={n}",
                    params.alpha(),
                    params.beta()
                );
                trace.omitted.push(params);
            }
        }
    }
    trace
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossingRow {
    pub params: NchoParams,
    /// `[lower(λ₋ₚ) − upper(λ₊ₚ), upper(λ₋ₚ) − lower(λ₊ₚ)]`; `None` when either
    /// enclosure could not be certified.
    pub gap_interval: Option<Interval>,
    pub certified_no_crossing: bool,
    /// `Δ(α, β)` from the gap certificate, for comparison.
    pub delta: f64,
    pub plus: Option<Enclosure>,
    pub minus: Option<Enclosure>,
}

pub fn crossing_report(
    branch: Branch,
    n: usize,
    grid: &[NchoParams],
    width_goal: f64,
) -> Vec<CrossingRow> {
    let plus_sector = SectorId::new(Parity::Plus, branch);
    let minus_sector = SectorId::new(Parity::Minus, branch);
    grid.par_iter()
        .map(|q| {
            let plus = enclose_auto(plus_sector, q, n, width_goal, DEFAULT_N_MAX).ok();
            let minus = enclose_auto(minus_sector, q, n, width_goal, DEFAULT_N_MAX).ok();
            let gap_interval = match (plus, minus) {
                (Some(p), Some(m)) => Some(Interval::new(m.lower - p.upper, m.upper - p.lower)),
                _ => None,
            };
            CrossingRow {
                params: *q,
                gap_interval,
                certified_no_crossing: gap_interval.is_some_and(|g| g.lo > 0.0),
                delta: gap_lower_bound(q).delta_value,
                plus,
                minus,
            }
        })
        .collect()
}
