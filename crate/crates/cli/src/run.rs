//! Dispatch from a [`RunConfig`] to the core computations.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use ncho_core::eigen::DEFAULT_TOL;
use ncho_core::gap::{gap_lower_bound_with_n0, DEFAULT_N0};
use ncho_core::{
    crossing_report, enclose, enclose_auto, gap_lower_bound, ground_state_report, iw07_band,
    iw07_check, lambda_cap, merged_spectrum, positivity_check, trace_curve, CrossingRow,
    CurveTrace, Enclosure, GapCertificate, GroundStateReport, Interval, NchoParams, SectorId,
    SpectrumLine,
};
use serde::{Deserialize, Serialize};

use crate::config::{Command, RunConfig};
use crate::error::CliError;

/// Bumped whenever a payload's field layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultEnvelope {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub config: RunConfig,
    /// Unix seconds.
    pub timestamp: u64,
    pub payload: Payload,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum Payload {
    Enclose(EnclosePayload),
    Spectrum(SpectrumPayload),
    Curve(CurveTrace),
    Gap(Vec<GapCertificate>),
    Crossing(Vec<CrossingRow>),
    Verify(VerifyReport),
    Groundstate(Vec<GroundStateEntry>),
    Repro(ReproTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnclosePayload {
    pub params: NchoParams,
    pub enclosure: Enclosure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPayload {
    pub params: NchoParams,
    pub lines: Vec<SpectrumLine>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundStateEntry {
    pub params: NchoParams,
    pub report: GroundStateReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Iw07Entry {
    pub n: usize,
    pub band: Interval,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityEntry {
    pub sector: SectorId,
    pub truncation: usize,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: NchoParams,
    pub ground: GroundStateReport,
    pub iw07: Vec<Iw07Entry>,
    pub positivity: Vec<PositivityEntry>,
    /// Ground state even, simple unless `α = β`, every band and sign check holds.
    pub all_passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReproRow {
    pub index: usize,
    pub truncation: usize,
    pub lower: f64,
    pub upper: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproTable {
    pub example: String,
    pub params: NchoParams,
    pub sector: SectorId,
    pub truncation: usize,
    pub cap: f64,
    pub rows: Vec<ReproRow>,
    /// The same eigenvalues at the width goal, from adaptive truncation.
    pub refined: Vec<ReproRow>,
    pub refined_width_goal: f64,
}

fn unix_seconds() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Validates `config`, runs it and wraps the result.
pub fn run(config: &RunConfig) -> Result<ResultEnvelope, CliError> {
    let (points, mut warnings) = config.validate()?;
    let tol = DEFAULT_TOL.min(config.width_goal / 4.0);

    let payload = match config.command {
        Command::Enclose => {
            let q = points[0];
            let enclosure = match config.truncation {
                Some(n_trunc) => enclose(config.sector, &q, config.index, n_trunc, tol)?,
                None => enclose_auto(
                    config.sector,
                    &q,
                    config.index,
                    config.width_goal,
                    config.n_max,
                )?,
            };
            if !enclosure.certified {
                warnings.push(format!(
                    "index {} is not certified at N = {}: upper {} exceeds cap {}",
                    enclosure.index, enclosure.truncation, enclosure.upper, enclosure.cap
                ));
            }
            Payload::Enclose(EnclosePayload {
                params: q,
                enclosure,
            })
        }
        Command::Spectrum => {
            let q = points[0];
            let lines = merged_spectrum(&q, config.count, config.width_goal)?;
            let ambiguous = lines.iter().filter(|l| l.potentially_degenerate).count();
            if ambiguous > 0 {
                warnings.push(format!(
                    "{ambiguous} lines overlap a neighbour; their order is not certified"
                ));
            }
            Payload::Spectrum(SpectrumPayload { params: q, lines })
        }
        Command::Curve => {
            let trace = trace_curve(config.sector, config.index, &points, config.width_goal);
            for q in &trace.omitted {
                warnings.push(format!(
                    "dropped uncertified point alpha={} beta={}",
                    q.alpha(),
                    q.beta()
                ));
            }
            Payload::Curve(trace)
        }
        Command::Gap if config.crossing => {
            let rows = crossing_report(config.branch, config.index, &points, config.width_goal);
            for r in rows.iter().filter(|r| r.gap_interval.is_none()) {
                warnings.push(format!(
                    "no certified gap at alpha={} beta={}",
                    r.params.alpha(),
                    r.params.beta()
                ));
            }
            Payload::Crossing(rows)
        }
        Command::Gap => {
            let certs = if config.n0 == DEFAULT_N0 {
                points.iter().map(gap_lower_bound).collect()
            } else {
                points
                    .iter()
                    .map(|q| gap_lower_bound_with_n0(q, config.n0))
                    .collect::<Result<Vec<_>, _>>()?
            };
            Payload::Gap(certs)
        }
        Command::Verify => Payload::Verify(verify(&points[0], config)?),
        Command::Groundstate => Payload::Groundstate(
            points
                .iter()
                .map(|q| {
                    ground_state_report(q, config.width_goal)
                        .map(|report| GroundStateEntry { params: *q, report })
                })
                .collect::<Result<_, _>>()?,
        ),
        Command::Repro => Payload::Repro(example_6_2(config.width_goal)?),
    };

    Ok(ResultEnvelope {
        tool: "ncho".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        schema: SCHEMA_VERSION,
        config: config.clone(),
        timestamp: unix_seconds(),
        payload,
        warnings,
    })
}

fn verify(q: &NchoParams, config: &RunConfig) -> Result<VerifyReport, CliError> {
    let ground = ground_state_report(q, config.width_goal)?;
    let iw07 = (1..=config.pairs)
        .map(|n| {
            Ok(Iw07Entry {
                n,
                band: iw07_band(q, n),
                holds: iw07_check(q, n, config.width_goal)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let truncation = config
        .truncation
        .unwrap_or(crate::config::DEFAULT_VERIFY_TRUNCATION);
    let positivity = SectorId::ALL
        .iter()
        .map(|&sector| {
            Ok(PositivityEntry {
                sector,
                truncation,
                positive: positivity_check(sector, q, truncation)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let all_passed = ground.even
        && (ground.simple || q.is_degenerate())
        && iw07.iter().all(|e| e.holds)
        && positivity.iter().all(|e| e.positive);
    Ok(VerifyReport {
        params: *q,
        ground,
        iw07,
        positivity,
        all_passed,
    })
}

/// The worked example: `(α, β) = (1, 2)`, sector `+1`, `N = 10`, indices 0..=3.
pub fn example_6_2(width_goal: f64) -> Result<ReproTable, CliError> {
    let params = NchoParams::new(1.0, 2.0)?;
    let sector = SectorId::PLUS_ONE;
    let truncation = 10;
    let row = |e: Enclosure| ReproRow {
        index: e.index,
        truncation: e.truncation,
        lower: e.lower,
        upper: e.upper,
        certified: e.certified,
    };
    let rows = (0..=3)
        .map(|n| enclose(sector, &params, n, truncation, DEFAULT_TOL).map(row))
        .collect::<Result<Vec<_>, _>>()?;
    let refined = (0..3)
        .map(|n| enclose_auto(sector, &params, n, width_goal, 4096).map(row))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReproTable {
        example: "6.2".into(),
        params,
        sector,
        truncation,
        cap: lambda_cap(sector, &params, truncation),
        rows,
        refined,
        refined_width_goal: width_goal,
    })
}

/// Fixed-layout text rendering; reals rounded to 9 decimals.
pub fn render_repro(t: &ReproTable) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "example {}: alpha = {}, beta = {}, sector {}, N = {}",
        t.example,
        t.params.alpha(),
        t.params.beta(),
        t.sector,
        t.truncation
    );
    let _ = writeln!(s, "cap = {:.9}", t.cap);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:>3}  {:>14}  {:>14}  status", "n", "lower", "upper");
    for r in &t.rows {
        let status = if r.certified {
            "certified".to_string()
        } else {
            format!("refused (upper > cap {:.9})", t.cap)
        };
        let _ = writeln!(
            s,
            "{:>3}  {:>14.9}  {:>14.9}  {status}",
            r.index, r.lower, r.upper
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "refined to width <= {:e}:", t.refined_width_goal);
    let _ = writeln!(
        s,
        "{:>3}  {:>5}  {:>14}  {:>14}",
        "n", "N", "lower", "upper"
    );
    for r in &t.refined {
        let _ = writeln!(
            s,
            "{:>3}  {:>5}  {:>14.9}  {:>14.9}",
            r.index, r.truncation, r.lower, r.upper
        );
    }
    s
}
