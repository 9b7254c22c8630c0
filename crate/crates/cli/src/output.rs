//! Serialization of envelopes to JSON, CSV and tab-separated plot files.
//!
//! JSON carries the whole envelope. CSV carries only the payload, one flat
//! row per record; the row types are public so files can be read back.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use ncho_core::{CurvePoint, Interval};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::run::{Payload, ResultEnvelope};

pub fn write_json(envelope: &ResultEnvelope, mut w: impl Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, envelope)?;
    writeln!(w)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosureRow {
    pub alpha: f64,
    pub beta: f64,
    pub sector: String,
    pub index: usize,
    pub lower: f64,
    pub upper: f64,
    pub truncation: usize,
    pub cap: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub global_rank: usize,
    pub sector: String,
    pub sector_index: usize,
    pub value_lower: f64,
    pub value_upper: f64,
    pub potentially_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub alpha: f64,
    pub beta: f64,
    pub delta_value: f64,
    pub operator_gap_bound: f64,
    pub in_region: bool,
    pub n0: usize,
    pub a_tail: f64,
    pub f_norm_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingCsvRow {
    pub alpha: f64,
    pub beta: f64,
    pub gap_lower: Option<f64>,
    pub gap_upper: Option<f64>,
    pub certified_no_crossing: bool,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundStateRow {
    pub alpha: f64,
    pub beta: f64,
    pub e_plus_lower: f64,
    pub e_plus_upper: f64,
    pub e_minus_lower: f64,
    pub e_minus_upper: f64,
    pub even: bool,
    pub simple: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub argument: String,
    pub passed: bool,
}

fn enclosure_row(alpha: f64, beta: f64, e: &ncho_core::Enclosure) -> EnclosureRow {
    EnclosureRow {
        alpha,
        beta,
        sector: e.sector.to_string(),
        index: e.index,
        lower: e.lower,
        upper: e.upper,
        truncation: e.truncation,
        cap: e.cap,
        certified: e.certified,
    }
}

fn serialize_all<R: Serialize>(
    rows: impl IntoIterator<Item = R>,
    w: impl Write,
) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

/// Writes the payload as CSV with a header row.
pub fn write_csv(payload: &Payload, w: impl Write) -> Result<(), CliError> {
    match payload {
        Payload::Enclose(p) => serialize_all(
            [enclosure_row(
                p.params.alpha(),
                p.params.beta(),
                &p.enclosure,
            )],
            w,
        ),
        Payload::Curve(t) => serialize_all(
            t.points
                .iter()
                .map(|p| enclosure_row(p.params.alpha(), p.params.beta(), &p.enclosure)),
            w,
        ),
        Payload::Repro(t) => serialize_all(
            t.rows.iter().chain(&t.refined).map(|r| EnclosureRow {
                alpha: t.params.alpha(),
                beta: t.params.beta(),
                sector: t.sector.to_string(),
                index: r.index,
                lower: r.lower,
                upper: r.upper,
                truncation: r.truncation,
                cap: ncho_core::lambda_cap(t.sector, &t.params, r.truncation),
                certified: r.certified,
            }),
            w,
        ),
        Payload::Spectrum(p) => serialize_all(
            p.lines.iter().map(|l| SpectrumRow {
                global_rank: l.global_rank,
                sector: l.sector.to_string(),
                sector_index: l.sector_index,
                value_lower: l.value_lower,
                value_upper: l.value_upper,
                potentially_degenerate: l.potentially_degenerate,
            }),
            w,
        ),
        Payload::Gap(certs) => serialize_all(
            certs.iter().map(|c| GapRow {
                alpha: c.params.alpha(),
                beta: c.params.beta(),
                delta_value: c.delta_value,
                operator_gap_bound: c.operator_gap_bound,
                in_region: c.in_region,
                n0: c.n0,
                a_tail: c.a_tail,
                f_norm_bound: c.f_norm_bound,
            }),
            w,
        ),
        Payload::Crossing(rows) => serialize_all(
            rows.iter().map(|r| CrossingCsvRow {
                alpha: r.params.alpha(),
                beta: r.params.beta(),
                gap_lower: r.gap_interval.map(|g| g.lo),
                gap_upper: r.gap_interval.map(|g| g.hi),
                certified_no_crossing: r.certified_no_crossing,
                delta: r.delta,
            }),
            w,
        ),
        Payload::Groundstate(entries) => serialize_all(
            entries.iter().map(|e| GroundStateRow {
                alpha: e.params.alpha(),
                beta: e.params.beta(),
                e_plus_lower: e.report.e_plus.lo,
                e_plus_upper: e.report.e_plus.hi,
                e_minus_lower: e.report.e_minus.lo,
                e_minus_upper: e.report.e_minus.hi,
                even: e.report.even,
                simple: e.report.simple,
            }),
            w,
        ),
        Payload::Verify(v) => {
            let g = &v.ground;
            let mut rows = vec![
                CheckRow {
                    check: "even".into(),
                    argument: String::new(),
                    passed: g.even,
                },
                CheckRow {
                    check: "simple".into(),
                    argument: String::new(),
                    passed: g.simple,
                },
            ];
            rows.extend(v.iw07.iter().map(|e| CheckRow {
                check: "iw07".into(),
                argument: e.n.to_string(),
                passed: e.holds,
            }));
            rows.extend(v.positivity.iter().map(|e| CheckRow {
                check: "positivity".into(),
                argument: e.sector.to_string(),
                passed: e.positive,
            }));
            serialize_all(rows, w)
        }
    }
}

/// Writes `alpha beta n lower upper midpoint`, tab separated, one row per
/// point in the given order.
pub fn write_plot_data(points: &[CurvePoint], mut w: impl Write) -> Result<(), CliError> {
    if points.is_empty() {
        return Err(CliError::NoCertifiedPoints);
    }
    writeln!(w, "alpha\tbeta\tn\tlower\tupper\tmidpoint")?;
    for p in points {
        let e = &p.enclosure;
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            p.params.alpha(),
            p.params.beta(),
            e.index,
            e.lower,
            e.upper,
            e.midpoint()
        )?;
    }
    w.flush()?;
    Ok(())
}

/// [`write_plot_data`] into a file. Nothing is created when `points` is empty.
pub fn emit_plot_data(points: &[CurvePoint], path: &Path) -> Result<(), CliError> {
    if points.is_empty() {
        return Err(CliError::NoCertifiedPoints);
    }
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_plot_data(points, BufWriter::new(file))
}

/// Parses a plot file back into `(alpha, beta, n, interval)` rows.
pub fn read_plot_data(text: &str) -> Result<Vec<(f64, f64, usize, Interval)>, String> {
    let mut lines = text.lines();
    if lines.next() != Some("alpha\tbeta\tn\tlower\tupper\tmidpoint") {
        return Err("missing plot header".into());
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 6 {
                return Err(format!("bad row {line:?}"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
            let n = f[2].parse().map_err(|e| format!("{:?}: {e}", f[2]))?;
            Ok((
                num(f[0])?,
                num(f[1])?,
                n,
                Interval::new(num(f[3])?, num(f[4])?),
            ))
        })
        .collect()
}

/// Points of a curve-like payload, for plot output.
pub fn plot_points(payload: &Payload) -> Option<Vec<CurvePoint>> {
    match payload {
        Payload::Curve(t) => Some(t.points.clone()),
        Payload::Enclose(p) if p.enclosure.certified => Some(vec![CurvePoint {
            params: p.params,
            enclosure: p.enclosure,
        }]),
        Payload::Enclose(_) => Some(Vec::new()),
        _ => None,
    }
}
