//! Run configuration: what to compute, on which parameters, and where to put it.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ncho_core::enclosure::DEFAULT_N_MAX;
use ncho_core::gap::DEFAULT_N0;
use ncho_core::{Branch, NchoParams, SectorId};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_WIDTH_GOAL: f64 = 1e-9;
pub const DEFAULT_COUNT: usize = 10;
pub const DEFAULT_PAIRS: usize = 5;
pub const DEFAULT_VERIFY_TRUNCATION: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Enclose,
    Spectrum,
    Curve,
    Gap,
    Verify,
    Groundstate,
    Repro,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Enclose => "enclose",
            Command::Spectrum => "spectrum",
            Command::Curve => "curve",
            Command::Gap => "gap",
            Command::Verify => "verify",
            Command::Groundstate => "groundstate",
            Command::Repro => "repro",
        }
    }

    /// Commands that act on exactly one parameter pair.
    fn single_point(self) -> bool {
        matches!(self, Command::Enclose | Command::Spectrum | Command::Verify)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    TsvPlot,
    /// Fixed-layout table; `repro` only.
    Text,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::TsvPlot => "tsv",
            OutputFormat::Text => "txt",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "tsv-plot" => Ok(OutputFormat::TsvPlot),
            "text" => Ok(OutputFormat::Text),
            _ => Err(format!(
                "unknown format {s:?} (expected json, csv, tsv-plot or text)"
            )),
        }
    }
}

/// Inclusive `lo:hi:steps` range; `steps` evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + h * i as f64
                }
            })
            .collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts[..] else {
            return Err(format!("range {s:?} is not lo:hi:steps"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        let steps: usize = steps
            .trim()
            .parse()
            .map_err(|e| format!("{steps:?}: {e}"))?;
        let r = Range {
            lo: num(lo)?,
            hi: num(hi)?,
            steps,
        };
        if !(r.lo.is_finite() && r.hi.is_finite()) || r.lo > r.hi || r.steps == 0 {
            return Err(format!("range {s:?} needs finite lo <= hi and steps >= 1"));
        }
        Ok(r)
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.steps)
    }
}

/// Parses an `alpha,beta` pair.
pub fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("point {s:?} is not alpha,beta"))?;
    let a = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    Ok((a, b))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridSpec {
    Points(Vec<(f64, f64)>),
    Ranges { alpha: Range, beta: Range },
}

impl GridSpec {
    /// Raw `(α, β)` pairs in grid order: α outer, β inner for ranges.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        match self {
            GridSpec::Points(p) => p.clone(),
            GridSpec::Ranges { alpha, beta } => {
                let bs = beta.values();
                alpha
                    .values()
                    .into_iter()
                    .flat_map(|a| bs.iter().map(move |&b| (a, b)))
                    .collect()
            }
        }
    }

    /// Admissible points plus one warning per skipped pair.
    pub fn resolve(&self) -> (Vec<NchoParams>, Vec<String>) {
        let mut points = Vec::new();
        let mut warnings = Vec::new();
        for (a, b) in self.pairs() {
            match NchoParams::new(a, b) {
                Ok(q) => points.push(q),
                Err(e) => warnings.push(format!("skipped grid point: {e}")),
            }
        }
        (points, warnings)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub grid: GridSpec,
    pub sector: SectorId,
    pub branch: Branch,
    /// Eigenvalue index `n` within a sector.
    pub index: usize,
    /// Number of merged lines for `spectrum`.
    pub count: usize,
    /// Highest iw07 pair checked by `verify`.
    pub pairs: usize,
    pub width_goal: f64,
    /// Fixed truncation `N`; `None` means adaptive up to `n_max`.
    pub truncation: Option<usize>,
    pub n_max: usize,
    pub n0: usize,
    /// `gap`: report per-point crossing rows instead of certificates.
    pub crossing: bool,
    pub example: Option<String>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, grid: GridSpec) -> Self {
        Self {
            command,
            grid,
            sector: SectorId::PLUS_ONE,
            branch: Branch::One,
            index: 0,
            count: DEFAULT_COUNT,
            pairs: DEFAULT_PAIRS,
            width_goal: DEFAULT_WIDTH_GOAL,
            truncation: None,
            n_max: DEFAULT_N_MAX,
            n0: DEFAULT_N0,
            crossing: false,
            example: None,
            format: OutputFormat::Json,
            output: None,
        }
    }

    /// Checks every numeric field and resolves the grid, before any
    /// computation. Returns the admissible points and the skip warnings.
    pub fn validate(&self) -> Result<(Vec<NchoParams>, Vec<String>), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.width_goal.is_finite() && self.width_goal > 0.0) {
            return bad(format!("width goal {} must be positive", self.width_goal));
        }
        if self.n_max == 0 || self.n0 == 0 || self.count == 0 || self.pairs == 0 {
            return bad("N-max, N0, count and pairs must be at least 1".into());
        }
        if self.format == OutputFormat::TsvPlot
            && !matches!(self.command, Command::Curve | Command::Enclose)
        {
            return bad(format!(
                "tsv-plot output is only available for curve and enclose, not {}",
                self.command.name()
            ));
        }
        if self.format == OutputFormat::Text && self.command != Command::Repro {
            return bad(format!(
                "text output is only available for repro, not {}",
                self.command.name()
            ));
        }

        if self.command == Command::Repro {
            return match self.example.as_deref() {
                Some("6.2") => Ok((Vec::new(), Vec::new())),
                other => bad(format!("unknown example {other:?}; available: 6.2")),
            };
        }

        if self.command.single_point() {
            let pairs = self.grid.pairs();
            let [(a, b)] = pairs[..] else {
                return bad(format!(
                    "{} takes exactly one --alpha/--beta pair",
                    self.command.name()
                ));
            };
            let q = NchoParams::new(a, b).map_err(|e| CliError::Config(e.to_string()))?;
            return Ok((vec![q], Vec::new()));
        }

        let (points, warnings) = self.grid.resolve();
        if points.is_empty() {
            return bad(
                "no admissible grid points (need alpha, beta > 0 and alpha*beta > 1)".into(),
            );
        }
        Ok((points, warnings))
    }

    /// Where output goes: `--output` (relative paths resolved against
    /// `out_dir`), or `<out_dir>/<command>.<ext>` when only the directory is
    /// known, or stdout (`None`).
    pub fn output_path(&self, out_dir: Option<&Path>) -> Option<PathBuf> {
        match (&self.output, out_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(format!(
                "{}.{}",
                self.command.name(),
                self.format.extension()
            ))),
            (None, None) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_values() {
        let r: Range = "1:2:3".parse().unwrap();
        assert_eq!(r.values(), vec![1.0, 1.5, 2.0]);
        let r: Range = "0.5:0.5:1".parse().unwrap();
        assert_eq!(r.values(), vec![0.5]);
        assert!("2:1:3".parse::<Range>().is_err());
        assert!("1:2".parse::<Range>().is_err());
        assert!("1:2:0".parse::<Range>().is_err());
    }

    #[test]
    fn grid_order_and_skips() {
        let g = GridSpec::Ranges {
            alpha: "0.5:1:2".parse().unwrap(),
            beta: "1:3:2".parse().unwrap(),
        };
        assert_eq!(
            g.pairs(),
            vec![(0.5, 1.0), (0.5, 3.0), (1.0, 1.0), (1.0, 3.0)]
        );
        let (points, warnings) = g.resolve();
        assert_eq!(points.len(), 2);
        assert_eq!(warnings.len(), 2);
        assert_eq!((points[0].alpha(), points[0].beta()), (0.5, 3.0));
    }

    #[test]
    fn validation() {
        let one = GridSpec::Points(vec![(1.0, 2.0)]);
        let mut c = RunConfig::new(Command::Enclose, one.clone());
        assert!(c.validate().is_ok());
        c.width_goal = 0.0;
        assert!(matches!(c.validate(), Err(CliError::Config(_))));

        let c = RunConfig::new(Command::Enclose, GridSpec::Points(vec![(1.0, 1.0)]));
        assert!(matches!(c.validate(), Err(CliError::Config(_))));

        let mut c = RunConfig::new(Command::Gap, GridSpec::Points(vec![(1.0, 1.0), (1.0, 2.0)]));
        let (points, warnings) = c.validate().unwrap();
        assert_eq!((points.len(), warnings.len()), (1, 1));
        c.format = OutputFormat::TsvPlot;
        assert!(c.validate().is_err());

        let mut c = RunConfig::new(Command::Repro, GridSpec::Points(Vec::new()));
        assert!(c.validate().is_err());
        c.example = Some("6.2".into());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn output_path_resolution() {
        let mut c = RunConfig::new(Command::Curve, GridSpec::Points(vec![(1.0, 2.0)]));
        assert_eq!(c.output_path(None), None);
        assert_eq!(
            c.output_path(Some(Path::new("/out"))),
            Some(PathBuf::from("/out/curve.json"))
        );
        c.output = Some("x.json".into());
        assert_eq!(
            c.output_path(Some(Path::new("/out"))),
            Some(PathBuf::from("/out/x.json"))
        );
        c.output = Some("/abs/x.json".into());
        assert_eq!(
            c.output_path(Some(Path::new("/out"))),
            Some(PathBuf::from("/abs/x.json"))
        );
    }
}
