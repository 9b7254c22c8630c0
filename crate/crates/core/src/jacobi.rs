//! Entry sequences and finite truncations of the four sector Jacobi matrices.
//!
//! Each reducing sector `(q, p)` of `Q(α, β)` is unitarily equivalent to the
//! semi-infinite Jacobi matrix `½ J(a_q, b_qp)`, where
//!
//! ```text
//! a_+(n) = -√((2n+1)(2n+2))        a_-(n) = -√((2n+2)(2n+3))
//! b_+1(n) = α(1+4n) (n even), β(1+4n) (n odd)
//! b_-1(n) = α(3+4n) (n even), β(3+4n) (n odd)
//! b_q2(n) = b_q1(n) with α and β exchanged
//! ```
//!
//! The generators return the unhalved `a`, `b` values; the ½ factor is applied
//! once, in [`build_truncation`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oscillator parameters `(α, β)` with `α, β > 0` and `αβ > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct NchoParams {
    alpha: f64,
    beta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawParams> for NchoParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.alpha, raw.beta)
    }
}

impl NchoParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = alpha.is_finite()
            && beta.is_finite()
            && alpha > 0.0
            && beta > 0.0
            && alpha * beta > 1.0;
        if ok {
            Ok(Self { alpha, beta })
        } else {
            Err(Error::InvalidParams { alpha, beta })
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `α == β`: the oscillator reduces to two copies of a harmonic
    /// oscillator and branches 1 and 2 carry identical spectra.
    pub fn is_degenerate(&self) -> bool {
        self.alpha == self.beta
    }

    /// The pair with `α` and `β` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// `(α, β)` as seen by the given branch: branch 2 swaps the roles.
    pub(crate) fn oriented(&self, branch: Branch) -> (f64, f64) {
        match branch {
            Branch::One => (self.alpha, self.beta),
            Branch::Two => (self.beta, self.alpha),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    One,
    Two,
}

/// One of the four reducing sectors, labelled `(q, p)` with `q = ±`, `p = 1, 2`.
///
/// The derived ordering is `+1 < +2 < -1 < -2`, which is the tie-break order
/// used when merging sector spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SectorId {
    pub parity: Parity,
    pub branch: Branch,
}

impl SectorId {
    pub const PLUS_ONE: Self = Self::new(Parity::Plus, Branch::One);
    pub const PLUS_TWO: Self = Self::new(Parity::Plus, Branch::Two);
    pub const MINUS_ONE: Self = Self::new(Parity::Minus, Branch::One);
    pub const MINUS_TWO: Self = Self::new(Parity::Minus, Branch::Two);

    pub const ALL: [Self; 4] = [
        Self::PLUS_ONE,
        Self::PLUS_TWO,
        Self::MINUS_ONE,
        Self::MINUS_TWO,
    ];

    pub const fn new(parity: Parity, branch: Branch) -> Self {
        Self { parity, branch }
    }
}

impl fmt::Display for SectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = match self.parity {
            Parity::Plus => '+',
            Parity::Minus => '-',
        };
        let p = match self.branch {
            Branch::One => '1',
            Branch::Two => '2',
        };
        write!(f, "{q}{p}")
    }
}

impl From<SectorId> for String {
    fn from(s: SectorId) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for SectorId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for SectorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parity = match s.chars().next() {
            Some('+') | Some('p') => Parity::Plus,
            Some('-') | Some('m') => Parity::Minus,
            _ => return Err(Error::InvalidArgument(format!("bad sector {s:?}"))),
        };
        let branch = match &s[1..] {
            "1" => Branch::One,
            "2" => Branch::Two,
            _ => return Err(Error::InvalidArgument(format!("bad sector {s:?}"))),
        };
        Ok(Self::new(parity, branch))
    }
}

/// Finite real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymTridiag {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl SymTridiag {
    /// `offdiag` must be exactly one shorter than a non-empty `diag`.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal lengths diag={} offdiag={} must differ by one",
                diag.len(),
                offdiag.len()
            )));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Largest absolute entry.
    pub fn scale(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.offdiag)
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Copy with `shift` added to the last diagonal entry (`T + shift·p_N`).
    pub fn with_last_diag_shift(&self, shift: f64) -> Self {
        let mut out = self.clone();
        if let Some(last) = out.diag.last_mut() {
            *last += shift;
        }
        out
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n, "vector length must match matrix dimension");
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }
}

/// Off-diagonal sequence `a_q(n)`; always strictly negative.
pub fn offdiag_entry(parity: Parity, n: u64) -> f64 {
    // float products: (2n+2)(2n+3) overflows u64 long before f64 loses it
    let m = n as f64;
    match parity {
        Parity::Plus => -((2.0 * m + 1.0) * (2.0 * m + 2.0)).sqrt(),
        Parity::Minus => -((2.0 * m + 2.0) * (2.0 * m + 3.0)).sqrt(),
    }
}

/// Diagonal sequence `b_qp(n)`.
pub fn diag_entry(sector: SectorId, params: &NchoParams, n: u64) -> f64 {
    let (a, b) = params.oriented(sector.branch);
    let base = match sector.parity {
        Parity::Plus => 1.0,
        Parity::Minus => 3.0,
    };
    let weight = if n % 2 == 0 { a } else { b };
    weight * (base + 4.0 * n as f64)
}

/// The `(N+1)`-dimensional truncation `½ J(a_q^N, b_qp^N)`.
pub fn build_truncation(sector: SectorId, params: &NchoParams, n_trunc: usize) -> SymTridiag {
    let diag = (0..=n_trunc as u64)
        .map(|i| 0.5 * diag_entry(sector, params, i))
        .collect();
    let offdiag = (0..n_trunc as u64)
        .map(|i| 0.5 * offdiag_entry(sector.parity, i))
        .collect();
    SymTridiag { diag, offdiag }
}
