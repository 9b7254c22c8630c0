//! Certified spectral computations for the non-commutative harmonic
//! oscillator `Q(α, β)`, `α, β > 0`, `αβ > 1`.
//!
//! `Q` splits into four sectors `(q, p)`, `q = ±`, `p = 1, 2`, each a
//! semi-infinite Jacobi matrix. The crate builds their truncations
//! ([`jacobi`]), solves the finite problems by Sturm bisection ([`eigen`]),
//! turns truncation eigenvalues into two-sided enclosures of the true ones
//! ([`enclosure`]), evaluates the explicit parity-gap bound ([`gap`]) and
//! checks structural spectral properties on top of all that ([`analysis`]).

pub mod analysis;
pub mod eigen;
pub mod enclosure;
pub mod error;
pub mod gap;
pub mod jacobi;

#[cfg(test)]
#[path = "../tests/common/mod.rs"]
mod oracle;
#[cfg(test)]
mod proptests;

pub use analysis::{
    crossing_report, ground_state_report, iw07_band, iw07_check, merged_spectrum, positivity_check,
    trace_curve, CrossingRow, CurvePoint, CurveTrace, GroundStateReport, SpectrumLine,
};
pub use eigen::{
    eigenvalue, eigenvector, forward_recurrence_check, gershgorin_bounds, sturm_count, EigVector,
    EigenBracket,
};
pub use enclosure::{delta, enclose, enclose_auto, lambda_cap, Enclosure, Interval};
pub use error::{Error, Result};
pub use gap::{a_sequence, f_norm_bound, gamma, gap_lower_bound, GapCertificate};
pub use jacobi::{
    build_truncation, diag_entry, offdiag_entry, Branch, NchoParams, Parity, SectorId, SymTridiag,
};
