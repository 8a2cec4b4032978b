//! Closed-form lower and upper bounds on the Gaussian tail integral.
//!
//! Every bound has the shape `prefactor(x)·e^(−x²/2)`, so it is compared
//! against `M(x)` by comparing its prefactor with Mill's ratio `R(x)`. This
//! keeps comparisons meaningful past the point where `e^(−x²/2)` underflows.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{self, X_MAX};
use crate::quadrature;

/// Identity of a catalogued bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[repr(u32)]
pub enum BoundId {
    GordonLower = 0,
    GordonUpper = 1,
    BsLower = 2,
    BsUpper = 3,
    Thm3Lower = 4,
    Thm3Upper = 5,
    CorollaryLower = 6,
    /// Same formula as [`BoundId::BsUpper`].
    CorollaryUpper = 7,
}

impl BoundId {
    /// All bounds in catalog order.
    pub const ALL: [BoundId; 8] = [
        BoundId::GordonLower,
        BoundId::GordonUpper,
        BoundId::BsLower,
        BoundId::BsUpper,
        BoundId::Thm3Lower,
        BoundId::Thm3Upper,
        BoundId::CorollaryLower,
        BoundId::CorollaryUpper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::GordonLower => "gordon_lower",
            BoundId::GordonUpper => "gordon_upper",
            BoundId::BsLower => "bs_lower",
            BoundId::BsUpper => "bs_upper",
            BoundId::Thm3Lower => "thm3_lower",
            BoundId::Thm3Upper => "thm3_upper",
            BoundId::CorollaryLower => "corollary_lower",
            BoundId::CorollaryUpper => "corollary_upper",
        }
    }

    pub fn side(self) -> Side {
        match self {
            BoundId::GordonLower
            | BoundId::BsLower
            | BoundId::Thm3Lower
            | BoundId::CorollaryLower => Side::Lower,
            _ => Side::Upper,
        }
    }

    pub fn from_index(index: u32) -> Option<Self> {
        Self::ALL.get(index as usize).copied()
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown bound `{s}`")))
    }
}

/// Parses a comma-separated bound selection.
///
/// Besides the eight identifiers, the group names `gordon`, `bs`, `thm3`,
/// `corollary` (both sides) and `all` are accepted. The result is
/// deduplicated and in catalog order.
pub fn parse_bound_list(list: &str) -> Result<Vec<BoundId>> {
    let mut selected = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match token {
            "all" => selected.extend(BoundId::ALL),
            "gordon" => selected.extend([BoundId::GordonLower, BoundId::GordonUpper]),
            "bs" => selected.extend([BoundId::BsLower, BoundId::BsUpper]),
            "thm3" => selected.extend([BoundId::Thm3Lower, BoundId::Thm3Upper]),
            "corollary" => selected.extend([BoundId::CorollaryLower, BoundId::CorollaryUpper]),
            other => selected.push(other.parse()?),
        }
    }
    selected.sort();
    selected.dedup();
    if selected.is_empty() {
        return Err(Error::Config("bound selection is empty".into()));
    }
    Ok(selected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

/// An interval of the real line with independently open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidityInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl ValidityInterval {
    pub const fn above(lo: f64) -> Self {
        Self {
            lo,
            hi: f64::INFINITY,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open {
            x > self.lo
        } else {
            x >= self.lo
        };
        let below = if self.hi_open {
            x < self.hi
        } else {
            x <= self.hi
        };
        above && below
    }
}

impl fmt::Display for ValidityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_open { '(' } else { '[' };
        let close = if self.hi_open { ')' } else { ']' };
        let hi = if self.hi.is_infinite() {
            "inf".to_string()
        } else {
            self.hi.to_string()
        };
        write!(f, "{open}{}, {hi}{close}", self.lo)
    }
}

/// Catalog entry for one bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSpec {
    pub id: BoundId,
    pub side: Side,
    pub proven_validity: ValidityInterval,
    pub source: &'static str,
    pub formula: &'static str,
}

/// Positive root of `u⁴ + u² − 1`, i.e. `√((√5 − 1)/2)`.
pub fn crossover_constant() -> f64 {
    ((5f64.sqrt() - 1.0) / 2.0).sqrt()
}

/// All eight bounds, in [`BoundId::ALL`] order.
pub fn bound_catalog() -> Vec<BoundSpec> {
    BoundId::ALL.into_iter().map(spec).collect()
}

pub fn spec(id: BoundId) -> BoundSpec {
    let (source, formula) = match id {
        BoundId::GordonLower => ("Gordon (1941)", "x/(1+x^2) * exp(-x^2/2)"),
        BoundId::GordonUpper => ("Gordon (1941)", "1/x * exp(-x^2/2)"),
        BoundId::BsLower => ("Birnbaum (1942)", "2/(sqrt(x^2+4)+x) * exp(-x^2/2)"),
        BoundId::BsUpper => ("Sampford (1953)", "4/(sqrt(x^2+8)+3x) * exp(-x^2/2)"),
        BoundId::Thm3Lower => ("refined Mills' ratio lower bound", "(1+x^2)/(x(2+x^2)) * exp(-x^2/2)"),
        BoundId::Thm3Upper => ("refined Mills' ratio upper bound", "1/sqrt(1+x^2) * exp(-x^2/2)"),
        BoundId::CorollaryLower => (
            "spliced lower bound",
            "2/(sqrt(x^2+4)+x) * exp(-x^2/2) if x <= sqrt(2), else (1+x^2)/(x(2+x^2)) * exp(-x^2/2)",
        ),
        BoundId::CorollaryUpper => ("spliced upper bound", "4/(sqrt(x^2+8)+3x) * exp(-x^2/2)"),
    };
    let proven_validity = match id {
        BoundId::Thm3Upper => ValidityInterval::above(crossover_constant()),
        BoundId::Thm3Lower => ValidityInterval::above(SQRT_2),
        _ => ValidityInterval::above(0.0),
    };
    BoundSpec {
        id,
        side: id.side(),
        proven_validity,
        source,
        formula,
    }
}

/// The factor multiplying `e^(−x²/2)`, i.e. the bound on Mill's ratio.
///
/// Evaluated for any `x ≥ 0` without validity checks.
pub fn prefactor(id: BoundId, x: f64) -> f64 {
    let x2 = x * x;
    match id {
        BoundId::GordonLower => x / (1.0 + x2),
        BoundId::GordonUpper => 1.0 / x,
        BoundId::BsLower => 2.0 / ((x2 + 4.0).sqrt() + x),
        BoundId::BsUpper | BoundId::CorollaryUpper => 4.0 / ((x2 + 8.0).sqrt() + 3.0 * x),
        BoundId::Thm3Lower => (1.0 + x2) / (x * (2.0 + x2)),
        BoundId::Thm3Upper => 1.0 / (1.0 + x2).sqrt(),
        BoundId::CorollaryLower if x <= SQRT_2 => prefactor(BoundId::BsLower, x),
        BoundId::CorollaryLower => prefactor(BoundId::Thm3Lower, x),
    }
}

fn check_positive_abscissa(x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 && x <= X_MAX {
        Ok(x)
    } else {
        Err(Error::Domain {
            what: "x",
            value: x,
            domain: "(0, 40]",
        })
    }
}

fn check_validity(id: BoundId, x: f64, force: bool) -> Result<()> {
    let validity = spec(id).proven_validity;
    if force || validity.contains(x) {
        Ok(())
    } else {
        Err(Error::Validity {
            id,
            x,
            interval: validity.to_string(),
        })
    }
}

/// Value of bound `id` at `x`. Outside the proven validity interval this
/// fails unless `force` is set.
pub fn evaluate_bound(id: BoundId, x: f64, force: bool) -> Result<f64> {
    let x = check_positive_abscissa(x)?;
    check_validity(id, x, force)?;
    Ok(prefactor(id, x) * gauss::gaussian_kernel(x))
}

/// Natural logarithm of [`evaluate_bound`], finite on all of `(0, 40]`.
pub fn log_bound(id: BoundId, x: f64, force: bool) -> Result<f64> {
    let x = check_positive_abscissa(x)?;
    check_validity(id, x, force)?;
    Ok(prefactor(id, x).ln() - 0.5 * x * x)
}

/// Whether the inequality of bound `id` holds strictly at `x`, using the
/// supplied Mill's ratio.
pub fn holds_against(id: BoundId, x: f64, ratio: f64) -> bool {
    let p = prefactor(id, x);
    match id.side() {
        Side::Lower => p < ratio,
        Side::Upper => p > ratio,
    }
}

/// One bound evaluated at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundEntry {
    pub value: f64,
    pub log_value: f64,
    /// `(bound − M)/M`.
    pub relative_error: f64,
    pub in_validity: bool,
    pub holds: bool,
}

/// All requested bounds compared with the reference `M(x)` at one `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub x: f64,
    pub reference: f64,
    pub log_reference: f64,
    pub entries: BTreeMap<BoundId, BoundEntry>,
    /// Every in-validity lower bound lies below the reference and every
    /// in-validity upper bound above it.
    pub ordering_ok: bool,
}

impl ComparisonRow {
    pub fn get(&self, id: BoundId) -> Option<&BoundEntry> {
        self.entries.get(&id)
    }
}

/// Evaluates `M(x)` and every bound in `ids` (forced) at `x`.
pub fn compare_at(x: f64, ids: &[BoundId]) -> Result<ComparisonRow> {
    let x = check_positive_abscissa(x)?;
    let ratio = gauss::mills_ratio(x)?;
    let reference = gauss::tail_integral(x)?;
    let mut entries = BTreeMap::new();
    let mut ordering_ok = true;
    for &id in ids {
        let p = prefactor(id, x);
        let in_validity = spec(id).proven_validity.contains(x);
        let holds = holds_against(id, x, ratio);
        if in_validity && !holds {
            ordering_ok = false;
        }
        entries.insert(
            id,
            BoundEntry {
                value: p * gauss::gaussian_kernel(x),
                log_value: p.ln() - 0.5 * x * x,
                relative_error: p / ratio - 1.0,
                in_validity,
                holds,
            },
        );
    }
    Ok(ComparisonRow {
        x,
        reference: reference.linear,
        log_reference: reference.log_value,
        entries,
        ordering_ok,
    })
}

/// Locates, by bisection on `[lo, hi]`, the abscissa where bound `id` starts
/// to hold. The bound must fail at `lo` and hold at `hi`.
pub fn empirical_crossover(id: BoundId, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let mut lo = check_positive_abscissa(lo)?;
    let mut hi = check_positive_abscissa(hi)?;
    if tol.is_nan() || tol <= 0.0 || lo >= hi {
        return Err(Error::Config(format!(
            "crossover search needs lo < hi and tol > 0, got [{lo}, {hi}], tol = {tol}"
        )));
    }
    let holds = |x: f64| holds_against(id, x, gauss::mills_ratio_series_cf(x));
    if holds(lo) || !holds(hi) {
        return Err(Error::Bracket {
            what: format!("{id} - M(x)"),
            lo,
            hi,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Relative residual of the integral identity
/// `∫ₓ^∞ u(2+u²)/(1+u²)^(3/2) e^(−u²/2) du = e^(−x²/2)/√(1+x²)`.
///
/// Both sides are scaled by `e^(x²/2)`; the left side is integrated after the
/// shift `u = x + t`.
pub fn identity_residual(x: f64) -> Result<f64> {
    let x = gauss::Abscissa::new(x)?.get();
    let weight = |u: f64| {
        let u2 = u * u;
        u * (2.0 + u2) / ((1.0 + u2) * (1.0 + u2).sqrt())
    };
    let upper = -x + (x * x + 120.0).sqrt();
    let lhs = quadrature::integrate(
        |t| weight(x + t) * (-t * (x + 0.5 * t)).exp(),
        0.0,
        upper,
        0.0,
        1e-14,
    )?
    .value;
    let rhs = 1.0 / (1.0 + x * x).sqrt();
    Ok((lhs - rhs) / rhs)
}

/// `R(x)·√(1+x²)`, which tends to 1 from below.
pub fn asymptotic_ratio(x: f64) -> Result<f64> {
    let x = check_positive_abscissa(x)?;
    Ok(gauss::mills_ratio(x)? * 1f64.hypot(x))
}
