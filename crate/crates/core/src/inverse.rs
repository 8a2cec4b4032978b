//! Closed-form estimates of the inverse Q-function for small tail
//! probabilities, certified one-sided inverse bounds, and an empirical scan
//! of the conjectured orderings between the estimates and the exact inverse.
//!
//! All estimates are written in terms of `p = 2πα²` and evaluated through
//! `ln p = ln 2π + 2 ln α`, so they stay finite for any representable `α`.

use std::f64::consts::{LN_2, PI, SQRT_2};

use serde::Serialize;

use crate::bounds::{self, BoundId, Side};
use crate::error::{Error, Result};
use crate::gauss::{self, TailProbability, LN_SQRT_2PI};
use crate::grid::AlphaGrid;

/// Binary entropy `h(p) = −p ln p − (1−p) ln(1−p)` in nats.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain {
            what: "p",
            value: p,
            domain: "[0, 1]",
        });
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    // 1 − p is exact for p ≥ 0.5
    let q = if p > 0.5 { 1.0 - p } else { p };
    Ok(-q * q.ln() - (1.0 - q) * (-q).ln_1p())
}

/// `−ln(1 − p)/p`, continuous at `p = 0`.
fn neg_log1m_over(p: f64) -> f64 {
    if p < 1e-8 {
        1.0 + p * (0.5 + p / 3.0)
    } else {
        -(-p).ln_1p() / p
    }
}

fn log_p(alpha: f64) -> Result<f64> {
    let alpha = TailProbability::new(alpha)?.get();
    Ok((2.0 * PI).ln() + 2.0 * alpha.ln())
}

fn from_log_inner(alpha: f64, log_inner: f64) -> Result<f64> {
    if log_inner.is_finite() && log_inner < 0.0 {
        Ok((-log_inner).sqrt())
    } else {
        Err(Error::Domain {
            what: "alpha",
            value: alpha,
            domain: "values whose inner logarithm argument lies in (0, 1)",
        })
    }
}

fn domain_p_below_one(alpha: f64, lp: f64) -> Result<()> {
    if lp < 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "alpha",
            value: alpha,
            domain: "(0, 1/sqrt(2 pi))",
        })
    }
}

/// `√(−ln(−p ln p))` with `p = 2πα²`.
pub fn estimate_low1(alpha: f64) -> Result<f64> {
    let lp = log_p(alpha)?;
    domain_p_below_one(alpha, lp)?;
    from_log_inner(alpha, lp + (-lp).ln())
}

/// `√(−ln(p(1 − ln p)))` with `p = 2πα²`.
pub fn estimate_upp(alpha: f64) -> Result<f64> {
    let lp = log_p(alpha)?;
    domain_p_below_one(alpha, lp)?;
    from_log_inner(alpha, lp + (1.0 - lp).ln())
}

/// `√(−ln h(p))` with `p = 2πα²`, defined for `p < 1/2`.
pub fn estimate_low2(alpha: f64) -> Result<f64> {
    let lp = log_p(alpha)?;
    if lp >= -LN_2 {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
            domain: "2 pi alpha^2 < 0.5",
        });
    }
    // h(p) = p·(−ln p + (1 − p)·(−ln(1 − p)/p))
    let p = lp.exp();
    from_log_inner(alpha, lp + (-lp + (1.0 - p) * neg_log1m_over(p)).ln())
}

/// The three closed-form estimates of `Q⁻(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimate {
    Low1,
    Low2,
    Upp,
}

impl Estimate {
    pub const ALL: [Estimate; 3] = [Estimate::Low1, Estimate::Low2, Estimate::Upp];

    pub fn name(self) -> &'static str {
        match self {
            Estimate::Low1 => "low1",
            Estimate::Low2 => "low2",
            Estimate::Upp => "upp",
        }
    }

    pub fn evaluate(self, alpha: f64) -> Result<f64> {
        match self {
            Estimate::Low1 => estimate_low1(alpha),
            Estimate::Low2 => estimate_low2(alpha),
            Estimate::Upp => estimate_upp(alpha),
        }
    }

    /// The conjectured side: `low*` below the exact inverse, `upp` above.
    pub fn claimed_side(self) -> Side {
        match self {
            Estimate::Low1 | Estimate::Low2 => Side::Lower,
            Estimate::Upp => Side::Upper,
        }
    }

    fn holds(self, estimate: f64, reference: f64) -> bool {
        match self.claimed_side() {
            Side::Lower => estimate < reference,
            Side::Upper => estimate > reference,
        }
    }
}

impl std::str::FromStr for Estimate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Estimate::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown estimate `{s}` (expected low1, low2 or upp)"
                ))
            })
    }
}

/// Left end of the proven interval on which bound `id` is strictly decreasing.
fn decreasing_branch(id: BoundId) -> f64 {
    let lo = bounds::spec(id).proven_validity.lo;
    match id {
        // x/(1+x²)·e^(−x²/2) peaks where x⁴ + 2x² − 1 = 0
        BoundId::GordonLower => lo.max((SQRT_2 - 1.0).sqrt()),
        _ => lo,
    }
}

fn log_bound_unchecked(id: BoundId, x: f64) -> f64 {
    bounds::prefactor(id, x).ln() - 0.5 * x * x
}

/// Solves `bound(x) = √(2π)·α` on the decreasing branch starting at `left`
/// (excluded) and returns the bracket end on the certified side.
fn solve_branch(
    id: BoundId,
    solve_as: BoundId,
    left: f64,
    alpha: f64,
    log_target: f64,
) -> Result<f64> {
    let g = |x: f64| log_bound_unchecked(solve_as, x) - log_target;
    let at_left = g(left);
    if at_left.is_nan() || at_left <= 0.0 {
        return Err(Error::Unattainable {
            id,
            target: (2.0 * PI).sqrt() * alpha,
        });
    }
    let mut lo = left;
    let mut hi = (2.0 * left).max(1.0);
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // bound(lo) > target ≥ bound(hi). For a lower bound L, L(lo) > M(Q⁻(α))
    // forces lo < Q⁻(α); for an upper bound U, U(hi) ≤ M(Q⁻(α)) forces
    // hi > Q⁻(α).
    Ok(match id.side() {
        Side::Lower => lo,
        Side::Upper => hi,
    })
}

/// Certified one-sided bound on `Q⁻(α)` obtained by inverting bound `id` on
/// its proven validity interval.
///
/// Lower-side bounds give a value `≤ Q⁻(α)`, upper-side bounds a value
/// `≥ Q⁻(α)`. Lower bounds that are not monotone are inverted on their
/// rightmost decreasing branch, which yields the tightest certified value.
pub fn invert_bound(id: BoundId, alpha: f64) -> Result<f64> {
    let alpha = TailProbability::new(alpha)?.get();
    let log_target = alpha.ln() + LN_SQRT_2PI;
    match id {
        BoundId::CorollaryLower => {
            // The spliced bound jumps up at √2. If the right branch reaches
            // the target, its root is the largest x with bound(x) ≥ target.
            let right = solve_branch(id, BoundId::Thm3Lower, SQRT_2, alpha, log_target);
            match right {
                Ok(x) => Ok(x),
                Err(Error::Unattainable { .. }) => {
                    let x = solve_branch(id, BoundId::BsLower, 0.0, alpha, log_target)?;
                    Ok(x.min(SQRT_2))
                }
                Err(e) => Err(e),
            }
        }
        _ => solve_branch(id, id, decreasing_branch(id), alpha, log_target),
    }
}

/// One row of the inverse comparison table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InverseRow {
    pub alpha: f64,
    pub reference: f64,
    pub est_low1: f64,
    pub est_low2: f64,
    pub est_upp: f64,
    pub cert_lower: Option<f64>,
    pub cert_upper: Option<f64>,
}

pub fn inverse_row(alpha: f64) -> Result<InverseRow> {
    let certified = |id| match invert_bound(id, alpha) {
        Ok(x) => Ok(Some(x)),
        Err(Error::Unattainable { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(InverseRow {
        alpha,
        reference: gauss::inverse_q(alpha)?,
        est_low1: estimate_low1(alpha)?,
        est_low2: estimate_low2(alpha)?,
        est_upp: estimate_upp(alpha)?,
        cert_lower: certified(BoundId::Thm3Lower)?,
        cert_upper: certified(BoundId::Thm3Upper)?,
    })
}

/// One grid point of a conjecture scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanPoint {
    pub alpha: f64,
    pub reference: Option<f64>,
    /// Per [`Estimate::ALL`]; `Err` holds the reason the point was not evaluable.
    pub estimates: [Result<f64, String>; 3],
}

impl ScanPoint {
    pub fn holds(&self, estimate: Estimate) -> Option<bool> {
        let index = Estimate::ALL.iter().position(|&e| e == estimate)?;
        let value = self.estimates[index].as_ref().ok()?;
        Some(estimate.holds(*value, self.reference?))
    }

    fn estimate(&self, estimate: Estimate) -> Option<f64> {
        let index = Estimate::ALL.iter().position(|&e| e == estimate)?;
        self.estimates[index].as_ref().ok().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub alpha: f64,
    pub estimate: f64,
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NotEvaluable {
    pub alpha: f64,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaRange {
    pub alpha_min: f64,
    pub alpha_max: f64,
}

/// Empirical status of one conjectured inequality on the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityResult {
    pub name: &'static str,
    pub holds_at: usize,
    pub violations: Vec<Violation>,
    /// Longest run of consecutive grid points on which the inequality holds.
    pub empirical_range: Option<AlphaRange>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub not_evaluable: Vec<NotEvaluable>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub grid: AlphaGrid,
    pub results: Vec<InequalityResult>,
}

impl ConjectureReport {
    pub fn result(&self, estimate: Estimate) -> &InequalityResult {
        self.results
            .iter()
            .find(|r| r.name == estimate.name())
            .expect("every estimate is reported")
    }
}

/// Evaluates the exact inverse and all three estimates on every grid point.
pub fn scan_points(grid: &AlphaGrid) -> Vec<ScanPoint> {
    grid.values()
        .into_iter()
        .map(|alpha| ScanPoint {
            alpha,
            reference: gauss::inverse_q(alpha).ok(),
            estimates: Estimate::ALL.map(|e| e.evaluate(alpha).map_err(|err| err.to_string())),
        })
        .collect()
}

/// Summarises scan points per inequality. Reports, never judges.
pub fn summarize(grid: AlphaGrid, points: &[ScanPoint]) -> ConjectureReport {
    let results = Estimate::ALL
        .into_iter()
        .map(|estimate| {
            let mut result = InequalityResult {
                name: estimate.name(),
                holds_at: 0,
                violations: Vec::new(),
                empirical_range: None,
                not_evaluable: Vec::new(),
            };
            let mut best: Option<(usize, AlphaRange)> = None;
            let mut run: Option<(usize, AlphaRange)> = None;
            for point in points {
                match (
                    point.holds(estimate),
                    point.estimate(estimate),
                    point.reference,
                ) {
                    (Some(true), _, _) => {
                        result.holds_at += 1;
                        let (len, range) = run.get_or_insert((
                            0,
                            AlphaRange {
                                alpha_min: point.alpha,
                                alpha_max: point.alpha,
                            },
                        ));
                        *len += 1;
                        range.alpha_max = point.alpha;
                        if best.is_none_or(|(b, _)| *len > b) {
                            best = Some((*len, *range));
                        }
                        continue;
                    }
                    (Some(false), Some(value), Some(reference)) => {
                        result.violations.push(Violation {
                            alpha: point.alpha,
                            estimate: value,
                            reference,
                        })
                    }
                    _ => {
                        let index = Estimate::ALL
                            .iter()
                            .position(|&e| e == estimate)
                            .unwrap_or(0);
                        let reason = match &point.estimates[index] {
                            Err(reason) => reason.clone(),
                            Ok(_) => "exact inverse unavailable".to_string(),
                        };
                        result.not_evaluable.push(NotEvaluable {
                            alpha: point.alpha,
                            reason,
                        });
                    }
                }
                run = None;
            }
            result.empirical_range = best.map(|(_, range)| range);
            result
        })
        .collect();
    ConjectureReport { grid, results }
}

/// Conjecture scan on `points_per_decade` log-spaced points per decade of
/// `[alpha_min, alpha_max]`, with `alpha_max ≤ 1e-2`.
pub fn conjecture_scan(
    alpha_min: f64,
    alpha_max: f64,
    points_per_decade: usize,
) -> Result<ConjectureReport> {
    if alpha_min.is_nan() || alpha_max.is_nan() || alpha_min >= alpha_max || alpha_max > 1e-2 {
        return Err(Error::Config(format!(
            "conjecture scan needs alpha_min < alpha_max <= 1e-2, got [{alpha_min}, {alpha_max}]"
        )));
    }
    let grid = AlphaGrid::per_decade(alpha_min, alpha_max, points_per_decade)?;
    Ok(scan_grid(grid))
}

/// Conjecture scan on an arbitrary grid.
pub fn scan_grid(grid: AlphaGrid) -> ConjectureReport {
    let points = scan_points(&grid);
    summarize(grid, &points)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // mpmath, 50 digits (tests/oracle/gen_expected.py)
    const ROWS: [(f64, f64, f64, f64, f64); 3] = [
        // alpha, reference, low1, upp, low2
        (
            1e-2,
            2.326_347_874_040_841,
            2.318_342_386_51,
            2.290_745_547_33,
            2.290_753_739_3,
        ),
        (
            1e-3,
            3.090_232_306_167_813_5,
            3.081_329_657_25,
            3.068_290_422_45,
            3.068_290_461_9,
        ),
        (
            1e-6,
            4.753_424_308_822_899,
            4.747_950_645_01,
            4.743_943_297_91,
            4.743_943_297_91,
        ),
    ];

    #[test]
    fn estimates_match_oracle() {
        for (alpha, _, low1, upp, low2) in ROWS {
            assert!(
                (estimate_low1(alpha).unwrap() - low1).abs() < 1e-10,
                "low1 at {alpha}"
            );
            assert!(
                (estimate_upp(alpha).unwrap() - upp).abs() < 1e-10,
                "upp at {alpha}"
            );
            assert!(
                (estimate_low2(alpha).unwrap() - low2).abs() < 1e-10,
                "low2 at {alpha}"
            );
        }
        assert!((estimate_low1(1e-300).unwrap() - 37.047_045_061_9).abs() < 1e-9);
    }

    #[test]
    fn estimate_domains() {
        assert!(estimate_low1(0.39).is_ok());
        assert!(estimate_low1(0.4).is_err());
        assert!(estimate_upp(0.4).is_err());
        assert!(estimate_low2(0.28).is_ok());
        assert!(estimate_low2(0.2821).is_err());
        for e in Estimate::ALL {
            assert!(matches!(e.evaluate(0.0), Err(Error::Domain { .. })));
            assert!(e.evaluate(0.6).is_err());
        }
    }

    #[test]
    fn entropy_values() {
        assert!((binary_entropy(0.5).unwrap() - LN_2).abs() < 1e-16);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let h = binary_entropy(6.283_185_3e-6).unwrap();
        assert!((h / 8.154_085_625_085_509e-5 - 1.0).abs() < 1e-14);
        for p in [0.01, 0.1, 0.3] {
            assert!((binary_entropy(p).unwrap() - binary_entropy(1.0 - p).unwrap()).abs() < 1e-14);
        }
        assert!(binary_entropy(-1e-9).is_err());
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn certified_inversion_at_one_in_a_thousand() {
        let lower = invert_bound(BoundId::Thm3Lower, 1e-3).unwrap();
        let upper = invert_bound(BoundId::Thm3Upper, 1e-3).unwrap();
        assert!((lower - 3.088_816_442_76).abs() < 1e-9);
        assert!((upper - 3.100_860_193_21).abs() < 1e-9);
        let reference = gauss::inverse_q(1e-3).unwrap();
        assert!(lower <= reference && reference <= upper);
    }

    #[test]
    fn gordon_upper_inverts_at_one_half() {
        let x = invert_bound(BoundId::GordonUpper, 0.5).unwrap();
        assert!((x - 0.647_142_819_804_785).abs() < 1e-10);
        assert!(x >= gauss::inverse_q(0.5).unwrap());
    }

    #[test]
    fn unattainable_targets() {
        assert!(matches!(
            invert_bound(BoundId::Thm3Upper, 0.5),
            Err(Error::Unattainable { .. })
        ));
        assert!(matches!(
            invert_bound(BoundId::Thm3Lower, 0.078),
            Err(Error::Unattainable { .. })
        ));
        assert!(invert_bound(BoundId::Thm3Lower, 0.0778).is_ok());
        // x/(1+x²)·e^(−x²/2) never exceeds ~0.37
        assert!(matches!(
            invert_bound(BoundId::GordonLower, 0.2),
            Err(Error::Unattainable { .. })
        ));
    }

    #[test]
    fn every_bound_certifies_its_side() {
        for alpha in [0.4, 0.1, 0.03, 1e-3, 1e-8, 1e-40, 1e-300] {
            let reference = gauss::inverse_q(alpha).unwrap();
            for id in BoundId::ALL {
                match invert_bound(id, alpha) {
                    Ok(x) => match id.side() {
                        Side::Lower => {
                            assert!(x <= reference, "{id} at {alpha}: {x} > {reference}")
                        }
                        Side::Upper => {
                            assert!(x >= reference, "{id} at {alpha}: {x} < {reference}")
                        }
                    },
                    Err(Error::Unattainable { .. }) => {}
                    Err(e) => panic!("{id} at {alpha}: {e}"),
                }
            }
        }
    }

    #[test]
    fn spliced_lower_uses_left_branch_in_the_gap() {
        // Targets above thm3_lower(√2) but below bs_lower(0) come from the left branch.
        let alpha = 0.1;
        let x = invert_bound(BoundId::CorollaryLower, alpha).unwrap();
        assert!(x <= SQRT_2);
        assert_eq!(x, invert_bound(BoundId::BsLower, alpha).unwrap());
        let alpha = 1e-3;
        assert_eq!(
            invert_bound(BoundId::CorollaryLower, alpha).unwrap(),
            invert_bound(BoundId::Thm3Lower, alpha).unwrap()
        );
    }

    #[test]
    fn small_scan_counts() {
        let report = conjecture_scan(1e-4, 1e-3, 1).unwrap();
        assert_eq!(report.grid.points, 2);
        for r in &report.results {
            assert_eq!(r.holds_at + r.violations.len(), 2);
        }
        assert_eq!(report.result(Estimate::Low1).holds_at, 2);
        assert_eq!(report.result(Estimate::Upp).violations.len(), 2);
        assert!(report.result(Estimate::Upp).empirical_range.is_none());
        assert!(conjecture_scan(1e-3, 1e-4, 1).is_err());
        assert!(conjecture_scan(1e-4, 0.02, 1).is_err());
    }

    #[test]
    fn inverse_row_fields() {
        let row = inverse_row(1e-3).unwrap();
        assert!((row.reference - 3.090_232_3).abs() < 1e-6);
        assert!(row.cert_lower.unwrap() <= row.reference);
        assert!(row.cert_upper.unwrap() >= row.reference);
    }
}
