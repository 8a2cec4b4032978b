//! Reference evaluation of the Gaussian tail integral
//! `M(x) = ∫ₓ^∞ e^(−u²/2) du`, the Q-function `Q(x) = M(x)/√(2π)`, Mill's
//! ratio `R(x) = e^(x²/2)·M(x)` and the exact inverse of `Q`.
//!
//! Two evaluators of `R(x)` are provided and cross-checked in the tests:
//!
//! * [`mills_ratio_series_cf`] uses the power series of `∫₀ˣ e^(−u²/2) du`
//!   below [`SERIES_CUTOFF`] and Laplace's continued fraction above it.
//!   This is the fast path behind every public operation.
//! * [`mills_ratio_quadrature`] integrates `e^(−xt − t²/2)` over `t ≥ 0`
//!   (the tail integral after the shift `u = x + t`) with adaptive
//!   Gauss–Kronrod quadrature.
//!
//! Large arguments are handled through `R(x)` and logarithms; `e^(−x²/2)`
//! underflows double precision near `x ≈ 38.6`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature;

/// Largest abscissa accepted by the tail evaluators.
pub const X_MAX: f64 = 40.0;

/// Smallest tail probability accepted by [`inverse_q`].
pub const ALPHA_MIN: f64 = 1e-300;

/// `√(π/2) = M(0) = R(0)`.
pub const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;

/// `ln √(2π)`.
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this abscissa the series evaluator is used, above it the continued fraction.
pub const SERIES_CUTOFF: f64 = 2.0;

const CF_MAX_TERMS: usize = 20_000;

/// A validated evaluation point `0 ≤ x ≤ 40`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Abscissa(f64);

impl Abscissa {
    pub fn new(x: f64) -> Result<Self> {
        if x.is_finite() && (0.0..=X_MAX).contains(&x) {
            Ok(Self(x))
        } else {
            Err(Error::Domain {
                what: "x",
                value: x,
                domain: "[0, 40]",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// A validated upper-tail probability `0 < α ≤ 0.5`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TailProbability(f64);

impl TailProbability {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 0.5 {
            Ok(Self(alpha))
        } else {
            Err(Error::Domain {
                what: "alpha",
                value: alpha,
                domain: "(0, 0.5]",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The tail integral `M(x)` or the tail probability `Q(x)`, in both linear
/// and logarithmic form.
///
/// `linear` may underflow to zero (or a subnormal) for `x` beyond ~37;
/// `log_value` stays finite on the whole supported domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailValue {
    pub linear: f64,
    pub log_value: f64,
    /// `true` for `Q(x)`, `false` for `M(x)`.
    pub normalized: bool,
}

/// `e^(−x²/2)` with `x²` split into an exactly representable head and a
/// small tail so the exponent carries no rounding error.
pub fn gaussian_kernel(x: f64) -> f64 {
    let head = (x * 16.0).trunc() / 16.0;
    let tail = (x - head) * (x + head);
    (-0.5 * head * head).exp() * (-0.5 * tail).exp()
}

/// `−x²/2` evaluated as head + tail, matching [`gaussian_kernel`].
fn log_gaussian_kernel(x: f64) -> (f64, f64) {
    let head = (x * 16.0).trunc() / 16.0;
    (-0.5 * head * head, -0.5 * (x - head) * (x + head))
}

fn series_mills_ratio(x: f64) -> f64 {
    // ∫₀ˣ e^(−u²/2) du = e^(−x²/2) Σ x^(2n+1) / (2n+1)!!
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 1.0;
    while term > sum * 1e-17 {
        n += 2.0;
        term *= x2 / n;
        sum += term;
    }
    SQRT_PI_OVER_2 * (0.5 * x2).exp() - sum
}

fn continued_fraction_mills_ratio(x: f64) -> f64 {
    // R(x) = 1/(x + 1/(x + 2/(x + 3/(x + …)))), modified Lentz.
    const TINY: f64 = 1e-300;
    let mut f = x.max(TINY);
    let mut c = f;
    let mut d = 0.0;
    for n in 1..=CF_MAX_TERMS {
        let a = n as f64;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() <= 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// Mill's ratio by series / continued fraction, for any finite `x ≥ 0`.
///
/// No upper cap is applied; callers that need the `[0, 40]` domain check go
/// through [`mills_ratio`].
pub fn mills_ratio_series_cf(x: f64) -> f64 {
    debug_assert!(x >= 0.0 && x.is_finite());
    if x < SERIES_CUTOFF {
        series_mills_ratio(x)
    } else {
        continued_fraction_mills_ratio(x)
    }
}

/// Mill's ratio by adaptive quadrature of `∫₀^∞ e^(−xt − t²/2) dt`.
pub fn mills_ratio_quadrature(x: f64) -> Result<f64> {
    let x = Abscissa::new(x)?.get();
    // Past xT + T²/2 = 60 the integrand is below e⁻⁶⁰ and its remaining mass
    // is under e⁻⁶⁰/(x + T), far below the ~1/(x+1) size of R(x).
    let upper = -x + (x * x + 120.0).sqrt();
    let integral = quadrature::integrate(|t| (-t * (x + 0.5 * t)).exp(), 0.0, upper, 0.0, 1e-14)?;
    Ok(integral.value)
}

/// Mill's ratio `R(x) = e^(x²/2) ∫ₓ^∞ e^(−u²/2) du`.
pub fn mills_ratio(x: f64) -> Result<f64> {
    let x = Abscissa::new(x)?.get();
    Ok(mills_ratio_series_cf(x))
}

fn tail_from_ratio(x: f64, ratio: f64) -> TailValue {
    let (head, tail) = log_gaussian_kernel(x);
    TailValue {
        linear: ratio * gaussian_kernel(x),
        log_value: head + (ratio.ln() + tail),
        normalized: false,
    }
}

/// The tail integral `M(x)` on `[0, 40]`.
pub fn tail_integral(x: f64) -> Result<TailValue> {
    let x = Abscissa::new(x)?.get();
    Ok(tail_from_ratio(x, mills_ratio_series_cf(x)))
}

/// The Q-function `Q(x) = M(x)/√(2π)` on `[0, 40]`.
///
/// Returned as a [`TailValue`] because `Q(x)` underflows before `x = 40`;
/// the logarithm is always usable.
pub fn q_value(x: f64) -> Result<TailValue> {
    let m = tail_integral(x)?;
    Ok(TailValue {
        linear: m.linear / (2.0 * PI).sqrt(),
        log_value: m.log_value - LN_SQRT_2PI,
        normalized: true,
    })
}

/// `ln Q(x)` without the `x ≤ 40` cap, for root finding.
fn log_q_unchecked(x: f64) -> f64 {
    let (head, tail) = log_gaussian_kernel(x);
    head + ((mills_ratio_series_cf(x).ln() - LN_SQRT_2PI) + tail)
}

/// Exact inverse of the Q-function for `1e-300 ≤ α ≤ 0.5`.
///
/// Solves `ln Q(x) = ln α`. The bracket starts at `[0, s]` with the
/// asymptotic seed `s = √(−ln(2πα²))` and is doubled until it encloses the
/// root; Newton steps on the log equation (whose derivative is `−1/R(x)`)
/// are taken whenever they stay inside the bracket, bisection otherwise.
pub fn inverse_q(alpha: f64) -> Result<f64> {
    let alpha = TailProbability::new(alpha)?.get();
    if alpha < ALPHA_MIN {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha,
            domain: "[1e-300, 0.5]",
        });
    }
    let target = alpha.ln();
    let f = |x: f64| log_q_unchecked(x) - target;
    if f(0.0) <= 0.0 {
        return Ok(0.0);
    }

    let log_p = (2.0 * PI).ln() + 2.0 * target;
    let seed = if log_p < 0.0 { (-log_p).sqrt() } else { 0.5 };
    let mut lo = 0.0;
    let mut hi = seed.max(0.5);
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }

    let mut x = seed.clamp(lo, hi);
    if x <= lo || x >= hi {
        x = 0.5 * (lo + hi);
    }
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x + fx * mills_ratio_series_cf(x);
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * next.abs() || hi - lo <= 4.0 * f64::EPSILON * hi
        {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NoConvergence {
        method: "inverse Q root finding",
        iterations: 200,
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Frozen from tests/oracle/gen_expected.py (mpmath, 50 digits).
    const RATIO: [(f64, f64); 8] = [
        (0.0, 1.253_314_137_315_500_3),
        (0.5, 0.876_364_456_453_692_35),
        (1.0, 0.655_679_542_418_798_47),
        (2.0, 0.421_369_229_288_054_47),
        (4.0, 0.236_652_382_913_560_67),
        (10.0, 0.099_028_596_471_731_921),
        (30.0, 0.033_296_419_072_497_213),
        (40.0, 0.024_984_404_205_720_571),
    ];

    #[test]
    fn both_evaluators_match_frozen_ratios() {
        for (x, expected) in RATIO {
            assert!(
                rel(mills_ratio(x).unwrap(), expected) < 1e-13,
                "series/cf at {x}"
            );
            assert!(
                rel(mills_ratio_quadrature(x).unwrap(), expected) < 1e-13,
                "quadrature at {x}"
            );
        }
    }

    #[test]
    fn evaluator_switch_is_seamless() {
        let below = mills_ratio_series_cf(SERIES_CUTOFF - 1e-12);
        let above = mills_ratio_series_cf(SERIES_CUTOFF);
        assert!(rel(below, above) < 1e-11);
        assert!(
            rel(
                series_mills_ratio(SERIES_CUTOFF),
                continued_fraction_mills_ratio(SERIES_CUTOFF)
            ) < 1e-13
        );
    }

    #[test]
    fn mills_ratio_at_ten_sits_below_first_asymptotic_term() {
        let r = mills_ratio(10.0).unwrap();
        assert!(r > 0.0990 && r < 0.1000);
        let series = 1.0 / 10.0 - 1.0 / 1e3 + 3.0 / 1e5;
        assert!((r - series).abs() < 2e-6);
    }

    #[test]
    fn tail_values() {
        let m0 = tail_integral(0.0).unwrap();
        assert!(rel(m0.linear, SQRT_PI_OVER_2) < 1e-15);
        assert!(!m0.normalized);
        assert!(rel(tail_integral(1.0).unwrap().linear, 0.397_689_745_423_351_45) < 1e-13);
        assert!(
            rel(
                tail_integral(2.0).unwrap().linear,
                0.057_026_123_992_892_048
            ) < 1e-13
        );
        let m40 = tail_integral(40.0).unwrap();
        assert_eq!(m40.linear, 0.0);
        assert!(rel(m40.log_value, -803.689_503_480_549_1) < 1e-14);
        assert!(
            rel(
                tail_integral(8.0).unwrap().log_value,
                -34.094_498_626_709_877
            ) < 1e-14
        );
    }

    #[test]
    fn q_values() {
        let q0 = q_value(0.0).unwrap();
        assert!((q0.linear - 0.5).abs() < 1e-15);
        assert!(q0.normalized);
        assert!(rel(q_value(2.0).unwrap().linear, 0.022_750_131_948_179_207) < 1e-13);
        let near = q_value(3.090_232_3).unwrap().linear;
        assert!(rel(near, 0.001_000_000_020_767_584) < 1e-12);
    }

    #[test]
    fn inverse_values() {
        assert_eq!(inverse_q(0.5).unwrap(), 0.0);
        assert!(rel(inverse_q(1e-3).unwrap(), 3.090_232_306_167_813_5) < 1e-13);
        assert!(rel(inverse_q(1e-6).unwrap(), 4.753_424_308_822_899) < 1e-13);
        assert!(rel(inverse_q(1e-300).unwrap(), 37.047_096_299_361_2) < 1e-13);
    }

    #[test]
    fn domain_errors() {
        for bad in [-1e-9, -1.0, 40.000_001, f64::NAN, f64::INFINITY] {
            assert!(
                matches!(mills_ratio(bad), Err(Error::Domain { .. })),
                "{bad}"
            );
            assert!(
                matches!(tail_integral(bad), Err(Error::Domain { .. })),
                "{bad}"
            );
            assert!(matches!(q_value(bad), Err(Error::Domain { .. })), "{bad}");
        }
        for bad in [0.0, -0.1, 0.500_001, 1.0, 1e-301, f64::NAN] {
            assert!(matches!(inverse_q(bad), Err(Error::Domain { .. })), "{bad}");
        }
    }

    #[test]
    fn kernel_is_exact_enough_near_underflow() {
        // e^(−37²/2) = e^(−684.5)
        let k = gaussian_kernel(37.0);
        assert!(rel(k, (-684.5f64).exp()) < 1e-15);
        assert!(gaussian_kernel(39.0) == 0.0 || gaussian_kernel(39.0) < 1e-320);
    }
}
