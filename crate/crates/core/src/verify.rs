//! The invariant suite behind `mills verify`.
//!
//! Each family checks one proven property on a grid and collects
//! every failing point. The conjectured inverse orderings are scanned too,
//! but only reported.

use std::f64::consts::SQRT_2;
use std::fmt::Write as _;

use crate::bounds::{self, BoundId};
use crate::error::Result;
use crate::gauss;
use crate::grid::{mixed_grid, AlphaGrid};
use crate::inverse::{self, ConjectureReport, Estimate};

/// Source of bound prefactors. Swapping it lets tests inject a corrupted
/// formula and watch the suite fail.
pub trait BoundFormulas {
    fn prefactor(&self, id: BoundId, x: f64) -> f64;
}

/// The catalogued formulas from [`bounds::prefactor`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CatalogFormulas;

impl BoundFormulas for CatalogFormulas {
    fn prefactor(&self, id: BoundId, x: f64) -> f64 {
        bounds::prefactor(id, x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Abscissa grid size on `(0, 40]`.
    pub grid_points: usize,
    /// Number of log-spaced tail probabilities in `[1e-12, 1e-2]`.
    pub alpha_points: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_points: 2000,
            alpha_points: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    /// The abscissa or tail probability at which the check failed.
    pub at: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyResult {
    pub name: &'static str,
    pub description: &'static str,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl FamilyResult {
    fn new(name: &'static str, description: &'static str) -> Self {
        Self {
            name,
            description,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, at: f64, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                at,
                detail: detail(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub families: Vec<FamilyResult>,
    pub conjecture: ConjectureReport,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }

    /// 0 when every family passed, 1 otherwise. Conjecture results never
    /// enter into it.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for family in &self.families {
            let status = if family.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status}  {:<28} {:>6} checks  {:>4} failures  {}",
                family.name,
                family.checked,
                family.failures.len(),
                family.description
            );
        }
        let failing: Vec<_> = self
            .families
            .iter()
            .flat_map(|f| f.failures.iter().map(move |fail| (f.name, fail)))
            .take(10)
            .collect();
        if !failing.is_empty() {
            let _ = writeln!(out, "\nfirst {} failures:", failing.len());
            for (name, fail) in failing {
                let _ = writeln!(out, "  {name} at {}: {}", fail.at, fail.detail);
            }
        }
        let _ = writeln!(
            out,
            "\nconjectured inverse orderings on {} points in [{:e}, {:e}] (informational):",
            self.conjecture.grid.points,
            self.conjecture.grid.alpha_min,
            self.conjecture.grid.alpha_max
        );
        for r in &self.conjecture.results {
            let _ = writeln!(
                out,
                "  {:<5} holds at {:>4}, violated at {:>4}",
                r.name,
                r.holds_at,
                r.violations.len()
            );
        }
        let verdict = if self.passed() {
            "all invariant families hold"
        } else {
            "invariant violations found"
        };
        let _ = writeln!(out, "\n{verdict}");
        out
    }
}

/// Runs all nine invariant families with the catalogued formulas.
pub fn run(config: &VerifyConfig) -> Result<VerifyOutcome> {
    run_with(config, &CatalogFormulas)
}

/// Runs all nine invariant families using `formulas` for every bound.
pub fn run_with(config: &VerifyConfig, formulas: &dyn BoundFormulas) -> Result<VerifyOutcome> {
    let xs = mixed_grid(config.grid_points.max(2), gauss::X_MAX);
    let ratios: Vec<f64> = xs
        .iter()
        .map(|&x| gauss::mills_ratio(x))
        .collect::<Result<_>>()?;
    let threshold = bounds::crossover_constant();
    let p = |id, x| formulas.prefactor(id, x);

    let mut oracle = FamilyResult::new(
        "oracle_agreement",
        "series/continued fraction vs quadrature, inverse round trip",
    );
    for (&x, &r) in xs.iter().zip(&ratios) {
        let q = gauss::mills_ratio_quadrature(x)?;
        oracle.check(((r - q) / q).abs() <= 1e-11, x, || {
            format!("R = {r}, quadrature = {q}")
        });
        if (0.1..=8.0).contains(&x) {
            let back = gauss::inverse_q(gauss::q_value(x)?.linear)?;
            oracle.check((back - x).abs() <= 1e-8, x, || {
                format!("inverse_q(q_value(x)) = {back}")
            });
        }
    }

    let sandwich = |name, description, lower: BoundId, upper: BoundId| {
        let mut family = FamilyResult::new(name, description);
        for (&x, &r) in xs.iter().zip(&ratios) {
            let (l, u) = (p(lower, x), p(upper, x));
            family.check(l < r, x, || format!("{lower} prefactor {l} >= R {r}"));
            family.check(r < u, x, || format!("{upper} prefactor {u} <= R {r}"));
        }
        family
    };
    let gordon = sandwich(
        "gordon_sandwich",
        "x/(1+x^2) < R(x) < 1/x",
        BoundId::GordonLower,
        BoundId::GordonUpper,
    );
    let bs = sandwich(
        "birnbaum_sampford_sandwich",
        "Birnbaum lower and Sampford upper bounds",
        BoundId::BsLower,
        BoundId::BsUpper,
    );

    let mut refined = FamilyResult::new(
        "refined_sandwich",
        "1/sqrt(1+x^2) above R past 0.7862, (1+x^2)/(x(2+x^2)) below past sqrt 2",
    );
    for (&x, &r) in xs.iter().zip(&ratios) {
        if x >= threshold {
            let u = p(BoundId::Thm3Upper, x);
            refined.check(u > r, x, || format!("thm3_upper prefactor {u} <= R {r}"));
        }
        if x >= SQRT_2 {
            let l = p(BoundId::Thm3Lower, x);
            refined.check(l < r, x, || format!("thm3_lower prefactor {l} >= R {r}"));
        }
    }

    let mut tightness = FamilyResult::new(
        "tightness_ordering",
        "refined bounds vs Gordon and Birnbaum-Sampford",
    );
    for &x in &xs {
        let (gl, gu) = (p(BoundId::GordonLower, x), p(BoundId::GordonUpper, x));
        let (tl, tu) = (p(BoundId::Thm3Lower, x), p(BoundId::Thm3Upper, x));
        let (bl, bu) = (p(BoundId::BsLower, x), p(BoundId::BsUpper, x));
        tightness.check(tl > gl, x, || {
            format!("thm3_lower {tl} <= gordon_lower {gl}")
        });
        tightness.check(tu < gu, x, || {
            format!("thm3_upper {tu} >= gordon_upper {gu}")
        });
        if x > SQRT_2 {
            tightness.check(tl > bl, x, || format!("thm3_lower {tl} <= bs_lower {bl}"));
        }
        if x > threshold {
            tightness.check(bu < tu, x, || format!("bs_upper {bu} >= thm3_upper {tu}"));
        }
    }

    let spliced = sandwich(
        "spliced_sandwich",
        "best-of lower bound spliced at sqrt 2, Sampford upper",
        BoundId::CorollaryLower,
        BoundId::CorollaryUpper,
    );

    let mut identity = FamilyResult::new("integral_identity", "|identity residual| <= 1e-10");
    for x in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let r = bounds::identity_residual(x)?;
        identity.check(r.abs() <= 1e-10, x, || format!("residual {r}"));
    }

    let mut asymptotic = FamilyResult::new(
        "asymptotic_ratio",
        "R(x) sqrt(1+x^2) increases to 1 within 0.6/x^2",
    );
    let mut previous: Option<(f64, f64)> = None;
    for &x in xs.iter().filter(|&&x| x >= 2.0) {
        let a = bounds::asymptotic_ratio(x)?;
        if let Some((px, pa)) = previous {
            asymptotic.check(a > pa, x, || {
                format!("ratio {a} not above {pa} at x = {px}")
            });
        }
        if x >= 5.0 {
            let limit = 1.2 / (2.0 * x * x);
            asymptotic.check((a - 1.0).abs() <= limit, x, || {
                format!("|ratio - 1| = {} > {limit}", (a - 1.0).abs())
            });
        }
        previous = Some((x, a));
    }

    let mut certified = FamilyResult::new(
        "certified_inverse",
        "inverted lower bound <= Q^-1 <= inverted upper bound",
    );
    let alphas = AlphaGrid::with_points(1e-12, 1e-2, config.alpha_points.max(2))?;
    for alpha in alphas.values() {
        let reference = gauss::inverse_q(alpha)?;
        let lower = inverse::invert_bound(BoundId::Thm3Lower, alpha)?;
        let upper = inverse::invert_bound(BoundId::Thm3Upper, alpha)?;
        certified.check(lower <= reference && reference <= upper, alpha, || {
            format!("{lower} <= {reference} <= {upper} fails")
        });
    }

    let conjecture = inverse::scan_grid(AlphaGrid::with_points(1e-12, 1e-2, 100)?);
    debug_assert_eq!(conjecture.results.len(), Estimate::ALL.len());

    Ok(VerifyOutcome {
        families: vec![
            oracle, gordon, bs, refined, tightness, spliced, identity, asymptotic, certified,
        ],
        conjecture,
    })
}
