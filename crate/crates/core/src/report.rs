//! Table and report generation for the command line front end.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{self, BoundId};
use crate::error::{Error, Result};
use crate::gauss;
use crate::grid::{step_grid, AlphaGrid};
use crate::inverse::{self, Estimate};
use crate::verify::{self, VerifyConfig, VerifyOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Parameters shared by the table-producing commands. Each command reads
/// the fields it needs and validates them before computing anything.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub points_per_decade: usize,
    pub bounds: Vec<BoundId>,
    /// Divide bound columns by the reference `M(x)`.
    pub normalized: bool,
    pub grid_points: usize,
}

impl Default for CommandConfig {
    fn default() -> Self {
        Self::figure(1)
    }
}

impl CommandConfig {
    /// Preset ranges for the four standard figures. Figures 1–3 are bound
    /// comparisons, figure 4 is the inverse table.
    pub fn figure(n: u8) -> Self {
        let base = Self {
            x_min: 0.05,
            x_max: 1.5,
            step: 0.05,
            alpha_min: 1e-10,
            alpha_max: 1e-2,
            points_per_decade: 10,
            bounds: vec![
                BoundId::GordonLower,
                BoundId::GordonUpper,
                BoundId::Thm3Lower,
                BoundId::Thm3Upper,
            ],
            normalized: false,
            grid_points: 2000,
        };
        match n {
            2 => Self {
                x_min: 1.5,
                x_max: 6.0,
                step: 0.1,
                ..base
            },
            3 => Self {
                x_min: 0.5,
                x_max: 6.0,
                step: 0.1,
                bounds: vec![
                    BoundId::BsLower,
                    BoundId::BsUpper,
                    BoundId::Thm3Lower,
                    BoundId::Thm3Upper,
                ],
                normalized: true,
                ..base
            },
            _ => base,
        }
    }

    fn validate_x_range(&self) -> Result<()> {
        if !(self.x_min > 0.0 && self.x_max <= gauss::X_MAX) {
            return Err(Error::Config(format!(
                "x range [{}, {}] must lie within (0, 40]; set --x-min above 0 and --x-max at most 40",
                self.x_min, self.x_max
            )));
        }
        if self.x_min.is_nan() || self.x_max.is_nan() || self.x_min >= self.x_max {
            return Err(Error::Config(format!(
                "--x-min ({}) must be smaller than --x-max ({})",
                self.x_min, self.x_max
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::Config(format!(
                "--step must be positive, got {}",
                self.step
            )));
        }
        if self.bounds.is_empty() {
            return Err(Error::Config(
                "no bounds selected; pass e.g. --bounds gordon,thm3".into(),
            ));
        }
        Ok(())
    }

    fn validate_alpha_range(&self) -> Result<AlphaGrid> {
        if !(self.alpha_min >= 1e-15 && self.alpha_max <= 1e-2) {
            return Err(Error::Config(format!(
                "alpha range [{:e}, {:e}] must lie within [1e-15, 1e-2]",
                self.alpha_min, self.alpha_max
            )));
        }
        if self.alpha_min > self.alpha_max {
            return Err(Error::Config(format!(
                "--alpha-min ({:e}) must not exceed --alpha-max ({:e})",
                self.alpha_min, self.alpha_max
            )));
        }
        if self.points_per_decade == 0 {
            return Err(Error::Config(
                "--points-per-decade must be at least 1".into(),
            ));
        }
        AlphaGrid::per_decade(self.alpha_min, self.alpha_max, self.points_per_decade)
    }
}

/// Formats a float as the shortest decimal that parses back to the same value.
pub fn format_number(v: f64) -> String {
    if v.is_finite() {
        ryu::Buffer::new().format_finite(v).to_string()
    } else if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Number(f64),
    Flag(bool),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Number(v) => format_number(*v),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Number(v) => Some(*v),
            _ => None,
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Number)
    }
}

/// A rectangular table of numeric and boolean cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl CsvTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity must match the header"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("tables serialize");
        out.push('\n');
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Reference tail integral and selected bounds on an evenly stepped x grid.
///
/// Columns: `x`, `reference`, then `<bound>` and `<bound>_valid` for each
/// selected bound. In normalized mode the bound columns hold `bound/M(x)`.
pub fn cmd_bounds_table(config: &CommandConfig) -> Result<CsvTable> {
    config.validate_x_range()?;
    let mut columns = vec!["x".to_string(), "reference".to_string()];
    for id in &config.bounds {
        columns.push(id.name().to_string());
        columns.push(format!("{}_valid", id.name()));
    }
    let mut table = CsvTable::new(columns);
    for x in step_grid(config.x_min, config.x_max, config.step) {
        let row = bounds::compare_at(x, &config.bounds)?;
        let mut cells = vec![Cell::Number(x), Cell::Number(row.reference)];
        for id in &config.bounds {
            let entry = row
                .get(*id)
                .expect("compare_at fills every requested bound");
            let value = if config.normalized {
                1.0 + entry.relative_error
            } else {
                entry.value
            };
            cells.push(Cell::Number(value));
            cells.push(Cell::Flag(entry.in_validity));
        }
        table.push(cells);
    }
    Ok(table)
}

/// Exact inverse, the three closed-form estimates and the certified inverse
/// bounds on a log-spaced α grid.
pub fn cmd_inverse_table(config: &CommandConfig) -> Result<CsvTable> {
    let grid = config.validate_alpha_range()?;
    let mut table = CsvTable::new(
        [
            "alpha",
            "reference",
            "est_low1",
            "est_low2",
            "est_upp",
            "cert_lower",
            "cert_upper",
        ]
        .map(String::from)
        .to_vec(),
    );
    for alpha in grid.values() {
        let row = inverse::inverse_row(alpha)?;
        table.push(vec![
            Cell::Number(row.alpha),
            Cell::Number(row.reference),
            Cell::Number(row.est_low1),
            Cell::Number(row.est_low2),
            Cell::Number(row.est_upp),
            row.cert_lower.into(),
            row.cert_upper.into(),
        ]);
    }
    Ok(table)
}

/// Conjecture scan, serialized as a JSON report or as one CSV row per grid point.
pub fn cmd_conjecture_scan(config: &CommandConfig, format: Format) -> Result<String> {
    let grid = config.validate_alpha_range()?;
    if config.alpha_min.is_nan()
        || config.alpha_max.is_nan()
        || config.alpha_min >= config.alpha_max
    {
        return Err(Error::Config(
            "conjecture scan needs --alpha-min < --alpha-max".into(),
        ));
    }
    let points = inverse::scan_points(&grid);
    match format {
        Format::Json => {
            let report = inverse::summarize(grid, &points);
            let mut out = serde_json::to_string_pretty(&report).expect("reports serialize");
            out.push('\n');
            Ok(out)
        }
        Format::Csv => {
            let mut columns = vec!["alpha".to_string(), "reference".to_string()];
            columns.extend(Estimate::ALL.iter().map(|e| format!("est_{}", e.name())));
            columns.extend(Estimate::ALL.iter().map(|e| format!("{}_holds", e.name())));
            let mut table = CsvTable::new(columns);
            for point in &points {
                let mut cells = vec![Cell::Number(point.alpha), point.reference.into()];
                cells.extend(
                    point
                        .estimates
                        .iter()
                        .map(|e| Cell::from(e.as_ref().ok().copied())),
                );
                cells.extend(
                    Estimate::ALL
                        .iter()
                        .map(|&e| point.holds(e).map_or(Cell::Empty, Cell::Flag)),
                );
                table.push(cells);
            }
            Ok(table.to_csv())
        }
    }
}

/// Runs the invariant suite on `config.grid_points` abscissae.
pub fn cmd_verify(config: &CommandConfig) -> Result<VerifyOutcome> {
    if config.grid_points < 2 {
        return Err(Error::Config("--grid-points must be at least 2".into()));
    }
    verify::run(&VerifyConfig {
        grid_points: config.grid_points,
        ..VerifyConfig::default()
    })
}

/// Human-readable one-line-per-field dump of a comparison row.
pub fn describe_comparison(row: &bounds::ComparisonRow) -> String {
    let mut out = format!(
        "x = {}\nreference M(x) = {} (ln = {})\n",
        format_number(row.x),
        format_number(row.reference),
        format_number(row.log_reference)
    );
    for (id, e) in &row.entries {
        let _ = writeln!(
            out,
            "{:<16} {:<24} rel_err = {:<24} valid = {:<5} holds = {}",
            id.name(),
            format_number(e.value),
            format_number(e.relative_error),
            e.in_validity,
            e.holds
        );
    }
    let _ = writeln!(out, "ordering_ok = {}", row.ordering_ok);
    out
}
