//! Report types emitted by every subcommand, and their three renderings.
//!
//! Integers and rationals travel as decimal strings (`"7"`, `"1275/2401"`)
//! so that JSON consumers never lose precision.

use std::fmt::Write as _;

use lmlab::bounds::{CriterionOutcome, Existence};
use lmlab::lattice::Verdict;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub trait Report: Serialize {
    fn text(&self) -> String;
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

pub fn render<R: Report>(report: &R, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => report.text(),
        Format::Json => serde_json::to_string(report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(report.csv_header())?;
            for row in report.csv_rows() {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("{}", e.error()))?;
            let mut out = String::from_utf8(bytes)?;
            // println! adds the final newline
            out.truncate(out.trim_end_matches('\n').len());
            out
        }
    })
}

fn opt(s: &Option<String>) -> String {
    s.clone().unwrap_or_default()
}

fn pair(p: &Option<(String, String)>) -> String {
    p.as_ref().map(|(a, b)| format!("{a} ~ {b}")).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallReport {
    pub volume: String,
}

impl Report for BallReport {
    fn text(&self) -> String {
        self.volume.clone()
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["volume"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.volume.clone()]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub count: String,
    pub vectors: Vec<String>,
}

impl Report for EnumerateReport {
    fn text(&self) -> String {
        self.vectors.join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["vector"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.vectors.iter().map(|v| vec![v.clone()]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistReport {
    pub distance: String,
}

impl Report for DistReport {
    fn text(&self) -> String {
        self.distance.clone()
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["distance"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![self.distance.clone()]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub lattice: String,
    pub mode: String,
    pub verdict: Verdict,
    pub witness: Option<(String, String)>,
    pub volume: String,
    pub index: String,
    pub density: String,
}

impl Report for LatticeReport {
    fn text(&self) -> String {
        let mut s = format!(
            "verdict: {}\nvolume: {}\nindex: {}\ndensity: {}",
            self.verdict, self.volume, self.index, self.density
        );
        if let Some((a, b)) = &self.witness {
            write!(s, "\nwitness: {a} ~ {b}").unwrap();
        }
        s
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["lattice", "mode", "verdict", "witness", "volume", "index", "density"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.lattice.clone(),
            self.mode.clone(),
            self.verdict.to_string(),
            pair(&self.witness),
            self.volume.clone(),
            self.index.clone(),
            self.density.clone(),
        ]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub window: String,
    pub translates: String,
    pub disjoint: bool,
    pub witness: Option<String>,
}

impl Report for WindowReport {
    fn text(&self) -> String {
        let mut s = format!(
            "disjoint: {}\ntranslates: {}\nwindow: {}",
            self.disjoint, self.translates, self.window
        );
        if let Some(w) = &self.witness {
            write!(s, "\nwitness: {w}").unwrap();
        }
        s
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["window", "translates", "disjoint", "witness"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.window.clone(),
            self.translates.clone(),
            self.disjoint.to_string(),
            opt(&self.witness),
        ]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub window: String,
    pub estimate: String,
    pub estimate_decimal: String,
    /// Sandwich valid for every tiling by the ball.
    pub tiling_lower: String,
    pub tiling_upper: String,
    /// Present only for lattices: the Hermite-box sandwich and the exact density.
    pub lattice_lower: Option<String>,
    pub lattice_upper: Option<String>,
    pub lattice_density: Option<String>,
}

impl Report for DensityReport {
    fn text(&self) -> String {
        let mut s = format!(
            "estimate: {} ({})\ntiling sandwich: [{}, {}]",
            self.estimate, self.estimate_decimal, self.tiling_lower, self.tiling_upper
        );
        if let (Some(lo), Some(hi)) = (&self.lattice_lower, &self.lattice_upper) {
            write!(s, "\nlattice sandwich: [{lo}, {hi}]").unwrap();
        }
        if let Some(d) = &self.lattice_density {
            write!(s, "\nlattice density: {d}").unwrap();
        }
        s
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec![
            "window",
            "estimate",
            "estimate_decimal",
            "tiling_lower",
            "tiling_upper",
            "lattice_lower",
            "lattice_upper",
            "lattice_density",
        ]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.window.clone(),
            self.estimate.clone(),
            self.estimate_decimal.clone(),
            self.tiling_lower.clone(),
            self.tiling_upper.clone(),
            opt(&self.lattice_lower),
            opt(&self.lattice_upper),
            opt(&self.lattice_density),
        ]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SearchReport {
    pub lattices: Vec<String>,
}

impl Report for SearchReport {
    fn text(&self) -> String {
        self.lattices.join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["lattice"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.lattices.iter().map(|l| vec![l.clone()]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub n: String,
    pub e: String,
    pub s: String,
    pub verdict: Existence,
    pub lattice_excluded: bool,
    pub criteria: Vec<CriterionOutcome>,
}

impl Report for ClassifyReport {
    fn text(&self) -> String {
        let mut s = format!(
            "({}, {}, {}): {}\nlattice excluded: {}",
            self.n, self.e, self.s, self.verdict, self.lattice_excluded
        );
        for c in &self.criteria {
            write!(s, "\n  {}: {} ({})", c.name, c.status, c.detail).unwrap();
        }
        s
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "e", "s", "criterion", "scope", "status", "detail"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.criteria
            .iter()
            .map(|c| {
                let scope = serde_json::to_value(c.scope).unwrap();
                vec![
                    self.n.clone(),
                    self.e.clone(),
                    self.s.clone(),
                    c.name.clone(),
                    scope.as_str().unwrap_or_default().to_string(),
                    c.status.to_string(),
                    c.detail.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeRow {
    pub n: String,
    pub e: String,
    pub s: String,
    /// `exists`, `excluded`, `open`, or `invalid` when `e > n`.
    pub verdict: String,
    pub lattice_excluded: Option<bool>,
    /// Names of the criteria that exclude, joined by `;`.
    pub excluded_by: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RangeReport {
    pub rows: Vec<RangeRow>,
}

impl Report for RangeReport {
    fn text(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                let lattice = match r.lattice_excluded {
                    Some(true) => " (no lattice tiling)",
                    _ => "",
                };
                format!("{} {} {} {}{}", r.n, r.e, r.s, r.verdict, lattice)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "e", "s", "verdict", "lattice_excluded", "excluded_by"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.n.clone(),
                    r.e.clone(),
                    r.s.clone(),
                    r.verdict.clone(),
                    r.lattice_excluded.map(|b| b.to_string()).unwrap_or_default(),
                    r.excluded_by.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityBoundReport {
    /// `bound` or `not-applicable`.
    pub kind: String,
    pub value: Option<String>,
    pub value_decimal: Option<String>,
    pub vacuous: Option<bool>,
}

impl Report for DensityBoundReport {
    fn text(&self) -> String {
        match (&self.value, &self.value_decimal) {
            (Some(v), Some(d)) => {
                let tag = if self.vacuous == Some(true) { " (vacuous)" } else { "" };
                format!("{v} ({d}){tag}")
            }
            _ => self.kind.clone(),
        }
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["kind", "value", "value_decimal", "vacuous"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.kind.clone(),
            opt(&self.value),
            opt(&self.value_decimal),
            self.vacuous.map(|b| b.to_string()).unwrap_or_default(),
        ]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpReport {
    pub s: String,
    pub k: String,
    pub a: String,
    pub closed_max: String,
    /// Counts at symbols `-s..=s`.
    pub closed_argmax: Vec<String>,
    /// `f` re-evaluated at the closed-form argmax equals `closed_max`.
    pub argmax_consistent: bool,
    pub oracle_max: String,
    pub oracle_argmax: Vec<String>,
    pub relative_gap: String,
    /// Exhaustive 0/1 maximum and its envelope, for integral `K >= a`, `a <= 2s`.
    pub binary_max: Option<String>,
    pub envelope: Option<String>,
}

impl Report for QpReport {
    fn text(&self) -> String {
        let mut s = format!(
            "closed form: {} at ({})\noracle: {} at ({})\nrelative gap: {}\nargmax consistent: {}",
            self.closed_max,
            self.closed_argmax.join(", "),
            self.oracle_max,
            self.oracle_argmax.join(", "),
            self.relative_gap,
            self.argmax_consistent
        );
        if let (Some(b), Some(g)) = (&self.binary_max, &self.envelope) {
            write!(s, "\nbinary max: {b} <= envelope {g}").unwrap();
        }
        s
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec![
            "s",
            "k",
            "a",
            "closed_max",
            "oracle_max",
            "relative_gap",
            "argmax_consistent",
            "binary_max",
            "envelope",
        ]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.s.clone(),
            self.k.clone(),
            self.a.clone(),
            self.closed_max.clone(),
            self.oracle_max.clone(),
            self.relative_gap.clone(),
            self.argmax_consistent.to_string(),
            opt(&self.binary_max),
            opt(&self.envelope),
        ]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowReport {
    pub s: String,
    pub epsilon: String,
    pub min_n: String,
    /// Rounded up at two decimals.
    pub coefficient: String,
    /// Rigorous enclosure of the unrounded coefficient.
    pub coefficient_lo: String,
    pub coefficient_hi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TableReport {
    pub rows: Vec<TableRowReport>,
}

impl Report for TableReport {
    fn text(&self) -> String {
        self.rows
            .iter()
            .map(|r| format!("{}, {}", r.min_n, r.coefficient))
            .collect::<Vec<_>>()
            .join("\n")
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["s", "epsilon", "min_n", "coefficient", "coefficient_lo", "coefficient_hi"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.s.clone(),
                    r.epsilon.clone(),
                    r.min_n.clone(),
                    r.coefficient.clone(),
                    r.coefficient_lo.clone(),
                    r.coefficient_hi.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceCheckReport {
    pub n: String,
    pub t: String,
    pub s: String,
    pub equal: bool,
    pub witness: Option<String>,
    pub difference_count: String,
    pub distance_ball_count: String,
}

impl Report for EquivalenceCheckReport {
    fn text(&self) -> String {
        let mut s = format!(
            "equal: {}\ndifferences: {}\ndistance ball: {}",
            self.equal, self.difference_count, self.distance_ball_count
        );
        if let Some(w) = &self.witness {
            write!(s, "\nwitness: {w}").unwrap();
        }
        s
    }
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "t", "s", "equal", "witness", "difference_count", "distance_ball_count"]
    }
    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.n.clone(),
            self.t.clone(),
            self.s.clone(),
            self.equal.to_string(),
            opt(&self.witness),
            self.difference_count.clone(),
            self.distance_ball_count.clone(),
        ]]
    }
}
