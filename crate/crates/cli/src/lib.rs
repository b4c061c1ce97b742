//! Command-line front end for `lmlab`. The binary is a thin wrapper over
//! [`run`]; report types live in [`report`] so that tests can re-parse the
//! JSON the binary prints.

pub mod report;

use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use lmlab::ball::{ball_volume, enumerate_ball};
use lmlab::bounds::{classify, packing_density_bound, table_row, Existence, PackingBound, Status};
use lmlab::lattice::{lattice_density, verify_lattice_packing, verify_lattice_tiling, Verdict};
use lmlab::metric::{difference_set_equivalence, ds_distance};
use lmlab::qp::{default_resolution, f_max_closed, f_max_oracle_binary, f_max_oracle_continuous, f_value, g_envelope};
use lmlab::search::{
    estimate_density, lattice_points_in_window, lattice_window_bounds, ratio_to_f64, search_perfect_lattices,
    tiling_window_bounds, verify_window_packing, PointSet,
};
use lmlab::vector::parse_vector_list;
use lmlab::{BallParams, Caps, IntVector, Lattice};

use report::*;
pub use report::Format;

#[derive(Parser, Debug)]
#[command(name = "lmlab", version, about = "Limited-magnitude error balls, lattice tilings and perfect-code criteria")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "LMLAB_THREADS", value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,

    #[command(flatten)]
    pub caps: CapArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    /// Most vectors a single ball enumeration may yield.
    #[arg(long, global = true, value_parser = positive())]
    pub cap_enumeration: Option<u64>,
    /// Most ball cells a codeword disjointness check may touch.
    #[arg(long, global = true, value_parser = positive())]
    pub cap_disjointness: Option<u64>,
    /// Most difference pairs for the equivalence check.
    #[arg(long, global = true, value_parser = positive())]
    pub cap_equivalence: Option<u64>,
    /// Most window cells or window points.
    #[arg(long, global = true, value_parser = positive())]
    pub cap_window: Option<u64>,
    /// Largest sublattice index the search enumerates.
    #[arg(long, global = true, value_parser = positive())]
    pub cap_sublattice_index: Option<u64>,
}

fn positive() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

impl CapArgs {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            enumeration: self.cap_enumeration.unwrap_or(d.enumeration),
            disjointness_cells: self.cap_disjointness.unwrap_or(d.disjointness_cells),
            equivalence_pairs: self.cap_equivalence.unwrap_or(d.equivalence_pairs),
            window_cells: self.cap_window.unwrap_or(d.window_cells),
            sublattice_index: self.cap_sublattice_index.unwrap_or(d.sublattice_index),
        }
    }
}

/// Ball shape: either `--s` for the symmetric ball or `--kplus`/`--kminus`.
#[derive(Args, Debug, Clone)]
pub struct BallArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub e: usize,
    #[arg(long, conflicts_with_all = ["kplus", "kminus"], required_unless_present = "kplus", value_parser = clap::value_parser!(u32).range(1..))]
    pub s: Option<u32>,
    #[arg(long)]
    pub kplus: Option<u32>,
    #[arg(long, requires = "kplus")]
    pub kminus: Option<u32>,
}

impl BallArgs {
    fn params(&self) -> lmlab::Result<BallParams> {
        match self.s {
            Some(s) => BallParams::symmetric(self.n, self.e, s),
            None => BallParams::new(self.n, self.e, self.kplus.unwrap_or(0), self.kminus.unwrap_or(0)),
        }
    }
}

/// Translates given either as a lattice or as an explicit list.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct PointsArgs {
    /// Lattice generator rows, e.g. `1,2;2,-1`.
    #[arg(long)]
    pub gen: Option<Lattice>,
    /// Explicit translates, e.g. `0,0;3,1`.
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Packing,
    Tiling,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of vectors in the error ball.
    Ball(BallArgs),
    /// List the error ball in lexicographic order.
    Enumerate(BallArgs),
    /// The d_s distance between two vectors.
    Dist {
        #[arg(long, allow_hyphen_values = true)]
        x: IntVector,
        #[arg(long, allow_hyphen_values = true)]
        y: IntVector,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
    },
    /// Exact lattice packing or tiling verdict.
    VerifyLattice {
        #[command(flatten)]
        ball: BallArgs,
        #[arg(long, allow_hyphen_values = true)]
        gen: Lattice,
        #[arg(long, value_enum, default_value_t = Mode::Tiling)]
        mode: Mode,
        /// Exit with status 1 unless the verdict meets the mode.
        #[arg(long)]
        expect: bool,
    },
    /// Disjointness of translated balls inside `[-L, L]^n`.
    VerifyWindow {
        #[command(flatten)]
        ball: BallArgs,
        #[command(flatten)]
        points: PointsArgs,
        #[arg(long)]
        window: u64,
        /// Exit with status 1 if two balls overlap.
        #[arg(long)]
        expect: bool,
    },
    /// Window density estimate with its exact sandwich.
    Density {
        #[command(flatten)]
        ball: BallArgs,
        #[command(flatten)]
        points: PointsArgs,
        #[arg(long)]
        window: u64,
    },
    /// All lattice tilings by the ball, as Hermite normal forms.
    Search(BallArgs),
    /// Run every nonexistence criterion on a parameter triple.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        e: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
        /// Exit with status 1 if the triple is excluded.
        #[arg(long)]
        expect: bool,
    },
    /// Classify every triple of a grid, one row per triple sorted by (n, e, s).
    ClassifyRange {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 0)]
        e_min: u64,
        #[arg(long)]
        e_max: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        s_min: u32,
        #[arg(long)]
        s_max: u32,
    },
    /// Upper bound on the density of any packing by the ball.
    DensityBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
    },
    /// Compare the closed-form symbol-distribution maximum with the oracles.
    QpCheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        s: u32,
        #[arg(long, value_parser = parse_rational)]
        k: BigRational,
        #[arg(long, value_parser = parse_rational)]
        a: BigRational,
        /// Grid steps per free dimension of the continuous oracle.
        #[arg(long)]
        resolution: Option<u32>,
    },
    /// Least n and square-root coefficient of the asymptotic criterion.
    Table {
        /// Omit for both s = 1 and s = 2.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        s: Option<u32>,
        /// Repeatable; fractions such as `1/15` are exact.
        #[arg(long, value_parser = parse_rational)]
        epsilon: Vec<BigRational>,
    },
    /// Compare ball differences with the distance ball of radius 2t.
    EquivalenceCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
    },
}

/// Parses `p/q`, an integer, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid decimal {s:?}"));
        }
        let negative = int.starts_with('-');
        let whole = if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse::<BigInt>().map_err(|e| e.to_string())? };
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let num: BigInt = frac.parse().map_err(|_| format!("invalid decimal {s:?}"))?;
        let mag = BigRational::new(whole.abs() * &den + num, den);
        return Ok(if negative { -mag } else { mag });
    }
    BigRational::from_str(s).map_err(|e| format!("invalid rational {s:?}: {e}"))
}

/// What [`run`] produced: the rendered report and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub exit: u8,
}

fn decimal(r: &BigRational) -> String {
    format!("{:.6}", ratio_to_f64(r))
}

fn translates(points: &PointsArgs, window: u64, caps: &Caps) -> anyhow::Result<Vec<IntVector>> {
    match (&points.gen, &points.points) {
        (Some(l), _) => Ok(lattice_points_in_window(l, window, caps)?),
        (None, Some(p)) => Ok(parse_vector_list(p)?),
        (None, None) => bail!("one of --gen or --points is required"),
    }
}

fn check_dim(what: &str, got: usize, n: usize) -> anyhow::Result<()> {
    if got != n {
        bail!("{what} has dimension {got} but --n is {n}");
    }
    Ok(())
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let caps = cli.caps.caps();
    let fmt = cli.format;
    let done = |output: String| Outcome { output, exit: 0 };
    match &cli.command {
        Command::Ball(b) => {
            let r = BallReport {
                volume: ball_volume(&b.params()?).to_string(),
            };
            Ok(done(render(&r, fmt)?))
        }
        Command::Enumerate(b) => {
            let vectors: Vec<String> = enumerate_ball(&b.params()?, caps.enumeration)?.map(|v| v.to_string()).collect();
            let r = EnumerateReport {
                count: vectors.len().to_string(),
                vectors,
            };
            Ok(done(render(&r, fmt)?))
        }
        Command::Dist { x, y, s } => {
            let r = DistReport {
                distance: ds_distance(x, y, *s)?.to_string(),
            };
            Ok(done(render(&r, fmt)?))
        }
        Command::VerifyLattice { ball, gen, mode, expect } => {
            let p = ball.params()?;
            check_dim("--gen", gen.n(), p.n())?;
            let v = match mode {
                Mode::Packing => verify_lattice_packing(gen, &p, caps.enumeration)?,
                Mode::Tiling => verify_lattice_tiling(gen, &p, caps.enumeration)?,
            };
            let met = match mode {
                Mode::Packing => v.verdict != Verdict::Fails,
                Mode::Tiling => v.verdict == Verdict::Tiles,
            };
            let r = LatticeReport {
                lattice: gen.to_string(),
                mode: format!("{mode:?}").to_lowercase(),
                verdict: v.verdict,
                witness: v.witness.map(|(a, b)| (a.to_string(), b.to_string())),
                volume: v.volume.to_string(),
                index: v.index.to_string(),
                density: lattice_density(gen, &p).to_string(),
            };
            Ok(Outcome {
                output: render(&r, fmt)?,
                exit: u8::from(*expect && !met),
            })
        }
        Command::VerifyWindow { ball, points, window, expect } => {
            let p = ball.params()?;
            let pts = translates(points, *window, &caps)?;
            if let Some(v) = pts.first() {
                check_dim("translate", v.dim(), p.n())?;
            }
            let w = verify_window_packing(&pts, &p, *window, &caps)?;
            let r = WindowReport {
                window: window.to_string(),
                translates: w.translates.to_string(),
                disjoint: w.disjoint,
                witness: w.witness.map(|v| v.to_string()),
            };
            Ok(Outcome {
                output: render(&r, fmt)?,
                exit: u8::from(*expect && !w.disjoint),
            })
        }
        Command::Density { ball, points, window } => {
            let p = ball.params()?;
            let tiling = tiling_window_bounds(&p, *window);
            let (estimate, lattice) = match (&points.gen, &points.points) {
                (Some(l), _) => {
                    check_dim("--gen", l.n(), p.n())?;
                    let est = estimate_density(PointSet::Lattice(l), &p, *window, &caps)?;
                    (est, Some((lattice_window_bounds(l, &p, *window)?, lattice_density(l, &p))))
                }
                _ => {
                    let pts = translates(points, *window, &caps)?;
                    (estimate_density(PointSet::Translates(&pts), &p, *window, &caps)?, None)
                }
            };
            let r = DensityReport {
                window: window.to_string(),
                estimate_decimal: decimal(&estimate),
                estimate: estimate.to_string(),
                tiling_lower: tiling.lower.to_string(),
                tiling_upper: tiling.upper.to_string(),
                lattice_lower: lattice.as_ref().map(|(b, _)| b.lower.to_string()),
                lattice_upper: lattice.as_ref().map(|(b, _)| b.upper.to_string()),
                lattice_density: lattice.as_ref().map(|(_, d)| d.to_string()),
            };
            Ok(done(render(&r, fmt)?))
        }
        Command::Search(b) => {
            let found = search_perfect_lattices(&b.params()?, &caps)?;
            let r = SearchReport {
                lattices: found.iter().map(|l| l.to_string()).collect(),
            };
            Ok(done(render(&r, fmt)?))
        }
        Command::Classify { n, e, s, expect } => {
            let c = classify(*n as usize, *e as usize, *s)?;
            let excluded = c.verdict == Existence::Excluded;
            let r = ClassifyReport {
                n: c.n.to_string(),
                e: c.e.to_string(),
                s: c.s.to_string(),
                verdict: c.verdict,
                lattice_excluded: c.lattice_excluded,
                criteria: c.criteria,
            };
            Ok(Outcome {
                output: render(&r, fmt)?,
                exit: u8::from(*expect && excluded),
            })
        }
        Command::ClassifyRange {
            n_min,
            n_max,
            e_min,
            e_max,
            s_min,
            s_max,
        } => {
            if n_min > n_max || e_min > e_max || s_min > s_max {
                bail!("empty range: every minimum must not exceed its maximum");
            }
            let grid: Vec<(u64, u64, u32)> = (*n_min..=*n_max)
                .flat_map(|n| (*e_min..=*e_max).flat_map(move |e| (*s_min..=*s_max).map(move |s| (n, e, s))))
                .collect();
            let rows = grid
                .par_iter()
                .map(|&(n, e, s)| range_row(n, e, s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(done(render(&RangeReport { rows }, fmt)?))
        }
        Command::DensityBound { n, e, s } => {
            let r = match packing_density_bound(*n, *e, *s)? {
                PackingBound::NotApplicable => DensityBoundReport {
                    kind: "not-applicable".into(),
                    value: None,
                    value_decimal: None,
                    vacuous: None,
                },
                PackingBound::Bound { value, vacuous } => DensityBoundReport {
                    kind: "bound".into(),
                    value_decimal: Some(decimal(&value)),
                    value: Some(value.to_string()),
                    vacuous: Some(vacuous),
                },
            };
            Ok(done(render(&r, fmt)?))
        }
        Command::QpCheck { s, k, a, resolution } => Ok(done(render(&qp_check(*s, k, a, *resolution)?, fmt)?)),
        Command::Table { s, epsilon } => {
            let svals: Vec<u32> = s.map(|s| vec![s]).unwrap_or_else(|| vec![1, 2]);
            let eps: Vec<BigRational> = if epsilon.is_empty() {
                [10, 15, 20].iter().map(|d| BigRational::new(1.into(), BigInt::from(*d))).collect()
            } else {
                epsilon.clone()
            };
            let mut rows = Vec::new();
            for &s in &svals {
                for eps in &eps {
                    let row = table_row(s, eps)?;
                    rows.push(TableRowReport {
                        s: s.to_string(),
                        epsilon: eps.to_string(),
                        min_n: row.min_n.to_string(),
                        coefficient: format!("{:.2}", row.display),
                        coefficient_lo: row.coefficient.lo().to_string(),
                        coefficient_hi: row.coefficient.hi().to_string(),
                    });
                }
            }
            Ok(done(render(&TableReport { rows }, fmt)?))
        }
        Command::EquivalenceCheck { n, t, s } => {
            let q = difference_set_equivalence(*n, *t, *s, &caps)?;
            let r = EquivalenceCheckReport {
                n: n.to_string(),
                t: t.to_string(),
                s: s.to_string(),
                equal: q.equal,
                witness: q.witness.map(|v| v.to_string()),
                difference_count: q.difference_count.to_string(),
                distance_ball_count: q.distance_ball_count.to_string(),
            };
            Ok(done(render(&r, fmt)?))
        }
    }
}

fn range_row(n: u64, e: u64, s: u32) -> anyhow::Result<RangeRow> {
    let mut row = RangeRow {
        n: n.to_string(),
        e: e.to_string(),
        s: s.to_string(),
        verdict: "invalid".into(),
        lattice_excluded: None,
        excluded_by: String::new(),
    };
    if e > n {
        return Ok(row);
    }
    let c = classify(n as usize, e as usize, s).with_context(|| format!("classifying ({n}, {e}, {s})"))?;
    row.verdict = c.verdict.to_string();
    row.lattice_excluded = Some(c.lattice_excluded);
    row.excluded_by = c
        .criteria
        .iter()
        .filter(|o| o.status == Status::Excludes)
        .map(|o| o.name.as_str())
        .collect::<Vec<_>>()
        .join(";");
    Ok(row)
}

fn qp_check(s: u32, k: &BigRational, a: &BigRational, resolution: Option<u32>) -> anyhow::Result<QpReport> {
    let (closed, argmax) = f_max_closed(s, k, a)?;
    let kf = k.to_f64().context("K out of range")?;
    let af = a.to_f64().context("a out of range")?;
    let oracle = f_max_oracle_continuous(s, kf, af, resolution.unwrap_or_else(|| default_resolution(s)))?;
    let closed_f = ratio_to_f64(&closed);
    let gap = if closed_f == 0.0 { oracle.value.abs() } else { (closed_f - oracle.value) / closed_f };
    let integral = k.is_integer() && a.is_integer();
    let small = a <= k && *a <= BigRational::from_integer(BigInt::from(2 * s));
    let (binary_max, envelope) = if integral && small && a >= &BigRational::zero() && k >= &BigRational::one() {
        let ki = k.to_integer().to_i64().context("K out of range")?;
        let ai = a.to_integer().to_i64().context("a out of range")?;
        let b = f_max_oracle_binary(s, ki, ai)?;
        (Some(b.value.to_string()), Some(g_envelope(a, ki, s).to_string()))
    } else {
        (None, None)
    };
    Ok(QpReport {
        s: s.to_string(),
        k: k.to_string(),
        a: a.to_string(),
        argmax_consistent: f_value(&argmax) == closed,
        closed_max: closed.to_string(),
        closed_argmax: argmax.counts().iter().map(|c| c.to_string()).collect(),
        oracle_max: format!("{:.9}", oracle.value),
        oracle_argmax: oracle.argmax.counts().iter().map(|c| format!("{c:.6}")).collect(),
        relative_gap: format!("{gap:.3e}"),
        binary_max,
        envelope,
    })
}
