//! Nonexistence criteria for tilings by symmetric limited-magnitude error
//! balls, their tabulated constants, and packing-density upper bounds.
//!
//! Polynomial thresholds are compared exactly in integers or rationals.
//! Thresholds involving logarithms go through [`Interval`]; a value that
//! the enclosure cannot separate from the threshold is reported as
//! [`Status::BoundaryUncertain`] rather than guessed.

pub mod interval;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::ball::binomial;
use crate::error::{Error, Result};
use crate::search::bundled_tilings;

pub use interval::{log2_rational, Interval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    AllTilings,
    LatticeOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Excludes,
    Silent,
    HypothesesUnmet,
    BoundaryUncertain,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Excludes => "excludes",
            Status::Silent => "silent",
            Status::HypothesesUnmet => "hypotheses-unmet",
            Status::BoundaryUncertain => "boundary-uncertain",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub name: String,
    pub scope: Scope,
    pub status: Status,
    /// The comparison that decided the status, with its evaluated values.
    pub detail: String,
}

impl CriterionOutcome {
    fn new(name: impl Into<String>, scope: Scope, status: Status, detail: impl Into<String>) -> Self {
        CriterionOutcome {
            name: name.into(),
            scope,
            status,
            detail: detail.into(),
        }
    }

    fn all(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self::new(name, Scope::AllTilings, status, detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Existence {
    Exists,
    Excluded,
    Open,
}

impl fmt::Display for Existence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Existence::Exists => "exists",
            Existence::Excluded => "excluded",
            Existence::Open => "open",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub e: usize,
    pub s: u32,
    pub verdict: Existence,
    /// No lattice tiling exists: either some lattice-only criterion
    /// excludes or the verdict is `excluded`.
    pub lattice_excluded: bool,
    pub criteria: Vec<CriterionOutcome>,
}

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Least `r >= 0` with `q^r >= target`, for `q > 1`.
pub fn ceil_log(q: &BigRational, target: &BigRational) -> u64 {
    assert!(q > &BigRational::one(), "base must exceed 1");
    if target <= &BigRational::one() {
        return 0;
    }
    let est = (log2_rational(target).hi() / log2_rational(q).lo()).ceil();
    let mut r = if est.is_finite() && est >= 1.0 { est as u64 } else { 1 };
    let pow = |k: u64| num_traits::pow(q.clone(), k as usize);
    while r > 0 && &pow(r - 1) >= target {
        r -= 1;
    }
    while &pow(r) < target {
        r += 1;
    }
    r
}

/// Compares `e^2` with an enclosed threshold: excludes only when
/// `e^2 >= threshold` is certain.
fn square_root_status(e: usize, threshold: &Interval) -> Status {
    let e2 = (e as u128) * (e as u128);
    if threshold.surely_le_u128(e2) {
        Status::Excludes
    } else if threshold.surely_gt_u128(e2) {
        Status::Silent
    } else {
        Status::BoundaryUncertain
    }
}

/// Necessary condition `e < (4n - 2)/5` for `s >= 2`, `n >= 3` and
/// `e < n`.
pub fn bound_prereq(n: usize, e: usize, s: u32) -> CriterionOutcome {
    const NAME: &str = "prereq";
    if s < 2 || n < 3 {
        return CriterionOutcome::all(NAME, Status::HypothesesUnmet, format!("requires s >= 2 and n >= 3 (n={n}, s={s})"));
    }
    if e >= n {
        return CriterionOutcome::all(NAME, Status::HypothesesUnmet, format!("requires e < n (e={e}, n={n})"));
    }
    let lhs = 5 * e as u128;
    let rhs = 4 * n as u128 - 2;
    let status = if lhs >= rhs { Status::Excludes } else { Status::Silent };
    let cmp = if lhs >= rhs { ">=" } else { "<" };
    CriterionOutcome::all(NAME, status, format!("5e = {lhs} {cmp} 4n - 2 = {rhs}"))
}

/// Constants of the small-`s` criteria.
struct SmallS {
    /// `q` with `r = ceil(log_q(target_scale * n))`.
    q: BigRational,
    target_scale: BigRational,
    /// Linear threshold `e + r < lin_num/lin_den * n`.
    lin_num: u128,
    lin_den: u128,
    /// Square-root threshold `coef * n * log_q(target_scale * n)`.
    coef: BigRational,
}

fn small_s_constants(s: u32) -> Result<SmallS> {
    Ok(match s {
        1 => SmallS {
            q: ratio(2, 1),
            target_scale: ratio(1, 1),
            lin_num: 1,
            lin_den: 2,
            coef: ratio(2, 1),
        },
        2 => SmallS {
            q: ratio(4, 3),
            target_scale: ratio(3, 2),
            lin_num: 3,
            lin_den: 4,
            coef: ratio(12, 5),
        },
        3 => SmallS {
            q: ratio(6, 5),
            target_scale: ratio(5, 3),
            lin_num: 5,
            lin_den: 6,
            coef: ratio(8, 3),
        },
        _ => return Err(Error::InvalidS(s)),
    })
}

/// For `s` in {1, 2, 3} and `n >= 3`: no tiling when
/// `sqrt(c_s n log_q(t_s n)) <= e < f_s n - ceil(log_q(t_s n))`.
pub fn bound_small_s(n: usize, e: usize, s: u32) -> Result<CriterionOutcome> {
    let k = small_s_constants(s)?;
    let name = "small-s";
    if n < 3 {
        return Ok(CriterionOutcome::all(name, Status::HypothesesUnmet, format!("requires n >= 3 (n={n})")));
    }
    let target = &k.target_scale * BigRational::from_integer(n.into());
    let r = ceil_log(&k.q, &target) as u128;
    let (n128, e128) = (n as u128, e as u128);
    let lin_lhs = k.lin_den * (e128 + r);
    let lin_rhs = k.lin_num * n128;
    let lin = format!("{}(e + r) = {lin_lhs} vs {}n = {lin_rhs} with r = {r}", k.lin_den, k.lin_num);
    if lin_lhs >= lin_rhs {
        return Ok(CriterionOutcome::all(name, Status::Silent, format!("at or above linear threshold: {lin}")));
    }
    let threshold = Interval::from_rational(&k.coef)
        * Interval::from_u64(n as u64)
        * (log2_rational(&target) / log2_rational(&k.q));
    let status = square_root_status(e, &threshold);
    Ok(CriterionOutcome::all(
        name,
        status,
        format!("{lin}; e^2 = {} vs {} n log_{}({} n) in {threshold}", e128 * e128, k.coef, k.q, k.target_scale),
    ))
}

fn asymptotic_base(s: u32, eps: &BigRational) -> Result<(BigRational, BigRational)> {
    match s {
        1 => Ok((BigRational::one() + eps * ratio(9, 4), ratio(1, 1))),
        2 => Ok((BigRational::one() + eps * ratio(25, 8), ratio(3, 2))),
        _ => Err(Error::InvalidS(s)),
    }
}

/// Least `r` with `q^r >= target_scale * n` and whether `2r < eps * n`.
fn asymptotic_size(n: u64, q: &BigRational, target_scale: &BigRational, eps: &BigRational) -> (u64, bool) {
    let n_rat = BigRational::from_integer(n.into());
    let r = ceil_log(q, &(target_scale * &n_rat));
    let holds = BigRational::from_integer((2 * r).into()) < eps * n_rat;
    (r, holds)
}

/// Coefficient `c` of the `sqrt(c n log2 n)` bound: `2 / log2 q` for
/// `s = 1` and `12 / (5 log2 q)` for `s = 2`.
fn asymptotic_coefficient(s: u32, q: &BigRational) -> Interval {
    let num = if s == 1 { ratio(2, 1) } else { ratio(12, 5) };
    Interval::from_rational(&num) / log2_rational(q)
}

fn check_epsilon(eps: &BigRational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {eps}")));
    }
    Ok(())
}

/// For `s` in {1, 2}: once `2 ceil(log_q(t n)) < eps n`, no tiling has
/// `sqrt(c n log2 n) <= e <= (f - eps) n` with `f = 2/3` or `4/5`.
pub fn bound_asymptotic(n: usize, e: usize, s: u32, eps: &BigRational) -> Result<CriterionOutcome> {
    check_epsilon(eps)?;
    let (q, scale) = asymptotic_base(s, eps)?;
    let name = format!("asymptotic-eps-{eps}");
    if n < 3 {
        return Ok(CriterionOutcome::all(name, Status::HypothesesUnmet, format!("requires n >= 3 (n={n})")));
    }
    let (r, size_ok) = asymptotic_size(n as u64, &q, &scale, eps);
    if !size_ok {
        return Ok(CriterionOutcome::all(
            name,
            Status::HypothesesUnmet,
            format!("size condition 2r < eps n fails: r = {r}, eps n = {}", eps * BigRational::from_integer(n.into())),
        ));
    }
    let frac = if s == 1 { ratio(2, 3) } else { ratio(4, 5) };
    let linear_cap = (frac - eps) * BigRational::from_integer(n.into());
    let e_rat = BigRational::from_integer(e.into());
    if e_rat > linear_cap {
        return Ok(CriterionOutcome::all(name, Status::Silent, format!("e = {e} > (f - eps) n = {linear_cap}")));
    }
    let coef = asymptotic_coefficient(s, &q);
    let n_iv = Interval::from_u64(n as u64);
    let threshold = coef * n_iv * n_iv.log2();
    let status = square_root_status(e, &threshold);
    Ok(CriterionOutcome::all(
        name,
        status,
        format!("r = {r}; e <= {linear_cap}; e^2 = {} vs c n log2 n in {threshold}, c in {coef}", e * e),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub s: u32,
    pub epsilon: BigRational,
    pub min_n: u64,
    pub coefficient: Interval,
    /// The coefficient rounded up at two decimals.
    pub display: f64,
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {:.2}", self.min_n, self.display)
    }
}

/// Least `n >= 3` meeting the size condition of [`bound_asymptotic`], and
/// the coefficient of its square-root bound.
pub fn table_row(s: u32, eps: &BigRational) -> Result<TableRow> {
    check_epsilon(eps)?;
    if eps >= &BigRational::one() {
        return Err(Error::InvalidParameter(format!("epsilon must be below 1, got {eps}")));
    }
    let (q, scale) = asymptotic_base(s, eps)?;
    let mut n: u64 = 3;
    let min_n = loop {
        let (r, ok) = asymptotic_size(n, &q, &scale, eps);
        if ok {
            break n;
        }
        // every m <= 2r/eps fails as well, since r is nondecreasing in n
        let jump = (BigRational::from_integer((2 * r).into()) / eps).floor().to_integer();
        let jump = jump.to_u64().ok_or_else(|| Error::ParameterOutOfRange("minimum n exceeds 64 bits".into()))?;
        n = (n + 1).max(jump + 1);
    };
    let coefficient = asymptotic_coefficient(s, &q);
    Ok(TableRow {
        s,
        epsilon: eps.clone(),
        min_n,
        display: coefficient.round_up_2dp(),
        coefficient,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LargeSMode {
    /// `e < sqrt(12.36 n)`, compared as `25 e^2 < 309 n`.
    #[default]
    Displayed,
    /// `e < sqrt(3n / (3 sqrt 2 - 4)) - 1`, compared as
    /// `18 (e+1)^4 < (3n + 4 (e+1)^2)^2`.
    Strict,
}

/// For `s >= 3`, `n >= 61`, `e < n`: no tiling with `e >= sqrt(12.36 n)`,
/// except for `s = 3` in the window `2(n-1)/3 < e < (4n-2)/5` when
/// `n <= 1347`.
pub fn bound_large_s(n: usize, e: usize, s: u32, mode: LargeSMode) -> Result<CriterionOutcome> {
    if s < 3 {
        return Err(Error::InvalidS(s));
    }
    let name = match mode {
        LargeSMode::Displayed => "large-s",
        LargeSMode::Strict => "large-s-strict",
    };
    if n < 61 {
        return Ok(CriterionOutcome::all(name, Status::HypothesesUnmet, format!("requires n >= 61 (n={n})")));
    }
    if e >= n {
        return Ok(CriterionOutcome::all(name, Status::HypothesesUnmet, format!("requires e < n (e={e}, n={n})")));
    }
    let (n_big, e_big) = (BigUint::from(n), BigUint::from(e));
    let (root, root_detail) = match mode {
        LargeSMode::Displayed => {
            let lhs = BigUint::from(25u32) * &e_big * &e_big;
            let rhs = BigUint::from(309u32) * &n_big;
            (lhs >= rhs, format!("25e^2 = {lhs} vs 309n = {rhs}"))
        }
        LargeSMode::Strict => {
            let e1 = &e_big + 1u32;
            let sq = &e1 * &e1;
            let lhs = BigUint::from(18u32) * &sq * &sq;
            let inner = BigUint::from(3u32) * &n_big + BigUint::from(4u32) * &sq;
            let rhs = &inner * &inner;
            (lhs >= rhs, format!("18(e+1)^4 = {lhs} vs (3n + 4(e+1)^2)^2 = {rhs}"))
        }
    };
    if !root {
        return Ok(CriterionOutcome::all(name, Status::Silent, format!("below square-root bound: {root_detail}")));
    }
    if s == 3 {
        let (n, e) = (n as u128, e as u128);
        let in_window = 3 * e > 2 * (n - 1) && 5 * e < 4 * n - 2;
        if in_window && n <= 1347 {
            return Ok(CriterionOutcome::all(
                name,
                Status::Silent,
                format!("{root_detail}; s = 3 window 2(n-1)/3 < e < (4n-2)/5 holds and n <= 1347"),
            ));
        }
        if in_window {
            return Ok(CriterionOutcome::all(
                name,
                Status::Excludes,
                format!("{root_detail}; s = 3 window holds but is dropped for n >= 1348"),
            ));
        }
    }
    Ok(CriterionOutcome::all(name, Status::Excludes, root_detail))
}

/// Lattice-tiling necessary conditions for `2 <= e < n <= 2e`.
pub fn bound_prior_lattice(n: usize, e: usize, kplus: u32, kminus: u32) -> CriterionOutcome {
    let out = |status, detail: String| CriterionOutcome::new("prior-lattice", Scope::LatticeOnly, status, detail);
    if !(2 <= e && e < n && n <= 2 * e) || kminus > kplus || kplus == 0 {
        return out(
            Status::HypothesesUnmet,
            format!("requires 2 <= e < n <= 2e and k+ >= k- >= 0 not both 0 (n={n}, e={e}, k+={kplus}, k-={kminus})"),
        );
    }
    let (n, e) = (n as u128, e as u128);
    let mut held = Vec::new();
    let mut note = String::new();
    if kminus == 0 {
        if e == n - 1 {
            held.push("1a".to_string());
        }
        if kplus == 1 && 3 * e >= 2 * n - 2 && e + 3 <= n {
            held.push("1b".to_string());
        }
        if 2 * e >= n && 3 * e < 2 * n - 2 {
            held.push("1c".to_string());
        }
    }
    if kplus == kminus {
        if kplus == 1 && 5 * e >= 4 * n - 2 && e < n {
            held.push("2a".to_string());
        }
        if 2 * e >= n && 5 * e < 4 * n - 2 {
            let k = BigUint::from(kplus);
            let two_k = BigUint::from(2u32) * &k;
            let sum: BigUint = (1..=e as usize)
                .map(|i| binomial(n as usize, i) * num_traits::pow(two_k.clone(), i - 1))
                .sum();
            let rhs = num_traits::pow(&k + 1u32, e as usize);
            if sum >= rhs {
                held.push(format!("2b (sum = {sum} >= (k+1)^e = {rhs})"));
            } else {
                note = format!("; 2b sum = {sum} < (k+1)^e = {rhs}");
            }
        }
    }
    if held.is_empty() {
        out(Status::Excludes, format!("no case holds{note}"))
    } else {
        out(Status::Silent, format!("case {} holds", held.join(", ")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PackingBound {
    NotApplicable,
    Bound {
        value: BigRational,
        /// The bound is at least 1 and says nothing.
        vacuous: bool,
    },
}

/// `n e (e+1) / (((e+1)^2 - 2n) s (n - e))` when `(e+1)^2 > 2n`.
pub fn packing_density_bound(n: usize, e: usize, s: u32) -> Result<PackingBound> {
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    if e >= n {
        return Err(Error::InvalidParameter(format!("density bound needs e < n (n={n}, e={e})")));
    }
    let (n, e, s) = (BigInt::from(n), BigInt::from(e), BigInt::from(s));
    let e1 = &e + 1;
    let gap: BigInt = &e1 * &e1 - BigInt::from(2) * &n;
    if !gap.is_positive() {
        return Ok(PackingBound::NotApplicable);
    }
    let value = BigRational::new(&n * &e * &e1, gap * s * (&n - &e));
    let vacuous = value >= BigRational::one();
    Ok(PackingBound::Bound { value, vacuous })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityRegime {
    /// `e = a sqrt(n)`, `a > sqrt 2`.
    Sqrt,
    /// `e = a n`, `0 < a < 1`.
    Linear,
}

/// Leading constant of the packing-density bound as `n` grows.
pub fn density_bound_asymptotic(regime: DensityRegime, a: &BigRational, s: u32) -> Result<BigRational> {
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    let s = BigRational::from_integer(s.into());
    match regime {
        DensityRegime::Sqrt => {
            let a2 = a * a;
            if a2 <= ratio(2, 1) || !a.is_positive() {
                return Err(Error::ParameterOutOfRange(format!("sqrt regime needs a > sqrt 2, got {a}")));
            }
            Ok(&a2 / (s * (&a2 - ratio(2, 1))))
        }
        DensityRegime::Linear => {
            if !a.is_positive() || a >= &BigRational::one() {
                return Err(Error::ParameterOutOfRange(format!("linear regime needs 0 < a < 1, got {a}")));
            }
            Ok(BigRational::one() / (s * (BigRational::one() - a)))
        }
    }
}

/// The epsilons evaluated by [`classify`].
pub fn classify_epsilons() -> [BigRational; 3] {
    [ratio(1, 10), ratio(1, 15), ratio(1, 20)]
}

fn constructive_witness(n: usize, e: usize, s: u32) -> Option<&'static str> {
    if e == n {
        return Some("hypercube");
    }
    if e == 0 {
        return Some("every point is a codeword");
    }
    bundled_tilings()
        .iter()
        .any(|(p, _)| p.n() == n && p.e() == e && p.s() == Some(s))
        .then_some("bundled verified lattice tiling")
}

/// Runs every criterion on `(n, e, s)`.
pub fn classify(n: usize, e: usize, s: u32) -> Result<ClassificationReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    if e > n {
        return Err(Error::InvalidParameter(format!("e = {e} exceeds n = {n}")));
    }
    let out_of_range = |name: String, why: &str| CriterionOutcome::all(name, Status::HypothesesUnmet, why.to_string());

    let mut criteria = vec![bound_prereq(n, e, s)];
    criteria.push(match bound_small_s(n, e, s) {
        Ok(c) => c,
        Err(_) => out_of_range("small-s".into(), "requires s in {1, 2, 3}"),
    });
    for eps in classify_epsilons() {
        criteria.push(match bound_asymptotic(n, e, s, &eps) {
            Ok(c) => c,
            Err(_) => out_of_range(format!("asymptotic-eps-{eps}"), "requires s in {1, 2}"),
        });
    }
    criteria.push(match bound_large_s(n, e, s, LargeSMode::Displayed) {
        Ok(c) => c,
        Err(_) => out_of_range("large-s".into(), "requires s >= 3"),
    });
    criteria.push(match packing_density_bound(n, e, s) {
        Ok(PackingBound::Bound { value, vacuous }) => CriterionOutcome::all(
            "packing-density",
            if vacuous { Status::Silent } else { Status::Excludes },
            format!("density bound = {value} {} 1", if vacuous { ">=" } else { "<" }),
        ),
        Ok(PackingBound::NotApplicable) => out_of_range("packing-density".into(), "requires (e+1)^2 > 2n"),
        Err(_) => out_of_range("packing-density".into(), "requires e < n"),
    });
    criteria.push(bound_prior_lattice(n, e, s, s));

    let excludes = |scope| criteria.iter().any(|c| c.scope == scope && c.status == Status::Excludes);
    let all_excluded = excludes(Scope::AllTilings);
    let verdict = match constructive_witness(n, e, s) {
        Some(_) => {
            debug_assert!(!all_excluded, "criterion excludes a known tiling at ({n}, {e}, {s})");
            Existence::Exists
        }
        None if all_excluded => Existence::Excluded,
        None => Existence::Open,
    };
    let lattice_excluded = verdict == Existence::Excluded || excludes(Scope::LatticeOnly);
    Ok(ClassificationReport {
        n,
        e,
        s,
        verdict,
        lattice_excluded,
        criteria,
    })
}

#[cfg(test)]
mod tests;
