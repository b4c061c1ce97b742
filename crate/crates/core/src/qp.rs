//! The per-coordinate quadratic program behind the average-distance
//! argument.
//!
//! A coordinate of a code with symbols in `[-s, s]` is summarized by the
//! counts `p_x` of each symbol; the ordered pairwise distance contributed by
//! that coordinate is `f_s(p) = p D_s p^T`. With the count at 0 fixed to
//! `K - a`, closed-form maxima exist for `s <= 3`. The oracles here search
//! the same feasible set independently.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{ds_distance, Code};
use crate::weights::ds_matrix;

/// Symbol counts `p_x` for `x` in `[-s, s]`, stored at index `x + s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolDistribution<T> {
    s: u32,
    counts: Vec<T>,
}

impl<T: Num + Clone + PartialOrd> SymbolDistribution<T> {
    pub fn new(s: u32, counts: Vec<T>) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidS(s));
        }
        if counts.len() != 2 * s as usize + 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * s as usize + 1,
                got: counts.len(),
            });
        }
        if counts.iter().any(|c| c < &T::zero()) {
            return Err(Error::InvalidParameter("symbol counts must be nonnegative".into()));
        }
        Ok(SymbolDistribution { s, counts })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn counts(&self) -> &[T] {
        &self.counts
    }

    /// Count of symbol `x`.
    pub fn count(&self, x: i64) -> &T {
        &self.counts[(x + self.s as i64) as usize]
    }

    /// `K`, the number of codewords.
    pub fn total(&self) -> T {
        self.counts.iter().cloned().fold(T::zero(), |acc, c| acc + c)
    }

    /// `a`, the mass on nonzero symbols.
    pub fn nonzero_mass(&self) -> T {
        self.total() - self.count(0).clone()
    }

    /// Mass on negative symbols.
    pub fn negative_mass(&self) -> T {
        self.counts[..self.s as usize].iter().cloned().fold(T::zero(), |acc, c| acc + c)
    }

    /// Mass on positive symbols.
    pub fn positive_mass(&self) -> T {
        self.counts[self.s as usize + 1..].iter().cloned().fold(T::zero(), |acc, c| acc + c)
    }

    /// The distribution under `x -> -x`.
    pub fn mirrored(&self) -> Self {
        let mut counts = self.counts.clone();
        counts.reverse();
        SymbolDistribution { s: self.s, counts }
    }
}

/// `f_s(p) = p D_s p^T`.
pub fn f_value<T: Num + Clone + PartialOrd>(p: &SymbolDistribution<T>) -> T {
    let d = ds_matrix(p.s).expect("distribution has s >= 1");
    let mut total = T::zero();
    for (i, pi) in p.counts.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (j, pj) in p.counts.iter().enumerate() {
            let prod = pi.clone() * pj.clone();
            for _ in 0..d.at(i, j) {
                total = total + prod.clone();
            }
        }
    }
    total
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn check_mass<T: PartialOrd + Zero>(k: &T, a: &T) -> Result<()> {
    if a < &T::zero() || a > k {
        return Err(Error::ParameterOutOfRange("need 0 <= a <= K".into()));
    }
    Ok(())
}

/// Maximum of `f_s` over distributions with total `K` and nonzero mass
/// `a`, with its maximizer, for `s` in {1, 2, 3}.
pub fn f_max_closed(s: u32, k: &BigRational, a: &BigRational) -> Result<(BigRational, SymbolDistribution<BigRational>)> {
    check_mass(k, a)?;
    let two_ka = rat(2, 1) * k * a;
    let a2 = a * a;
    let z = BigRational::zero();
    let rest = k - a;
    let (value, counts) = match s {
        1 => {
            let h = a * rat(1, 2);
            (two_ka - a2, vec![h.clone(), rest, h])
        }
        2 => {
            let outer = a * rat(1, 3);
            let inner = a * rat(1, 6);
            (
                two_ka - a2 * rat(5, 6),
                vec![outer.clone(), inner.clone(), rest, inner, outer],
            )
        }
        3 => {
            let q = a * rat(1, 4);
            (
                two_ka - a2 * rat(3, 4),
                vec![q.clone(), q.clone(), z.clone(), rest, z, q.clone(), q],
            )
        }
        _ => return Err(Error::InvalidS(s)),
    };
    Ok((value, SymbolDistribution { s, counts }))
}

/// Best value found by an oracle and a distribution attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult<T> {
    pub value: T,
    pub argmax: SymbolDistribution<T>,
}

/// Default grid resolution: 60 steps per free dimension for `s <= 2`, 30
/// for larger `s`.
pub fn default_resolution(s: u32) -> u32 {
    if s <= 2 {
        60
    } else {
        30
    }
}

const ASCENT_ROUNDS: usize = 200;

fn f_value_f64(s: u32, nonzero: &[f64], zero_count: f64, d: &[Vec<u8>]) -> f64 {
    let s = s as usize;
    let mut full = Vec::with_capacity(2 * s + 1);
    full.extend_from_slice(&nonzero[..s]);
    full.push(zero_count);
    full.extend_from_slice(&nonzero[s..]);
    let mut total = 0.0;
    for (i, pi) in full.iter().enumerate() {
        for (j, pj) in full.iter().enumerate() {
            total += d[i][j] as f64 * pi * pj;
        }
    }
    total
}

/// Calls `visit` on every composition of `total` into `parts` nonnegative
/// parts, in lexicographic order.
fn for_each_composition(total: u32, parts: usize, prefix: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if parts == 1 {
        prefix.push(total);
        visit(prefix);
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        for_each_composition(total - first, parts - 1, prefix, visit);
        prefix.pop();
    }
}

fn better(a: &(f64, Vec<u32>), b: &(f64, Vec<u32>)) -> bool {
    match a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1 < b.1,
    }
}

/// Grid search over the nonzero-symbol simplex followed by pairwise mass
/// transfers with a shrinking step.
pub fn f_max_oracle_continuous(s: u32, k: f64, a: f64, resolution: u32) -> Result<OracleResult<f64>> {
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    if resolution == 0 {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    if !(k.is_finite() && a.is_finite()) {
        return Err(Error::InvalidParameter("K and a must be finite".into()));
    }
    check_mass(&k, &a)?;
    let d = ds_matrix(s)?;
    let rows = d.rows().to_vec();
    let parts = 2 * s as usize;
    let zero_count = k - a;
    let step = a / resolution as f64;

    let grid_best = (0..=resolution)
        .into_par_iter()
        .map(|first| {
            let mut best: Option<(f64, Vec<u32>)> = None;
            let mut prefix = vec![first];
            let mut visit = |c: &[u32]| {
                let point: Vec<f64> = c.iter().map(|&x| x as f64 * step).collect();
                let cand = (f_value_f64(s, &point, zero_count, &rows), c.to_vec());
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    best = Some(cand);
                }
            };
            for_each_composition(resolution - first, parts - 1, &mut prefix, &mut visit);
            best
        })
        .flatten()
        .reduce_with(|x, y| if better(&y, &x) { y } else { x })
        .expect("the grid is nonempty");

    let mut point: Vec<f64> = grid_best.1.iter().map(|&x| x as f64 * step).collect();
    let mut value = grid_best.0;
    let mut delta = step;
    for _ in 0..ASCENT_ROUNDS {
        if delta <= 0.0 {
            break;
        }
        let mut improved = false;
        for from in 0..parts {
            for to in 0..parts {
                if from == to {
                    continue;
                }
                let moved = delta.min(point[from]);
                if moved <= 0.0 {
                    continue;
                }
                point[from] -= moved;
                point[to] += moved;
                let v = f_value_f64(s, &point, zero_count, &rows);
                if v > value {
                    value = v;
                    improved = true;
                } else {
                    point[to] -= moved;
                    point[from] += moved;
                }
            }
        }
        if !improved {
            delta /= 2.0;
        }
    }

    let su = s as usize;
    let mut counts = point[..su].to_vec();
    counts.push(zero_count);
    counts.extend_from_slice(&point[su..]);
    Ok(OracleResult {
        value,
        argmax: SymbolDistribution { s, counts },
    })
}

/// Largest `K` accepted by [`f_max_integer_exhaustive`].
pub const INTEGER_EXHAUSTIVE_MAX_K: i64 = 12;

/// Exhaustive maximum of `f_s` over integer distributions with total `K`
/// and nonzero mass `a`.
pub fn f_max_integer_exhaustive(s: u32, k: i64, a: i64) -> Result<OracleResult<i64>> {
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    if k > INTEGER_EXHAUSTIVE_MAX_K {
        return Err(Error::ParameterOutOfRange(format!(
            "integer search supports K <= {INTEGER_EXHAUSTIVE_MAX_K}, got {k}"
        )));
    }
    check_mass(&k, &a)?;
    let su = s as usize;
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut prefix = Vec::new();
    for_each_composition(a as u32, 2 * su, &mut prefix, &mut |c| {
        let mut counts: Vec<i64> = c[..su].iter().map(|&x| x as i64).collect();
        counts.push(k - a);
        counts.extend(c[su..].iter().map(|&x| x as i64));
        let v = f_value(&SymbolDistribution { s, counts: counts.clone() });
        if best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, counts));
        }
    });
    let (value, counts) = best.expect("at least one composition");
    Ok(OracleResult {
        value,
        argmax: SymbolDistribution { s, counts },
    })
}

/// Maximum of `f_s` when every nonzero symbol is used at most once: `a` of
/// the `2s` nonzero symbols get count 1 and symbol 0 gets `K - a`.
pub fn f_max_oracle_binary(s: u32, k: i64, a: i64) -> Result<OracleResult<i64>> {
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    let slots = 2 * s as i64;
    if a < 0 || a > slots {
        return Err(Error::ParameterOutOfRange(format!("need 0 <= a <= 2s = {slots}, got {a}")));
    }
    if k < a {
        return Err(Error::ParameterOutOfRange(format!("need K >= a, got K = {k}, a = {a}")));
    }
    let su = s as usize;
    let mut best: Option<(i64, Vec<i64>)> = None;
    for mask in 0u64..(1u64 << slots) {
        if mask.count_ones() as i64 != a {
            continue;
        }
        let bit = |i: usize| ((mask >> i) & 1) as i64;
        let mut counts: Vec<i64> = (0..su).map(bit).collect();
        counts.push(k - a);
        counts.extend((su..2 * su).map(bit));
        let v = f_value(&SymbolDistribution { s, counts: counts.clone() });
        if best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, counts));
        }
    }
    let (value, counts) = best.expect("C(2s, a) >= 1");
    Ok(OracleResult {
        value,
        argmax: SymbolDistribution { s, counts },
    })
}

/// Piecewise quadratic envelope of the 0/1 problem:
/// `-3x^2/2 + 2(K+s)x - s^2 - s` for `x >= s`, `-x^2/2 + (2K-1)x` below.
pub fn g_envelope(x: &BigRational, k: i64, s: u32) -> BigRational {
    let kk = BigRational::from_integer(k.into());
    let ss = BigRational::from_integer(s.into());
    let x2 = x * x;
    if x >= &ss {
        -(rat(3, 2) * x2) + rat(2, 1) * (&kk + &ss) * x - &ss * &ss - ss
    } else {
        -(rat(1, 2) * x2) + (rat(2, 1) * kk - BigRational::one()) * x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AvgBoundVariant {
    First,
    Second,
}

/// Upper bound on the average distance among `K >= 2` codewords of a
/// perfect code inside a ball of radius `e + 1`.
///
/// The second variant needs `3K(e+1) > (3s+1)n`.
pub fn avg_distance_bound(n: usize, e: usize, k: u64, s: u32, variant: AvgBoundVariant) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need K >= 2, got {k}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let big = |x: u64| BigInt::from(x);
    let (n_b, e1, kk, s_b) = (big(n as u64), big(e as u64 + 1), big(k), big(s as u64));
    let km1: BigInt = &kk - 1;
    let r = |num: BigInt, den: BigInt| BigRational::new(num, den);
    match variant {
        AvgBoundVariant::First => Ok(r((BigInt::from(2) * &kk - 1) * &e1, km1.clone())
            - r(&kk * &e1 * &e1, BigInt::from(2) * &km1 * &n_b)),
        AvgBoundVariant::Second => {
            if BigInt::from(3) * &kk * &e1 <= (BigInt::from(3) * &s_b + 1) * &n_b {
                return Err(Error::HypothesesUnmet(format!(
                    "3K(e+1) = {} must exceed (3s+1)n = {}",
                    BigInt::from(3) * &kk * &e1,
                    (BigInt::from(3) * &s_b + 1) * &n_b
                )));
            }
            Ok(r(BigInt::from(2) * (&kk + &s_b) * &e1, km1.clone())
                - r(BigInt::from(3) * &kk * &e1 * &e1, BigInt::from(2) * &km1 * &n_b)
                - r(&n_b * (&s_b * &s_b + &s_b), &kk * &km1))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Sum of `d_s` over ordered pairs of distinct codewords.
    pub pair_sum: u128,
    /// Sum over coordinates of `f_s` of the symbol counts.
    pub form_sum: u128,
    pub equal: bool,
}

/// Computes the ordered pairwise distance sum both directly and as a sum of
/// per-coordinate quadratic forms. Codewords must lie in `[-s, s]^n`.
pub fn distance_decomposition(code: &Code, s: u32) -> Result<Decomposition> {
    if s == 0 {
        return Err(Error::InvalidS(s));
    }
    let bound = s as i64;
    for w in code.words() {
        if w.max_abs() > bound {
            return Err(Error::PreconditionViolated(format!("codeword {w} lies outside [-{s}, {s}]^n")));
        }
    }
    let words = code.words();
    let mut pair_sum = 0u128;
    for (i, x) in words.iter().enumerate() {
        for (j, y) in words.iter().enumerate() {
            if i != j {
                pair_sum += ds_distance(x, y, s)? as u128;
            }
        }
    }
    let mut form_sum = 0u128;
    for coord in 0..code.n() {
        let mut counts = vec![0i64; 2 * s as usize + 1];
        for w in words {
            counts[(w[coord] + bound) as usize] += 1;
        }
        form_sum += f_value(&SymbolDistribution { s, counts }) as u128;
    }
    Ok(Decomposition {
        pair_sum,
        form_sum,
        equal: pair_sum == form_sum,
    })
}
