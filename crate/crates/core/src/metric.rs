//! The limited-magnitude distance `d_s` and codes built on it.
//!
//! `d_s(x, y) = N + 2M` where `N` counts coordinates whose difference has
//! magnitude in `[1, s]` and `M` those in `[s+1, 2s]`. If any difference
//! exceeds `2s` the distance is `2n + 1`. No triangle inequality is assumed.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::ball::{ball_volume, enumerate_ball, BallParams};
use crate::caps::{check_cap, Caps};
use crate::error::{Error, Result};
use crate::vector::IntVector;
use crate::weights::symbol_weight;
use num_traits::ToPrimitive;

/// A finite set of pairwise distinct codewords of a common length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Code {
    n: usize,
    words: Vec<IntVector>,
}

impl Code {
    pub fn new(n: usize, words: Vec<IntVector>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            w.check_dim(n)?;
            if !seen.insert(w) {
                return Err(Error::DuplicateCodeword(w.to_string()));
            }
        }
        Ok(Code { n, words })
    }

    /// Builds a code, taking the dimension from the first word.
    pub fn from_words(words: Vec<IntVector>) -> Result<Self> {
        let n = words
            .first()
            .map(IntVector::dim)
            .ok_or_else(|| Error::InvalidParameter("a code needs at least one word".into()))?;
        Self::new(n, words)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[IntVector] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// `d_s(x, y)`.
pub fn ds_distance(x: &IntVector, y: &IntVector, s: u32) -> Result<usize> {
    y.check_dim(x.dim())?;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let mut total = 0usize;
    for (a, b) in x.coords().iter().zip(y.coords()) {
        match symbol_weight(a - b, s) {
            Some(w) => total += w as usize,
            None => return Ok(2 * x.dim() + 1),
        }
    }
    Ok(total)
}

/// Minimum of `d_s` over unordered pairs of distinct codewords.
pub fn min_distance(code: &Code, s: u32) -> Result<usize> {
    if code.len() < 2 {
        return Err(Error::TooFewCodewords(code.len()));
    }
    let words = code.words();
    let mut best = usize::MAX;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            best = best.min(ds_distance(&words[i], &words[j], s)?);
        }
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrectionMethod {
    /// Minimum distance at least `2e + 1`.
    Distance,
    /// Explicit pairwise disjointness of the translated balls.
    Disjointness,
}

/// Whether the code corrects `e` symmetric errors of magnitude at most `s`.
pub fn is_e_correcting(
    code: &Code,
    e: usize,
    s: u32,
    method: CorrectionMethod,
    caps: &Caps,
) -> Result<bool> {
    let params = BallParams::symmetric(code.n(), e, s)?;
    match method {
        CorrectionMethod::Distance => {
            if code.len() < 2 {
                return Ok(true);
            }
            Ok(min_distance(code, s)? >= 2 * e + 1)
        }
        CorrectionMethod::Disjointness => {
            let vol = ball_volume(&params).to_u128().unwrap_or(u128::MAX);
            check_cap(
                "disjointness check",
                vol.saturating_mul(code.len() as u128),
                caps.disjointness_cells,
            )?;
            Ok(first_overlap(code.words(), &params)?.is_none())
        }
    }
}

/// First cell covered by two translated balls, in codeword order.
fn first_overlap(centers: &[IntVector], params: &BallParams) -> Result<Option<IntVector>> {
    let ball: Vec<IntVector> = enumerate_ball(params, u64::MAX)?.collect();
    let mut covered = HashSet::with_capacity(ball.len() * centers.len());
    for c in centers {
        for b in &ball {
            let cell = c + b;
            if covered.contains(&cell) {
                return Ok(Some(cell));
            }
            covered.insert(cell);
        }
    }
    Ok(None)
}

/// Outcome of comparing the difference set of a ball with a `d_s` ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equal: bool,
    /// A vector in exactly one of the two sets.
    pub witness: Option<IntVector>,
    pub difference_count: usize,
    pub distance_ball_count: usize,
}

/// Compares `{e1 - e2 : e1, e2 in V(n,t,s)}` with
/// `{v in [-2s, 2s]^n : d_s(v, 0) <= 2t}` by brute force.
pub fn difference_set_equivalence(n: usize, t: usize, s: u32, caps: &Caps) -> Result<EquivalenceReport> {
    let params = BallParams::symmetric(n, t, s)?;
    let vol = ball_volume(&params).to_u128().unwrap_or(u128::MAX);
    check_cap(
        "difference-set equivalence",
        vol.saturating_mul(vol),
        caps.equivalence_pairs,
    )?;
    let side = 4 * s as u128 + 1;
    check_cap(
        "difference-set equivalence box",
        side.checked_pow(n as u32).unwrap_or(u128::MAX),
        caps.equivalence_pairs,
    )?;

    let ball: Vec<IntVector> = enumerate_ball(&params, u64::MAX)?.collect();
    let mut differences = HashSet::new();
    for a in &ball {
        for b in &ball {
            differences.insert(a - b);
        }
    }

    let origin = IntVector::zeros(n);
    let box_params = BallParams::symmetric(n, n, 2 * s)?;
    let mut distance_ball = HashSet::new();
    for v in enumerate_ball(&box_params, u64::MAX)? {
        if ds_distance(&v, &origin, s)? <= 2 * t {
            distance_ball.insert(v);
        }
    }

    let witness = differences
        .symmetric_difference(&distance_ball)
        .min()
        .cloned();
    Ok(EquivalenceReport {
        equal: witness.is_none(),
        witness,
        difference_count: differences.len(),
        distance_ball_count: distance_ball.len(),
    })
}
