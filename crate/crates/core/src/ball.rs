//! Limited-magnitude error balls.
//!
//! The ball `B(n, e, k+, k-)` is the set of integer vectors of length `n`
//! with at most `e` nonzero coordinates, each in `[-k-, k+]`. The symmetric
//! ball `V(n, e, s)` is `B(n, e, s, s)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::check_cap;
use crate::error::{Error, Result};
use crate::vector::IntVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BallParams {
    n: usize,
    e: usize,
    kplus: u32,
    kminus: u32,
}

impl BallParams {
    pub fn new(n: usize, e: usize, kplus: u32, kminus: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension n must be positive".into()));
        }
        if e > n {
            return Err(Error::InvalidParameter(format!("e = {e} exceeds n = {n}")));
        }
        if kminus > kplus {
            return Err(Error::InvalidParameter(format!(
                "k- = {kminus} exceeds k+ = {kplus}"
            )));
        }
        if e >= 1 && kplus == 0 {
            return Err(Error::InvalidParameter(
                "k+ and k- cannot both be zero when e >= 1".into(),
            ));
        }
        Ok(BallParams { n, e, kplus, kminus })
    }

    /// The symmetric ball `V(n, e, s)`.
    pub fn symmetric(n: usize, e: usize, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidParameter("magnitude s must be at least 1".into()));
        }
        Self::new(n, e, s, s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn kplus(&self) -> u32 {
        self.kplus
    }

    pub fn kminus(&self) -> u32 {
        self.kminus
    }

    pub fn is_symmetric(&self) -> bool {
        self.kplus == self.kminus
    }

    /// `s` for a symmetric ball.
    pub fn s(&self) -> Option<u32> {
        self.is_symmetric().then_some(self.kplus)
    }

    /// Number of nonzero symbols a single coordinate can take.
    pub fn spread(&self) -> u64 {
        self.kplus as u64 + self.kminus as u64
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        v.dim() == self.n
            && v.weight() <= self.e
            && v
                .coords()
                .iter()
                .all(|&c| c >= -(self.kminus as i64) && c <= self.kplus as i64)
    }
}

impl fmt::Display for BallParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_symmetric() {
            write!(f, "V(n={}, e={}, s={})", self.n, self.e, self.kplus)
        } else {
            write!(
                f,
                "B(n={}, e={}, k+={}, k-={})",
                self.n, self.e, self.kplus, self.kminus
            )
        }
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `sum_{i=0}^{e} C(n, i) (k+ + k-)^i`, exactly.
pub fn ball_volume(params: &BallParams) -> BigUint {
    volume_raw(params.n, params.e, params.spread())
}

fn volume_raw(n: usize, e: usize, spread: u64) -> BigUint {
    let spread = BigUint::from(spread);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for i in 0..=e {
        total += binomial(n, i) * &power;
        power *= &spread;
    }
    total
}

/// Volumes of `V(n, e, s)` for every `e` in `0..=n`.
pub fn symmetric_volumes(n: usize, s: u32) -> Vec<BigUint> {
    let spread = BigUint::from(2 * s as u64);
    let mut out = Vec::with_capacity(n + 1);
    let mut power = BigUint::one();
    let mut total = BigUint::zero();
    for i in 0..=n {
        total += binomial(n, i) * &power;
        power *= &spread;
        out.push(total.clone());
    }
    out
}

/// Ball volume as a `u128`, failing with `CapExceeded` above `cap`.
pub(crate) fn volume_within(params: &BallParams, what: &'static str, cap: u64) -> Result<u128> {
    let vol = ball_volume(params);
    match vol.to_u128() {
        Some(v) => {
            check_cap(what, v, cap)?;
            Ok(v)
        }
        None => Err(Error::CapExceeded {
            what,
            needed: vol.to_string(),
            cap,
        }),
    }
}

/// Streams every vector of the ball exactly once in lexicographic order.
///
/// Fails with `CapExceeded` when the ball volume exceeds `cap`.
pub fn enumerate_ball(params: &BallParams, cap: u64) -> Result<BallIter> {
    volume_within(params, "ball enumeration", cap)?;
    Ok(BallIter::new(*params))
}

/// Lexicographic successor iterator over a ball. A clone continues
/// independently from the same position.
#[derive(Clone, Debug)]
pub struct BallIter {
    params: BallParams,
    current: Option<Vec<i64>>,
}

impl BallIter {
    pub fn new(params: BallParams) -> Self {
        let mut first = vec![0; params.n];
        fill_min_suffix(&mut first, 0, params.e, params.kminus);
        BallIter {
            params,
            current: Some(first),
        }
    }

    fn advance(&mut self, v: &mut [i64]) -> bool {
        let kplus = self.params.kplus as i64;
        let n = v.len();
        // prefix_weight[i] = weight of v[0..i]
        let mut prefix_weight = Vec::with_capacity(n + 1);
        prefix_weight.push(0usize);
        for &c in v.iter() {
            let last = *prefix_weight.last().unwrap();
            prefix_weight.push(last + usize::from(c != 0));
        }
        for i in (0..n).rev() {
            if v[i] >= kplus {
                continue;
            }
            let next = v[i] + 1;
            let w = prefix_weight[i] + usize::from(next != 0);
            if w > self.params.e {
                continue;
            }
            v[i] = next;
            fill_min_suffix(v, i + 1, self.params.e - w, self.params.kminus);
            return true;
        }
        false
    }
}

/// Lexicographically smallest completion of `v[from..]` using at most
/// `budget` nonzero entries.
fn fill_min_suffix(v: &mut [i64], from: usize, budget: usize, kminus: u32) {
    let low = -(kminus as i64);
    let mut left = if kminus == 0 { 0 } else { budget };
    for c in v[from..].iter_mut() {
        if left > 0 {
            *c = low;
            left -= 1;
        } else {
            *c = 0;
        }
    }
}

impl Iterator for BallIter {
    type Item = IntVector;

    fn next(&mut self) -> Option<IntVector> {
        let mut cur = self.current.take()?;
        let out = IntVector::new(cur.clone());
        if self.advance(&mut cur) {
            self.current = Some(cur);
        }
        Some(out)
    }
}

/// Lower bound on `|V(n, e+r, s)| / |V(n, e, s)|`:
/// `((n-e-r+1) / (e+r))^r * (2s)^r`.
///
/// Requires `e + r <= n - 1`, the range on which the single-step bound
/// `(n-e)/(e+1) * 2s` can be chained `r` times.
pub fn volume_ratio_bound(n: usize, e: usize, r: usize, s: u32) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if e + r + 1 > n {
        return Err(Error::HypothesesUnmet(format!(
            "need e + r <= n - 1, got e = {e}, r = {r}, n = {n}"
        )));
    }
    let num = num_traits::pow(BigInt::from(n - e - r + 1) * BigInt::from(2 * s), r);
    let den = num_traits::pow(BigInt::from(e + r), r);
    Ok(BigRational::new(num, den))
}

/// Exact ratio `|V(n, e+r, s)| / |V(n, e, s)|`.
pub fn volume_ratio(n: usize, e: usize, r: usize, s: u32) -> Result<BigRational> {
    let hi = BallParams::symmetric(n, e + r, s)?;
    let lo = BallParams::symmetric(n, e, s)?;
    Ok(BigRational::new(
        BigInt::from(ball_volume(&hi)),
        BigInt::from(ball_volume(&lo)),
    ))
}
