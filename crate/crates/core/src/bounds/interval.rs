//! Outward-rounded `f64` intervals for log-based thresholds.
//!
//! Each arithmetic result is widened by one ulp on both sides, and `log2`
//! and `sqrt` results by two, so the true value always lies inside.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

const EXACT_INT_LIMIT: u128 = 1 << 53;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn widen(lo: f64, hi: f64, ulps: u32) -> Interval {
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..ulps {
        lo = lo.next_down();
        hi = hi.next_up();
    }
    Interval { lo, hi }
}

/// Where an exact quantity sits relative to an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    Below,
    Inside,
    Above,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn from_u128(x: u128) -> Self {
        let f = x as f64;
        if x <= EXACT_INT_LIMIT {
            Interval { lo: f, hi: f }
        } else {
            widen(f, f, 1)
        }
    }

    pub fn from_u64(x: u64) -> Self {
        Self::from_u128(x as u128)
    }

    fn from_bigint(x: &BigInt) -> Self {
        match x.abs().to_u128() {
            Some(m) if m <= EXACT_INT_LIMIT => {
                let f = m as f64;
                let f = if x.is_negative() { -f } else { f };
                Interval { lo: f, hi: f }
            }
            _ => {
                let f = x.to_f64().expect("finite integer");
                widen(f, f, 1)
            }
        }
    }

    /// Encloses an exact rational.
    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_bigint(r.numer()) / Self::from_bigint(r.denom())
    }

    pub fn log2(self) -> Self {
        assert!(self.lo > 0.0, "log2 of a non-positive interval");
        widen(self.lo.log2(), self.hi.log2(), 2)
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of a negative interval");
        widen(self.lo.sqrt(), self.hi.sqrt(), 2).clamp_nonneg()
    }

    fn clamp_nonneg(self) -> Self {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Position of an exact nonnegative integer relative to the interval.
    pub fn locate_u128(&self, x: u128) -> Position {
        let xi = Interval::from_u128(x);
        if xi.hi < self.lo {
            Position::Below
        } else if xi.lo > self.hi {
            Position::Above
        } else {
            Position::Inside
        }
    }

    /// `x >= value` for every value in the interval.
    pub fn surely_le_u128(&self, x: u128) -> bool {
        let xi = Interval::from_u128(x);
        xi.lo >= self.hi
    }

    /// `x < value` for every value in the interval.
    pub fn surely_gt_u128(&self, x: u128) -> bool {
        let xi = Interval::from_u128(x);
        xi.hi < self.lo
    }

    /// Smallest value with two decimals that is at least `hi`.
    pub fn round_up_2dp(&self) -> f64 {
        let scaled = (self.hi * 100.0).next_up().ceil();
        scaled / 100.0
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        widen(self.lo + o.lo, self.hi + o.hi, 1)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        widen(self.lo - o.hi, self.hi - o.lo, 1)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        widen(lo, hi, 1)
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing zero");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        widen(lo, hi, 1)
    }
}

/// `log2` of an exact positive rational.
pub fn log2_rational(r: &BigRational) -> Interval {
    assert!(r.is_positive() && !r.is_zero());
    Interval::from_bigint(r.numer()).log2() - Interval::from_bigint(r.denom()).log2()
}
