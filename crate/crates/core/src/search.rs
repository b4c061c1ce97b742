//! Small-scale exhaustive search for lattice tilings and finite-window
//! checks for arbitrary translate sets.
//!
//! Sublattices are enumerated in row Hermite normal form: upper triangular,
//! positive diagonal with product equal to the index, and every entry above
//! a diagonal entry `d_j` reduced into `[0, d_j)`. Each sublattice of `Z^n`
//! has exactly one such basis.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball::{ball_volume, enumerate_ball, BallParams};
use crate::caps::{check_cap, Caps};
use crate::error::{Error, Result};
use crate::lattice::{to_big, verify_lattice_tiling, Lattice, Verdict};
use crate::vector::IntVector;

/// Largest dimension the sublattice enumerator accepts.
pub const MAX_SEARCH_DIM: usize = 4;

/// All ordered factorizations of `index` into `parts` positive factors,
/// lexicographically ascending.
fn ordered_factorizations(index: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![index]];
    }
    let mut out = Vec::new();
    for d in 1..=index {
        if !index.is_multiple_of(d) {
            continue;
        }
        for mut rest in ordered_factorizations(index / d, parts - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// Streams one HNF basis per sublattice of the given index, ascending by
/// diagonal and then by the row-major off-diagonal entries.
#[derive(Clone, Debug)]
pub struct SublatticeIter {
    n: usize,
    diagonals: Vec<Vec<u64>>,
    next_diag: usize,
    current: Option<(Vec<u64>, Vec<u64>)>,
}

impl SublatticeIter {
    /// Off-diagonal positions `(i, j)`, `j > i`, in row-major order.
    fn positions(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    fn build(&self, diag: &[u64], off: &[u64]) -> Lattice {
        let n = self.n;
        let mut gen = vec![vec![0i64; n]; n];
        for i in 0..n {
            gen[i][i] = diag[i] as i64;
        }
        for ((i, j), &h) in Self::positions(n).zip(off) {
            gen[i][j] = h as i64;
        }
        Lattice::new(gen).expect("HNF basis with positive diagonal is nonsingular")
    }
}

impl Iterator for SublatticeIter {
    type Item = Lattice;

    fn next(&mut self) -> Option<Lattice> {
        if self.current.is_none() {
            let diag = self.diagonals.get(self.next_diag)?.clone();
            self.next_diag += 1;
            let slots = self.n * (self.n - 1) / 2;
            self.current = Some((diag, vec![0; slots]));
        }
        let (diag, off) = self.current.clone()?;
        let out = self.build(&diag, &off);

        // advance the off-diagonal odometer; entry (i, j) runs over [0, d_j)
        let limits: Vec<u64> = Self::positions(self.n).map(|(_, j)| diag[j]).collect();
        let mut next = off;
        let mut k = next.len();
        let mut carried_out = true;
        while k > 0 {
            k -= 1;
            if next[k] + 1 < limits[k] {
                next[k] += 1;
                for x in next[k + 1..].iter_mut() {
                    *x = 0;
                }
                carried_out = false;
                break;
            }
        }
        self.current = if carried_out { None } else { Some((diag, next)) };
        Some(out)
    }
}

/// Every sublattice of `Z^n` of the given index, as HNF bases.
pub fn enumerate_sublattices(n: usize, index: u64, caps: &Caps) -> Result<SublatticeIter> {
    if n == 0 || n > MAX_SEARCH_DIM {
        return Err(Error::ParameterOutOfRange(format!(
            "sublattice enumeration supports 1 <= n <= {MAX_SEARCH_DIM}, got {n}"
        )));
    }
    if index == 0 {
        return Err(Error::InvalidParameter("index must be positive".into()));
    }
    check_cap("sublattice enumeration", index as u128, caps.sublattice_index)?;
    Ok(SublatticeIter {
        n,
        diagonals: ordered_factorizations(index, n),
        next_diag: 0,
        current: None,
    })
}

/// Row Hermite normal form of a lattice basis.
pub fn hermite_normal_form(lattice: &Lattice) -> Result<Lattice> {
    let n = lattice.n();
    let mut a = to_big(lattice.gen());
    for j in 0..n {
        for i in j + 1..n {
            while !a[i][j].is_zero() {
                let q = a[j][j].div_floor(&a[i][j]);
                let src = a[i].clone();
                for (d, s) in a[j].iter_mut().zip(&src) {
                    *d -= &q * s;
                }
                a.swap(i, j);
            }
        }
        if a[j][j].is_negative() {
            for x in a[j].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = a[j].clone();
        for row in a.iter_mut().take(j) {
            let q = row[j].div_floor(&pivot_row[j]);
            for (d, s) in row.iter_mut().zip(&pivot_row) {
                *d -= &q * s;
            }
        }
    }
    let gen = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64().ok_or_else(|| {
                        Error::ParameterOutOfRange("HNF entry does not fit in 64 bits".into())
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Lattice::new(gen)
}

/// Sort key matching the enumeration order: diagonal, then row-major
/// off-diagonal entries.
pub fn hnf_order_key(hnf: &Lattice) -> (Vec<i64>, Vec<i64>) {
    let g = hnf.gen();
    let n = g.len();
    let diag = (0..n).map(|i| g[i][i]).collect();
    let off = (0..n).flat_map(|i| (i + 1..n).map(move |j| g[i][j])).collect();
    (diag, off)
}

/// Reduces `v` modulo an HNF basis into the box `prod [0, d_i)`.
pub fn hnf_reduce(hnf: &Lattice, v: &IntVector) -> IntVector {
    let g = hnf.gen();
    let mut w = v.coords().to_vec();
    for i in 0..g.len() {
        let q = w[i].div_euclid(g[i][i]);
        if q != 0 {
            for (x, &h) in w.iter_mut().zip(&g[i]) {
                *x -= q * h;
            }
        }
    }
    IntVector::new(w)
}

/// All HNF lattices of index `|B|` that tile `Z^n` by the ball, in
/// canonical order.
pub fn search_perfect_lattices(params: &BallParams, caps: &Caps) -> Result<Vec<Lattice>> {
    let vol = ball_volume(params);
    let index = vol.to_u64().ok_or_else(|| Error::CapExceeded {
        what: "sublattice enumeration",
        needed: vol.to_string(),
        cap: caps.sublattice_index,
    })?;
    let candidates = enumerate_sublattices(params.n(), index, caps)?;
    let cap = caps.enumeration;
    let mut found: Vec<Lattice> = candidates
        .par_bridge()
        .map(|l| verify_lattice_tiling(&l, params, cap).map(|r| (l, r.verdict)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, v)| *v == Verdict::Tiles)
        .map(|(l, _)| l)
        .collect();
    found.sort_by_key(hnf_order_key);
    Ok(found)
}

fn window_side(window: u64) -> u64 {
    2 * window + 1
}

/// Lattice points in `[-window, window]^n`, by back-substitution on the
/// HNF basis.
pub fn lattice_points_in_window(lattice: &Lattice, window: u64, caps: &Caps) -> Result<Vec<IntVector>> {
    let hnf = hermite_normal_form(lattice)?;
    let g = hnf.gen().to_vec();
    let n = g.len();
    let w = window as i64;
    let mut out = Vec::new();
    let mut partial = vec![0i64; n];
    collect_points(&g, 0, &mut partial, w, &mut out, caps.window_cells)?;
    out.sort();
    Ok(out)
}

fn collect_points(
    g: &[Vec<i64>],
    row: usize,
    partial: &mut Vec<i64>,
    w: i64,
    out: &mut Vec<IntVector>,
    cap: u64,
) -> Result<()> {
    let n = g.len();
    if row == n {
        check_cap("window lattice points", out.len() as u128 + 1, cap)?;
        out.push(IntVector::new(partial.clone()));
        return Ok(());
    }
    // coordinate `row` is partial[row] + c * d_row, later rows leave it fixed
    let d = g[row][row];
    let base = partial[row];
    let lo = Integer::div_ceil(&(-w - base), &d);
    let hi = Integer::div_floor(&(w - base), &d);
    for c in lo..=hi {
        for (p, &h) in partial.iter_mut().zip(&g[row]) {
            *p += c * h;
        }
        collect_points(g, row + 1, partial, w, out, cap)?;
        for (p, &h) in partial.iter_mut().zip(&g[row]) {
            *p -= c * h;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub disjoint: bool,
    /// A window cell covered by two translated balls.
    pub witness: Option<IntVector>,
    pub translates: usize,
}

/// Checks that the balls around `translates` are pairwise disjoint inside
/// `[-window, window]^n`.
pub fn verify_window_packing(
    translates: &[IntVector],
    params: &BallParams,
    window: u64,
    caps: &Caps,
) -> Result<WindowReport> {
    for t in translates {
        t.check_dim(params.n())?;
    }
    let vol = ball_volume(params).to_u128().unwrap_or(u128::MAX);
    check_cap(
        "window packing check",
        vol.saturating_mul(translates.len() as u128),
        caps.window_cells,
    )?;
    let ball: Vec<IntVector> = enumerate_ball(params, u64::MAX)?.collect();
    let w = window as i64;
    let mut covered = HashSet::new();
    for t in translates {
        for b in &ball {
            let cell = t + b;
            if cell.max_abs() > w {
                continue;
            }
            if !covered.insert(cell.clone()) {
                return Ok(WindowReport {
                    disjoint: false,
                    witness: Some(cell),
                    translates: translates.len(),
                });
            }
        }
    }
    Ok(WindowReport {
        disjoint: true,
        witness: None,
        translates: translates.len(),
    })
}

/// Where the translate set for a density estimate comes from.
#[derive(Clone, Copy, Debug)]
pub enum PointSet<'a> {
    Lattice(&'a Lattice),
    Translates(&'a [IntVector]),
}

/// `|T ∩ [-L, L]^n| * |B| / (2L + 1)^n`.
///
/// The window estimate differs from the limiting density by `O(1/L)`;
/// [`tiling_window_bounds`] and [`lattice_window_bounds`] give exact
/// sandwiches for it.
pub fn estimate_density(points: PointSet<'_>, params: &BallParams, window: u64, caps: &Caps) -> Result<BigRational> {
    let count = match points {
        PointSet::Lattice(l) => {
            if l.n() != params.n() {
                return Err(Error::DimensionMismatch {
                    expected: params.n(),
                    got: l.n(),
                });
            }
            lattice_points_in_window(l, window, caps)?.len()
        }
        PointSet::Translates(ts) => {
            for t in ts {
                t.check_dim(params.n())?;
            }
            let w = window as i64;
            ts.iter().filter(|t| t.max_abs() <= w).count()
        }
    };
    let cells = num_traits::pow(BigInt::from(window_side(window)), params.n());
    Ok(BigRational::new(
        BigInt::from(count) * BigInt::from(ball_volume(params)),
        cells,
    ))
}

/// Exact lower and upper bounds on a window estimate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensitySandwich {
    pub lower: BigRational,
    pub upper: BigRational,
}

impl DensitySandwich {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }
}

/// Bounds on the window estimate of any tiling by the ball: balls centred
/// in the window cover the inner box shrunk by the ball's reach and stay
/// inside the outer box grown by it.
pub fn tiling_window_bounds(params: &BallParams, window: u64) -> DensitySandwich {
    let side = window_side(window) as i64;
    let reach = params.spread() as i64;
    let n = params.n();
    let denom = num_traits::pow(BigInt::from(side), n);
    let inner = num_traits::pow(BigInt::from((side - reach).max(0)), n);
    let outer = num_traits::pow(BigInt::from(side + reach), n);
    DensitySandwich {
        lower: BigRational::new(inner, denom.clone()),
        upper: BigRational::new(outer, denom),
    }
}

/// Bounds on the window estimate of a lattice packing, from the tiling of
/// `Z^n` by translates of the HNF box `prod [0, d_i)`.
pub fn lattice_window_bounds(lattice: &Lattice, params: &BallParams, window: u64) -> Result<DensitySandwich> {
    let hnf = hermite_normal_form(lattice)?;
    let side = window_side(window) as i64;
    let mut inner = BigInt::one();
    let mut outer = BigInt::one();
    for (i, row) in hnf.gen().iter().enumerate() {
        let d = row[i];
        inner *= BigInt::from((side + 1 - d).max(0));
        outer *= BigInt::from(side - 1 + d);
    }
    let denom = num_traits::pow(BigInt::from(side), params.n()) * BigInt::from(hnf.det_abs().clone());
    let vol = BigInt::from(ball_volume(params));
    Ok(DensitySandwich {
        lower: BigRational::new(&vol * inner, denom.clone()),
        upper: BigRational::new(vol * outer, denom),
    })
}

/// Tilings shipped with the crate. Each entry is re-verified by the tests.
pub fn bundled_tilings() -> Vec<(BallParams, Lattice)> {
    let entries: &[(usize, usize, u32, &str)] = &[
        (2, 1, 1, "1,2;2,-1"),
        (3, 1, 1, "1,0,2;0,1,3;0,0,7"),
        (4, 1, 1, "1,0,0,2;0,1,0,3;0,0,1,4;0,0,0,9"),
    ];
    entries
        .iter()
        .map(|&(n, e, s, gen)| {
            (
                BallParams::symmetric(n, e, s).expect("valid bundled parameters"),
                gen.parse().expect("valid bundled lattice"),
            )
        })
        .collect()
}

/// Converts a rational to `f64` for display.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let num = r.numer().to_f64().unwrap_or(f64::NAN);
    let den = r.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_density;
    use num_bigint::BigUint;

    fn lat(s: &str) -> Lattice {
        s.parse().unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn factorizations() {
        assert_eq!(ordered_factorizations(6, 2), vec![vec![1, 6], vec![2, 3], vec![3, 2], vec![6, 1]]);
        assert_eq!(ordered_factorizations(5, 1), vec![vec![5]]);
        assert_eq!(ordered_factorizations(1, 3), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn index_five_in_the_plane() {
        let got: Vec<String> = enumerate_sublattices(2, 5, &Caps::default())
            .unwrap()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(got, vec!["1,0;0,5", "1,1;0,5", "1,2;0,5", "1,3;0,5", "1,4;0,5", "5,0;0,1"]);
    }

    #[test]
    fn trivial_enumerations() {
        let one: Vec<Lattice> = enumerate_sublattices(1, 9, &Caps::default()).unwrap().collect();
        assert_eq!(one, vec![lat("9")]);
        let z2: Vec<Lattice> = enumerate_sublattices(2, 1, &Caps::default()).unwrap().collect();
        assert_eq!(z2, vec![lat("1,0;0,1")]);
    }

    /// Number of index-m sublattices of Z^n: sum over d_1...d_n = m of
    /// prod_j d_j^(j) (0-based j), checked against the multiplicative
    /// closed form for n = 2 (sigma) and n = 3.
    #[test]
    fn sublattice_counts() {
        let caps = Caps::default();
        let sigma = |m: u64| (1..=m).filter(|d| m % d == 0).sum::<u64>();
        for m in 1..=40u64 {
            assert_eq!(enumerate_sublattices(2, m, &caps).unwrap().count() as u64, sigma(m));
        }
        // n = 3, prime p: 1 + p + p^2 + ... counts p^2 + p + 1
        for p in [2u64, 3, 5, 7] {
            assert_eq!(enumerate_sublattices(3, p, &caps).unwrap().count() as u64, p * p + p + 1);
        }
    }

    #[test]
    fn sublattices_distinct_with_requested_index() {
        let caps = Caps::default();
        for n in 1..=3 {
            for m in [4u64, 6, 12] {
                let all: Vec<Lattice> = enumerate_sublattices(n, m, &caps).unwrap().collect();
                let set: HashSet<String> = all.iter().map(|l| l.to_string()).collect();
                assert_eq!(set.len(), all.len());
                for l in &all {
                    assert_eq!(l.det_abs(), &BigUint::from(m));
                    assert_eq!(&hermite_normal_form(l).unwrap(), l);
                }
                let keys: Vec<_> = all.iter().map(hnf_order_key).collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn enumeration_guards() {
        let caps = Caps::default();
        assert!(matches!(enumerate_sublattices(5, 2, &caps), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(enumerate_sublattices(2, 10_001, &caps), Err(Error::CapExceeded { .. })));
        assert!(enumerate_sublattices(2, 0, &caps).is_err());
    }

    #[test]
    fn hnf_of_cross_lattice() {
        assert_eq!(hermite_normal_form(&lat("1,2;2,-1")).unwrap(), lat("1,2;0,5"));
        assert_eq!(hermite_normal_form(&lat("0,5;1,2")).unwrap(), lat("1,2;0,5"));
        assert_eq!(hermite_normal_form(&lat("-3,0;0,-3")).unwrap(), lat("3,0;0,3"));
    }

    #[test]
    fn hnf_reduction_agrees_with_membership() {
        let l = lat("2,1,0;1,3,1;0,1,4");
        let hnf = hermite_normal_form(&l).unwrap();
        for x in -4..=4 {
            for y in -4..=4 {
                for z in -4..=4 {
                    let v = IntVector::new(vec![x, y, z]);
                    let r = hnf_reduce(&hnf, &v);
                    assert_eq!(r.coords().iter().all(|&c| c == 0), l.contains(&v));
                    for (i, &c) in r.coords().iter().enumerate() {
                        assert!(c >= 0 && c < hnf.gen()[i][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn cross_search() {
        let p = BallParams::symmetric(2, 1, 1).unwrap();
        let found = search_perfect_lattices(&p, &Caps::default()).unwrap();
        let names: Vec<String> = found.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, vec!["1,2;0,5", "1,3;0,5"]);
    }

    #[test]
    fn hypercube_and_interval_search() {
        let p = BallParams::symmetric(2, 2, 1).unwrap();
        let found = search_perfect_lattices(&p, &Caps::default()).unwrap();
        assert!(found.contains(&lat("3,0;0,3")));
        let p = BallParams::symmetric(1, 1, 3).unwrap();
        assert_eq!(search_perfect_lattices(&p, &Caps::default()).unwrap(), vec![lat("7")]);
    }

    #[test]
    fn search_is_invariant_under_coordinate_swap() {
        let caps = Caps::default();
        for (n, e, s) in [(2, 1, 1), (2, 1, 2), (3, 1, 1)] {
            let p = BallParams::symmetric(n, e, s).unwrap();
            let found = search_perfect_lattices(&p, &caps).unwrap();
            let keys: HashSet<String> = found.iter().map(|l| l.to_string()).collect();
            for l in &found {
                let swapped: Vec<Vec<i64>> = l
                    .gen()
                    .iter()
                    .map(|r| {
                        let mut r = r.clone();
                        r.swap(0, 1);
                        r
                    })
                    .collect();
                let swapped = Lattice::new(swapped).unwrap();
                assert_eq!(verify_lattice_tiling(&swapped, &p, 1000).unwrap().verdict, Verdict::Tiles);
                assert!(keys.contains(&hermite_normal_form(&swapped).unwrap().to_string()));
            }
        }
    }

    #[test]
    fn window_points() {
        let pts = lattice_points_in_window(&lat("1,2;2,-1"), 2, &Caps::default()).unwrap();
        let brute: Vec<IntVector> = (-2..=2i64)
            .flat_map(|x| (-2..=2i64).map(move |y| IntVector::new(vec![x, y])))
            .filter(|v| (2 * v[0] - v[1]).rem_euclid(5) == 0)
            .collect();
        let mut brute = brute;
        brute.sort();
        assert_eq!(pts, brute);
        let small = Caps {
            window_cells: 3,
            ..Caps::default()
        };
        assert!(lattice_points_in_window(&lat("1,2;2,-1"), 2, &small).is_err());
    }

    #[test]
    fn window_packing_examples() {
        let caps = Caps::default();
        let p = BallParams::symmetric(2, 1, 1).unwrap();
        let pts = lattice_points_in_window(&lat("1,2;2,-1"), 10, &caps).unwrap();
        assert!(verify_window_packing(&pts, &p, 10, &caps).unwrap().disjoint);

        let two = vec![IntVector::new(vec![0, 0]), IntVector::new(vec![1, 0])];
        let r = verify_window_packing(&two, &p, 10, &caps).unwrap();
        assert!(!r.disjoint);
        let w = r.witness.unwrap();
        assert!(p.contains(&w) && p.contains(&(&w - &two[1])));

        let one = vec![IntVector::new(vec![4, 4])];
        assert!(verify_window_packing(&one, &p, 1, &caps).unwrap().disjoint);
    }

    #[test]
    fn density_examples() {
        let caps = Caps::default();
        let p = BallParams::symmetric(2, 1, 1).unwrap();
        let cross = lat("1,2;2,-1");
        let est = estimate_density(PointSet::Lattice(&cross), &p, 10, &caps).unwrap();
        let paper_box = tiling_window_bounds(&p, 10);
        assert_eq!(paper_box.lower, q(19 * 19, 21 * 21));
        assert!(paper_box.contains(&est));
        assert!(lattice_window_bounds(&cross, &p, 10).unwrap().contains(&est));
        assert!((ratio_to_f64(&est) - 1.0).abs() <= 0.25);

        // diag(7,1) at L = 20: 5 columns x 41 rows of points
        let strip = Lattice::diagonal(&[7, 1]).unwrap();
        let est = estimate_density(PointSet::Lattice(&strip), &p, 20, &caps).unwrap();
        assert_eq!(est, q(5 * 41 * 5, 41 * 41));
        let b = lattice_window_bounds(&strip, &p, 20).unwrap();
        assert!(b.contains(&est));
        assert!(b.contains(&q(25, 41)));
        assert_eq!(lattice_density(&strip, &p), q(5, 7));
        // the limit is approached as the window grows
        let far = estimate_density(PointSet::Lattice(&strip), &p, 2000, &caps).unwrap();
        assert!((ratio_to_f64(&far) - 5.0 / 7.0).abs() < 0.05);

        let empty: Vec<IntVector> = Vec::new();
        assert!(estimate_density(PointSet::Translates(&empty), &p, 5, &caps).unwrap().is_zero());
    }

    #[test]
    fn density_converges_within_sandwich() {
        let caps = Caps::default();
        for (gen, (n, e, s)) in [("1,2;2,-1", (2, 1, 1)), ("7,0;0,1", (2, 1, 1)), ("3,1;0,4", (2, 1, 1))] {
            let l = lat(gen);
            let p = BallParams::symmetric(n, e, s).unwrap();
            let limit = lattice_density(&l, &p);
            let mut prev_width: Option<BigRational> = None;
            for w in [8u64, 16, 64] {
                let est = estimate_density(PointSet::Lattice(&l), &p, w, &caps).unwrap();
                let b = lattice_window_bounds(&l, &p, w).unwrap();
                assert!(b.contains(&est), "{gen} L={w}");
                assert!(b.contains(&limit), "{gen} L={w}");
                if let Some(pw) = &prev_width {
                    assert!(&b.width() < pw);
                }
                prev_width = Some(b.width());
            }
        }
    }

    #[test]
    fn bundled_tilings_verify() {
        for (p, l) in bundled_tilings() {
            assert_eq!(verify_lattice_tiling(&l, &p, 1_000_000).unwrap().verdict, Verdict::Tiles, "{p}");
        }
    }
}
