//! Orbits, break-point growth, discontinuity rates along orbits, the
//! minimal/periodic decomposition and the normalization of products of
//! restricted rotations.

mod decompose;
mod normalize;
mod periodic;

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::iet::{Iet, IetError};
use crate::numfield::AlgebraicNumber;

pub use decompose::{decompose, ComponentReport, MinimalStatus};
pub use normalize::{pl_normalize, PlMap, PlNormalization};
pub use periodic::{periodic_points_up_to, PeriodicVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// `x, f(x), …, f^N(x)`.
    pub points: Vec<AlgebraicNumber>,
    /// Least `p ≥ 1` with `f^p(x) = x`, if seen within the explored depth.
    pub period: Option<usize>,
}

pub fn orbit(f: &Iet, x: &AlgebraicNumber, n: usize) -> Result<Orbit, IetError> {
    let mut points = Vec::with_capacity(n + 1);
    points.push(x.clone());
    let mut cur = f.evaluate(x)?;
    let mut period = None;
    for k in 1..=n {
        if period.is_none() && cur == *x {
            period = Some(k);
        }
        let next = f.apply(&cur);
        points.push(std::mem::replace(&mut cur, next));
    }
    Ok(Orbit { points, period })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthVerdict {
    Bounded(usize),
    Growing,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTrace {
    /// `counts[k - 1] = #BP(f^k)`.
    pub counts: Vec<usize>,
    pub verdict: GrowthVerdict,
}

/// Counts `#BP(f^k)` for `k = 1..=n` and judges the last third of them.
pub fn bp_growth(f: &Iet, n: usize) -> GrowthTrace {
    let mut counts = Vec::with_capacity(n);
    let mut cur = f.clone();
    for k in 1..=n {
        counts.push(cur.interval_count());
        if k < n {
            cur = cur.compose(f);
        }
    }
    let window = n.div_ceil(3).max(1);
    let tail = &counts[counts.len().saturating_sub(window)..];
    let verdict = if tail.windows(2).all(|w| w[0] == w[1]) {
        GrowthVerdict::Bounded(tail[0])
    } else if tail.windows(2).all(|w| w[0] < w[1]) {
        GrowthVerdict::Growing
    } else {
        GrowthVerdict::Inconclusive
    };
    GrowthTrace { counts, verdict }
}

/// True iff `y` is a break point of `f^n`, decided by following the orbit of
/// `y` and the orbit of its left limit side by side.
pub fn is_break_point_of_power(f: &Iet, y: &AlgebraicNumber, n: usize) -> bool {
    if y.is_zero() {
        return true;
    }
    let mut right = y.clone();
    let mut left = y.clone();
    for _ in 0..n {
        right = f.apply(&right);
        left = f.left_limit(&left);
    }
    left != right
}

/// Points `f^j(x)` for `-n ≤ j ≤ n`, without repeats, sorted.
pub fn two_sided_orbit(f: &Iet, x: &AlgebraicNumber, n: usize) -> BTreeSet<AlgebraicNumber> {
    let inv = f.inverse();
    let mut out = BTreeSet::from([x.clone()]);
    for g in [f, &inv] {
        let mut cur = x.clone();
        for _ in 0..n {
            cur = g.apply(&cur);
            if !out.insert(cur.clone()) {
                break;
            }
        }
    }
    out
}

/// Number of points of the two-sided orbit of `x` to depth `n` lying in
/// `BP(f^n)`.
///
/// Same answer as testing each point with [`is_break_point_of_power`], but
/// the forward orbits are read off one orbit segment, and a left orbit only
/// leaves it at a cut of `f`, so each cut's left orbit is followed once.
pub fn rate_count(f: &Iet, x: &AlgebraicNumber, n: usize) -> Result<usize, IetError> {
    f.evaluate(x)?;
    let inv = f.inverse();
    let mut start = x.clone();
    for _ in 0..n {
        start = inv.apply(&start);
    }
    // seq[i] = f^{i-n}(x) for 0 ≤ i ≤ 3n
    let mut seq = Vec::with_capacity(3 * n + 1);
    seq.push(start);
    for i in 0..3 * n {
        let next = f.apply(&seq[i]);
        seq.push(next);
    }
    let is_cut = |y: &AlgebraicNumber| !y.is_zero() && f.cuts().binary_search(y).is_ok();
    // next_cut[i]: least m ≥ i with seq[m] a nonzero cut
    let mut next_cut = vec![usize::MAX; seq.len() + 1];
    for i in (0..seq.len()).rev() {
        next_cut[i] = if is_cut(&seq[i]) { i } else { next_cut[i + 1] };
    }
    let mut left_orbits: HashMap<AlgebraicNumber, Vec<AlgebraicNumber>> = HashMap::new();
    let mut seen = HashSet::new();
    let mut count = 0;
    for i in 0..=2 * n {
        let y = &seq[i];
        if !seen.insert(y.clone()) {
            continue;
        }
        if y.is_zero() {
            count += 1;
            continue;
        }
        let m = next_cut[i];
        if m >= i + n {
            continue;
        }
        // left orbit after the split at seq[m]: steps m-i+1, …, n
        let steps = n - (m - i);
        let orbit = left_orbits.entry(seq[m].clone()).or_default();
        if orbit.is_empty() {
            orbit.push(f.left_limit(&seq[m]));
        }
        while orbit.len() < steps {
            let next = f.left_limit(orbit.last().expect("nonempty"));
            orbit.push(next);
        }
        if orbit[steps - 1] != seq[i + n] {
            count += 1;
        }
    }
    Ok(count)
}

/// Finite-depth estimate `#(BP(f^n) ∩ O_x) / n` of the discontinuity rate,
/// with `O_x` the forward and backward orbit of `x` to depth `n`.
pub fn rate_estimate(f: &Iet, x: &AlgebraicNumber, n: usize) -> Result<BigRational, IetError> {
    let n = n.max(1);
    let c = rate_count(f, x, n)?;
    Ok(BigRational::new(BigInt::from(c), BigInt::from(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gn::GnElem;
    use crate::numfield::{Field, Preset};
    use num_traits::Zero;

    #[test]
    fn rate_count_matches_direct_check() {
        let f = Preset::Sqrt2.field();
        let mut rng = crate::random::rng_from_seed(11);
        for trial in 0..30 {
            let g = crate::random::iet(&f, &mut rng, 4);
            // start on a cut so the orbit meets break points
            let x = if trial % 2 == 0 {
                g.cuts()[g.interval_count() - 1].clone()
            } else {
                crate::random::unit_number(&f, &mut rng, false)
            };
            for n in [1, 5, 12] {
                let direct = two_sided_orbit(&g, &x, n)
                    .iter()
                    .filter(|y| is_break_point_of_power(&g, y, n))
                    .count();
                assert_eq!(rate_count(&g, &x, n).unwrap(), direct);
            }
        }
        let q = Preset::Rational.field();
        let r = Iet::rotation(&q.ratio(1, 3));
        let direct = two_sided_orbit(&r, &q.zero(), 7)
            .iter()
            .filter(|y| is_break_point_of_power(&r, y, 7))
            .count();
        assert_eq!(rate_count(&r, &q.zero(), 7).unwrap(), direct);
    }

    fn keane_four(f: &Field) -> Iet {
        // lengths proportional to 1, t, t^2, t^3 in Q(2^(1/4)); permutation (4 3 2 1)
        let t = f.theta();
        let raw = [f.one(), t.clone(), &t * &t, &(&t * &t) * &t];
        let total = raw.iter().fold(f.zero(), |a, b| &a + b);
        let lens: Vec<_> = raw.iter().map(|x| x / &total).collect();
        let mut cuts = vec![f.zero()];
        for l in &lens[..3] {
            let last = cuts.last().unwrap().clone();
            cuts.push(&last + l);
        }
        // reverse order of images
        let mut trans = Vec::new();
        for i in 0..4 {
            let after: AlgebraicNumber = lens[i + 1..].iter().fold(f.zero(), |a, b| &a + b);
            trans.push(&after - &cuts[i]);
        }
        Iet::new(cuts, trans).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let f = Preset::Rational.field();
        let id = Iet::identity(&f);
        let o = orbit(&id, &f.ratio(1, 3), 5).unwrap();
        assert_eq!(o.points, vec![f.ratio(1, 3); 6]);
        assert_eq!(o.period, Some(1));
        let r = Iet::rotation(&f.ratio(1, 4));
        let o = orbit(&r, &f.zero(), 4).unwrap();
        let expect: Vec<_> = [0, 1, 2, 3, 0].iter().map(|&k| f.ratio(k, 4)).collect();
        assert_eq!(o.points, expect);
        assert_eq!(o.period, Some(4));
    }

    #[test]
    fn growth_examples() {
        let f = Preset::Sqrt2.field();
        let r = Iet::rotation(&(&f.theta() - &f.one()));
        let g = bp_growth(&r, 30);
        assert!(g.counts.iter().all(|&c| c == 2));
        assert_eq!(g.verdict, GrowthVerdict::Bounded(2));

        let q = Preset::Quartic2.field();
        let k = keane_four(&q);
        let g = bp_growth(&k, 40);
        assert_eq!(g.verdict, GrowthVerdict::Growing);
        for (i, &c) in g.counts.iter().enumerate() {
            assert!(c <= 4 * (i + 1));
        }

        let e = GnElem::from_parts(
            vec![&f.theta() / &f.from_int(7), f.ratio(1, 9), f.zero()],
            &[2, 3, 1],
        )
        .unwrap();
        assert!(bp_growth(&e.embed(), 20).counts.iter().all(|&c| c <= 6));
    }

    #[test]
    fn break_points_of_powers_agree_with_composition() {
        let q = Preset::Quartic2.field();
        let k = keane_four(&q);
        let k5 = k.power(5);
        for c in k5.cuts() {
            assert!(is_break_point_of_power(&k, c, 5));
        }
        let mid = &(&k5.cuts()[1] + &k5.cuts()[2]) / &q.from_int(2);
        assert!(!is_break_point_of_power(&k, &mid, 5));
    }

    #[test]
    fn rate_examples() {
        let f = Preset::Rational.field();
        let id = Iet::identity(&f);
        assert!(rate_estimate(&id, &f.ratio(1, 3), 10).unwrap().is_zero());
        let s = Preset::Sqrt2.field();
        let r = Iet::rotation(&(&s.theta() - &s.one()));
        // a point off the orbit of 0: its orbit never meets BP(R^n)
        let x = &(&s.theta() - &s.one()) / &s.from_int(3);
        assert!(rate_estimate(&r, &x, 20).unwrap().is_zero());
    }
}
