//! Seeded generators for randomized checks. All draws go through a caller
//! supplied RNG so runs are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gn::GnElem;
use crate::iet::{product_of_restricted_rotations, Iet, RestrictedRotation};
use crate::numfield::{q_linear_rank, AlgebraicNumber, Field};
use crate::perm::Perm;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random element of `[0, 1)` with small coefficients. With `irrational`
/// set (and degree above 1) the result is irrational.
pub fn unit_number<R: Rng>(field: &Field, rng: &mut R, irrational: bool) -> AlgebraicNumber {
    loop {
        let d = field.degree();
        let mut x = field.ratio(rng.gen_range(0..64), rng.gen_range(1..16));
        if d > 1 && (irrational || rng.gen_bool(0.7)) {
            let mut t = field.one();
            for _ in 1..d {
                t = &t * &field.theta();
                let c = field.ratio(rng.gen_range(-7..=7), rng.gen_range(1..8));
                x = &x + &(&t * &c);
            }
        }
        let (_, r) = x.floor_frac();
        if r.is_zero() {
            continue;
        }
        if irrational && d > 1 && q_linear_rank(&[field.one(), r.clone()]) < 2 {
            continue;
        }
        return r;
    }
}

/// Random element of the open interval `(0, upper)`.
pub fn number_below<R: Rng>(
    field: &Field,
    rng: &mut R,
    upper: &AlgebraicNumber,
    irrational: bool,
) -> AlgebraicNumber {
    loop {
        let x = &unit_number(field, rng, irrational) * upper;
        if !irrational || field.degree() == 1 || q_linear_rank(&[field.one(), x.clone()]) == 2 {
            return x;
        }
    }
}

/// `k` distinct sorted points of `(0, 1)`.
pub fn sorted_points<R: Rng>(field: &Field, rng: &mut R, k: usize) -> Vec<AlgebraicNumber> {
    let mut pts: Vec<AlgebraicNumber> = Vec::with_capacity(k);
    while pts.len() < k {
        let x = unit_number(field, rng, false);
        if !pts.contains(&x) {
            pts.push(x);
        }
    }
    pts.sort();
    pts
}

pub fn perm<R: Rng>(rng: &mut R, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("shuffle is a permutation")
}

/// Random IET with at most `k` intervals.
pub fn iet<R: Rng>(field: &Field, rng: &mut R, k: usize) -> Iet {
    let k = k.max(1);
    let mut cuts = vec![field.zero()];
    cuts.extend(sorted_points(field, rng, k - 1));
    let lengths: Vec<AlgebraicNumber> = (0..k)
        .map(|i| {
            let end = cuts.get(i + 1).cloned().unwrap_or_else(|| field.one());
            &end - &cuts[i]
        })
        .collect();
    let p = perm(rng, k);
    // Interval i lands in slot p(i); slots are filled left to right.
    let inv = p.inverse();
    let mut image_start = vec![field.zero(); k];
    let mut acc = field.zero();
    for slot in 0..k {
        let i = inv.apply(slot);
        image_start[i] = acc.clone();
        acc = &acc + &lengths[i];
    }
    let translations = (0..k).map(|i| &image_start[i] - &cuts[i]).collect();
    Iet::new(cuts, translations).expect("random data is a bijection")
}

/// Random element of `G_n`; angles are multiples of `1/(n·den)` when `den`
/// is given, otherwise arbitrary.
pub fn gn_elem<R: Rng>(field: &Field, rng: &mut R, n: usize, den: Option<i64>) -> GnElem {
    let w = field.ratio(1, n as i64);
    let alpha = (0..n)
        .map(|_| match den {
            Some(d) => field.ratio(rng.gen_range(0..d), d * n as i64),
            None => &unit_number(field, rng, false) * &w,
        })
        .collect();
    GnElem::new(alpha, perm(rng, n)).expect("valid element")
}

/// Product of up to `max_k` restricted rotations with disjoint supports.
pub fn restricted_rotations<R: Rng>(
    field: &Field,
    rng: &mut R,
    max_k: usize,
    irrational: bool,
) -> Vec<RestrictedRotation> {
    let k = rng.gen_range(1..=max_k.max(1));
    let mut ends = sorted_points(field, rng, 2 * k);
    if rng.gen_bool(0.5) {
        ends[0] = field.zero();
    }
    if rng.gen_bool(0.5) {
        ends[2 * k - 1] = field.one();
    }
    let mut out = Vec::new();
    for pair in ends.chunks(2) {
        let (lo, hi) = (pair[0].clone(), pair[1].clone());
        let len = &hi - &lo;
        let angle = number_below(field, rng, &len, irrational);
        out.push(RestrictedRotation::new(angle, lo, hi).expect("valid support"));
    }
    out
}

pub fn restricted_rotation_product<R: Rng>(
    field: &Field,
    rng: &mut R,
    max_k: usize,
    irrational: bool,
) -> Iet {
    product_of_restricted_rotations(&restricted_rotations(field, rng, max_k, irrational))
        .expect("disjoint supports")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Preset;

    #[test]
    fn seeded_draws_repeat() {
        let f = Preset::Cubic2.field();
        let a = iet(&f, &mut rng_from_seed(7), 4);
        let b = iet(&f, &mut rng_from_seed(7), 4);
        assert_eq!(a, b);
        assert!(a.interval_count() <= 4);
    }

    #[test]
    fn irrational_draws() {
        let f = Preset::Sqrt2.field();
        let mut rng = rng_from_seed(1);
        for _ in 0..20 {
            let x = number_below(&f, &mut rng, &f.ratio(1, 3), true);
            assert!(x.is_positive() && x < f.ratio(1, 3));
            assert_eq!(q_linear_rank(&[f.one(), x]), 2);
        }
    }
}
