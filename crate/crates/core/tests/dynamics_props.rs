use ietlab::dynamics::{bp_growth, decompose, pl_normalize, rate_count, PlMap};
use ietlab::gn::GnElem;
use ietlab::iet::{Iet, IntervalSet};
use ietlab::numfield::{AlgebraicNumber, Field, Preset};
use ietlab::perm::Perm;
use ietlab::random::{iet, restricted_rotation_product, rng_from_seed, unit_number};
use proptest::prelude::*;

fn field(i: usize) -> Field {
    Preset::ALL[i % 4].field()
}

/// Compares two piecewise affine maps of `[0, 1)` given a superset of the
/// break points of both: each gap is checked at its left end and midpoint.
fn same_affine_pieces(
    lhs: impl Fn(&AlgebraicNumber) -> AlgebraicNumber,
    rhs: impl Fn(&AlgebraicNumber) -> AlgebraicNumber,
    mut breaks: Vec<AlgebraicNumber>,
    one: &AlgebraicNumber,
) -> bool {
    breaks.push(one.clone());
    breaks.sort();
    breaks.dedup();
    let two = one + one;
    breaks.windows(2).all(|w| {
        let mid = &(&w[0] + &w[1]) / &two;
        lhs(&w[0]) == rhs(&w[0]) && lhs(&mid) == rhs(&mid)
    })
}

fn pl_breaks(p: &PlMap, f: &Iet, e: &Iet) -> Vec<AlgebraicNumber> {
    let field = f.field();
    let n = p.n() as i64;
    let mut out: Vec<AlgebraicNumber> = (0..n).map(|j| field.ratio(j, n)).collect();
    out.extend(f.cuts().iter().map(|c| p.apply(c)));
    let inv = f.inverse();
    out.extend(p.domain.iter().take(p.n()).map(|d| p.apply(&inv.apply(d))));
    out.extend(e.cuts().iter().cloned());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rate_counts_are_conjugation_stable(seed: u64, fi in 1usize..4) {
        let fld = field(fi);
        let mut rng = rng_from_seed(seed);
        let f = iet(&fld, &mut rng, 4);
        let g = iet(&fld, &mut rng, 3);
        let x = unit_number(&fld, &mut rng, false);
        let h = g.compose(&f).compose(&g.inverse());
        let n = 40;
        let a = rate_count(&f, &x, n).unwrap() as i64;
        let b = rate_count(&h, &g.apply(&x), n).unwrap() as i64;
        prop_assert!((a - b).unsigned_abs() as usize <= 2 * g.break_points().len());
    }

    #[test]
    fn growth_counts_are_bounded(seed: u64, fi in 0usize..4) {
        let f = iet(&field(fi), &mut rng_from_seed(seed), 4);
        let trace = bp_growth(&f, 12);
        let base = f.break_points().len();
        for (k, c) in trace.counts.iter().enumerate() {
            prop_assert!(*c <= base * (k + 1));
        }
    }

    #[test]
    fn decomposition_is_invariant(seed: u64, fi in 0usize..4) {
        let fld = field(fi);
        let f = iet(&fld, &mut rng_from_seed(seed), 4);
        let report = decompose(&f, 20);
        let mut covered = IntervalSet::empty();
        for (set, p) in &report.periodic {
            prop_assert_eq!(&f.image_of_set(set), set);
            prop_assert!(set.is_subset(&f.power(*p as i64).fixed_set()));
            covered = covered.union(set);
        }
        for (set, _) in &report.minimal {
            prop_assert_eq!(&f.image_of_set(set), set);
            prop_assert!(covered.is_disjoint(set));
            covered = covered.union(set);
        }
        prop_assert_eq!(&f.image_of_set(&report.residual), &report.residual);
        prop_assert_eq!(covered.union(&report.residual), IntervalSet::unit(&fld));
    }

    #[test]
    fn normalization_conjugates_into_gn(seed: u64, fi in 0usize..4) {
        let fld = field(fi);
        let f = restricted_rotation_product(&fld, &mut rng_from_seed(seed), 4, false);
        let norm = pl_normalize(&f).expect("a product of restricted rotations");
        prop_assert!(norm.phi.sigma().is_identity());
        let e = norm.phi.embed();
        let p = &norm.pl_map;
        let breaks = pl_breaks(p, &f, &e);
        prop_assert!(same_affine_pieces(
            |y| p.apply(&f.apply(&p.apply_inverse(y))),
            |y| e.apply(y),
            breaks,
            &fld.one(),
        ));
    }

    #[test]
    fn periodic_free_blocks_are_the_minimal_components(seed: u64, fi in 1usize..4, n in 1usize..=4) {
        let fld = field(fi);
        let mut rng = rng_from_seed(seed);
        let w = fld.ratio(1, n as i64);
        let alpha = (0..n).map(|_| &unit_number(&fld, &mut rng, true) * &w).collect();
        let e = GnElem::new(alpha, Perm::identity(n)).unwrap();
        prop_assume!(e.periodic_point_free());
        let report = decompose(&e.embed(), 20);
        prop_assert!(report.periodic.is_empty());
        prop_assert_eq!(report.minimal.len(), n);
        for (i, (set, _)) in report.minimal.iter().enumerate() {
            prop_assert_eq!(set.intervals().len(), 1);
            let iv = &set.intervals()[0];
            prop_assert_eq!(&iv.start, &fld.ratio(i as i64, n as i64));
        }
        prop_assert!(report.all_certified());
    }
}
