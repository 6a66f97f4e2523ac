use ietlab::gn::GnElem;
use ietlab::groups::{
    builtin, ell_morphism, local_permutation, wreath_embedding, Builtin, BuiltinParams,
    GeneratorSet, Word,
};
use ietlab::iet::Iet;
use ietlab::numfield::{Field, Preset};
use ietlab::perm::Perm;
use ietlab::random::{perm, rng_from_seed, unit_number};
use proptest::prelude::*;
use rand::Rng;

fn random_word(gens: &GeneratorSet, rng: &mut impl Rng, len: usize) -> Word {
    let names = gens.names();
    let letters = (0..len)
        .map(|_| {
            let g = names[rng.gen_range(0..names.len())].clone();
            (g, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    Word::from_letters(letters)
}

fn sqrt2() -> Field {
    Preset::Sqrt2.field()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn words_evaluate_homomorphically(seed: u64) {
        let g = builtin(Builtin::Bs11, &Preset::Quartic2.field(), &BuiltinParams::new()).unwrap();
        let mut rng = rng_from_seed(seed);
        let u = random_word(&g.gens, &mut rng, 5);
        let v = random_word(&g.gens, &mut rng, 5);
        let lhs = g.gens.evaluate(&u.concat(&v)).unwrap();
        prop_assert_eq!(lhs, g.gens.evaluate(&u).unwrap().compose(&g.gens.evaluate(&v).unwrap()));
        prop_assert!(g.gens.evaluate(&u.concat(&u.inverse())).unwrap().is_identity());
    }

    #[test]
    fn ell_is_additive(seed: u64, alternating: bool) {
        let which = if alternating { Builtin::Alternating(5) } else { Builtin::Metabelian3 };
        let g = builtin(which, &sqrt2(), &BuiltinParams::new()).unwrap();
        let fam = g.family.clone().unwrap();
        let mut rng = rng_from_seed(seed);
        let u = g.gens.evaluate(&random_word(&g.gens, &mut rng, 6)).unwrap();
        let v = g.gens.evaluate(&random_word(&g.gens, &mut rng, 6)).unwrap();
        let lu = ell_morphism(&fam, &u).unwrap().ell;
        let lv = ell_morphism(&fam, &v).unwrap().ell;
        prop_assert_eq!(ell_morphism(&fam, &u.compose(&v)).unwrap().ell, lu + lv);
        prop_assert_eq!(ell_morphism(&fam, &u.inverse()).unwrap().ell, -lu);
    }

    #[test]
    fn local_permutations_multiply(seed: u64) {
        let f = sqrt2();
        let n = 5;
        let mut rng = rng_from_seed(seed);
        // commutators [R_β, t_τ] and block permutations all translate by (1/n)ℤ
        let mut pool: Vec<Iet> = Vec::new();
        for _ in 0..3 {
            let irrational = rng.gen_bool(0.5);
            let beta = &unit_number(&f, &mut rng, irrational) * &f.ratio(1, n as i64);
            let t = GnElem::new(vec![f.zero(); n], perm(&mut rng, n)).unwrap().embed();
            let r = Iet::rotation(&beta);
            pool.push(ietlab::groups::commutator(&r, &t));
            pool.push(t);
        }
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            (0..3).fold(Iet::identity(&f), |acc, _| acc.compose(&pool[rng.gen_range(0..pool.len())]))
        };
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let x = &unit_number(&f, &mut rng, false) * &f.ratio(1, n as i64);
        let wa = local_permutation(&a, &x, n).unwrap().perm;
        let wb = local_permutation(&b, &x, n).unwrap().perm;
        prop_assert_eq!(local_permutation(&a.compose(&b), &x, n).unwrap().perm, wa.compose(&wb));
    }

    #[test]
    fn metabelian_commutators(seed: u64) {
        let g = builtin(Builtin::Metabelian3, &sqrt2(), &BuiltinParams::new()).unwrap();
        let mut rng = rng_from_seed(seed);
        let mut comms = Vec::new();
        for _ in 0..4 {
            let u = g.gens.evaluate(&random_word(&g.gens, &mut rng, 4)).unwrap();
            let v = g.gens.evaluate(&random_word(&g.gens, &mut rng, 4)).unwrap();
            let c = ietlab::groups::commutator(&u, &v);
            if !c.is_identity() {
                prop_assert_eq!(c.order(10), Some(3));
                comms.push(c);
            }
        }
        for a in &comms {
            for b in &comms {
                prop_assert!(a.commutes_with(b));
            }
        }
    }

    #[test]
    fn e_map_composes(seed: u64, which in 0usize..3) {
        let f = sqrt2();
        let mut rng = rng_from_seed(seed);
        let (degree, gens): (usize, Vec<Perm>) = match which {
            0 => (2, vec![Perm::from_cycles(2, &[&[1, 2]]).unwrap()]),
            1 => (3, vec![Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap()]),
            _ => (3, vec![
                Perm::from_cycles(3, &[&[1, 2]]).unwrap(),
                Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap(),
            ]),
        };
        let a = unit_number(&f, &mut rng, true);
        let w = wreath_embedding(&[a], &gens).unwrap();
        let n = w.n();
        let s1 = w.elements[rng.gen_range(0..n)].clone();
        let s2 = w.elements[rng.gen_range(0..n)].clone();
        let a1: Vec<_> = (0..n).map(|_| unit_number(&f, &mut rng, false)).collect();
        let a2: Vec<_> = (0..n).map(|_| unit_number(&f, &mut rng, false)).collect();
        // (x, s) ↦ (x + a2_s, s2 s) ↦ (x + a2_s + a1_{s2 s}, s1 s2 s)
        let index = |s: &Perm| w.elements.iter().position(|e| e == s).unwrap();
        let combined: Vec<_> = w
            .elements
            .iter()
            .map(|s| (&a2[index(s)] + &a1[index(&s2.compose(s))]).floor_frac().1)
            .collect();
        let lhs = w.e_map(&a1, &s1).compose(&w.e_map(&a2, &s2)).unwrap();
        prop_assert_eq!(&lhs, &w.e_map(&combined, &s1.compose(&s2)));
        prop_assert_eq!(lhs.embed(), w.e_map(&a1, &s1).embed().compose(&w.e_map(&a2, &s2).embed()));
        prop_assert_eq!(degree, gens[0].n());
    }
}

#[test]
fn powers_of_rotation_commutators_have_distinct_break_points() {
    let g = builtin(Builtin::Metabelian3, &sqrt2(), &BuiltinParams::new()).unwrap();
    let r = g.gens.get("r").unwrap();
    let s = g.gens.get("g").unwrap();
    let sets: Vec<Vec<_>> = (1..=10)
        .map(|k| ietlab::groups::commutator(&r.power(k), s).break_points())
        .collect();
    for i in 0..sets.len() {
        for j in 0..i {
            assert_ne!(sets[i], sets[j], "k = {} and k = {}", i + 1, j + 1);
        }
    }
}
