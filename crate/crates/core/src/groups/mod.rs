//! Finitely generated groups of IETs: words, relations, freeness up to a
//! word length, ball growth, and the explicit families.

mod builtins;
mod family;
mod word;
mod wreath;

use std::collections::HashMap;

use thiserror::Error;

use crate::dynamics::{periodic_points_up_to, PeriodicVerdict};
use crate::iet::{Iet, IntervalSet};
use crate::numfield::{AlgebraicNumber, Field};

pub use crate::iet::commutator;
pub use builtins::{builtin, Builtin, BuiltinError, BuiltinGroup, BuiltinParams};
pub use family::{ell_morphism, local_permutation, EllValue, Family, LocalPermutation};
pub use word::{Word, WordError};
pub use wreath::{wreath_embedding, WreathEmbedding, WreathError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator '{0}' is not declared")]
    Undeclared(String),
    #[error("generator '{0}' is declared twice")]
    Duplicate(String),
    #[error("generators live over different fields")]
    MixedFields,
    #[error("a generator set needs at least one generator")]
    Empty,
}

/// `lhs = rhs`; a relator `w` is stored as `w = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn relator(w: Word) -> Self {
        Relation {
            lhs: w,
            rhs: Word::identity(),
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.rhs.is_empty() {
            write!(f, "{}", self.lhs)
        } else {
            write!(f, "{} = {}", self.lhs, self.rhs)
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    names: Vec<String>,
    iets: Vec<Iet>,
    relations: Vec<Relation>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(String, Iet)>) -> Result<Self, GroupError> {
        if gens.is_empty() {
            return Err(GroupError::Empty);
        }
        let field = gens[0].1.field().clone();
        let mut names: Vec<String> = Vec::with_capacity(gens.len());
        let mut iets = Vec::with_capacity(gens.len());
        for (n, f) in gens {
            if names.contains(&n) {
                return Err(GroupError::Duplicate(n));
            }
            if f.field() != &field {
                return Err(GroupError::MixedFields);
            }
            names.push(n);
            iets.push(f);
        }
        Ok(GeneratorSet {
            names,
            iets,
            relations: Vec::new(),
        })
    }

    pub fn with_relations(mut self, relations: Vec<Relation>) -> Result<Self, GroupError> {
        for r in &relations {
            for (g, _) in r.lhs.letters().iter().chain(r.rhs.letters()) {
                if !self.names.contains(g) {
                    return Err(GroupError::Undeclared(g.clone()));
                }
            }
        }
        self.relations = relations;
        Ok(self)
    }

    pub fn field(&self) -> &Field {
        self.iets[0].field()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn get(&self, name: &str) -> Option<&Iet> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| &self.iets[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iet)> {
        self.names.iter().map(String::as_str).zip(&self.iets)
    }

    /// Generators and their inverses, in declaration order.
    fn letters(&self) -> Vec<(Word, Iet)> {
        let mut out = Vec::with_capacity(2 * self.names.len());
        for (n, f) in self.iter() {
            out.push((Word::letter(n, 1), f.clone()));
            let inv = f.inverse();
            if inv != *f {
                out.push((Word::letter(n, -1), inv));
            }
        }
        out
    }

    pub fn evaluate(&self, w: &Word) -> Result<Iet, GroupError> {
        let mut acc = Iet::identity(self.field());
        for (g, e) in w.letters() {
            let f = self
                .get(g)
                .ok_or_else(|| GroupError::Undeclared(g.clone()))?;
            acc = acc.compose(&f.power(*e));
        }
        Ok(acc)
    }
}

/// Product of the generators along `w`, rightmost acting first.
pub fn word_evaluate(gens: &GeneratorSet, w: &Word) -> Result<Iet, GroupError> {
    gens.evaluate(w)
}

/// First point where two IETs differ. Two distinct IETs differ at a left
/// endpoint of their common refinement, hence at a cut of one of them.
pub fn difference_witness(f: &Iet, g: &Iet) -> Option<AlgebraicNumber> {
    let mut pts: Vec<&AlgebraicNumber> = f.cuts().iter().chain(g.cuts()).collect();
    pts.sort();
    pts.dedup();
    pts.into_iter().find(|x| f.apply(x) != g.apply(x)).cloned()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationResult {
    pub relation: Relation,
    /// `None` when the relation holds, else a point where the sides differ.
    pub witness: Option<AlgebraicNumber>,
}

impl RelationResult {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn relation_check(gens: &GeneratorSet) -> Result<Vec<RelationResult>, GroupError> {
    gens.relations
        .iter()
        .map(|r| {
            let l = gens.evaluate(&r.lhs)?;
            let rr = gens.evaluate(&r.rhs)?;
            Ok(RelationResult {
                relation: r.clone(),
                witness: difference_witness(&l, &rr),
            })
        })
        .collect()
}

/// Breadth-first enumeration of the ball of radius `l`, deduplicated by exact
/// equality of IETs. `visit` sees each new element with a shortest word;
/// `collide` sees the reduced word `u v⁻¹` whenever a new word `u` lands on an
/// element already reached by `v`. Either may stop the search by returning
/// `false`. Returns the sphere sizes.
fn enumerate_ball(
    gens: &GeneratorSet,
    l: usize,
    mut visit: impl FnMut(&Word, &Iet) -> bool,
    mut collide: impl FnMut(&Word) -> bool,
) -> Vec<usize> {
    let letters = gens.letters();
    let id = Iet::identity(gens.field());
    let mut seen: HashMap<Iet, Word> = HashMap::from([(id.clone(), Word::identity())]);
    let mut frontier = vec![(Word::identity(), id)];
    let mut sizes = Vec::with_capacity(l);
    for _ in 0..l {
        let mut next = Vec::new();
        for (w, f) in &frontier {
            for (lw, lf) in &letters {
                let gw = w.concat(lw);
                if gw.len() <= w.len() {
                    // free cancellation: not a new word
                    continue;
                }
                let g = f.compose(lf);
                if let Some(v) = seen.get(&g) {
                    let r = gw.concat(&v.inverse());
                    if !r.is_empty() && !collide(&r) {
                        sizes.push(seen.len());
                        return sizes;
                    }
                    continue;
                }
                seen.insert(g.clone(), gw.clone());
                if !visit(&gw, &g) {
                    sizes.push(seen.len());
                    return sizes;
                }
                next.push((gw, g));
            }
        }
        sizes.push(seen.len());
        frontier = next;
    }
    sizes
}

/// `|B(1)|, …, |B(l)|`, counting the identity.
pub fn ball_growth(gens: &GeneratorSet, l: usize) -> Vec<usize> {
    enumerate_ball(gens, l, |_, _| true, |_| true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeVerdict {
    FreeUpTo(usize),
    FixedPoint {
        word: Word,
        fixed: IntervalSet,
    },
    PeriodicPoint {
        word: Word,
        period: usize,
        set: IntervalSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeReport {
    pub verdict: FreeVerdict,
    /// Distinct elements examined, identity included.
    pub elements: usize,
}

/// Checks that no nonidentity element of word length at most `l` has a fixed
/// point. With `periodic_depth` set, also looks for periodic points of each
/// element up to that period.
///
/// Without relations the group is read as free on its generators, so a
/// nontrivial reduced word acting as the identity is reported with fixed set
/// `[0, 1)`. With relations, coincidences are taken as consequences of them.
pub fn free_up_to(gens: &GeneratorSet, l: usize, periodic_depth: Option<usize>) -> FreeReport {
    let mut verdict = FreeVerdict::FreeUpTo(l);
    let presented = !gens.relations.is_empty();
    let unit = IntervalSet::unit(gens.field());
    let mut trivial: Option<Word> = None;
    let sizes = enumerate_ball(
        gens,
        l,
        |w, g| {
            let fix = g.fixed_set();
            if !fix.is_empty() {
                verdict = FreeVerdict::FixedPoint {
                    word: w.clone(),
                    fixed: fix,
                };
                return false;
            }
            if let Some(k) = periodic_depth {
                if let PeriodicVerdict::Found(period, set) = periodic_points_up_to(g, k) {
                    verdict = FreeVerdict::PeriodicPoint {
                        word: w.clone(),
                        period,
                        set,
                    };
                    return false;
                }
            }
            true
        },
        |r| {
            if presented {
                return true;
            }
            let leading_negative = r.letters().first().is_some_and(|(_, e)| *e < 0);
            trivial = Some(if leading_negative {
                r.inverse()
            } else {
                r.clone()
            });
            false
        },
    );
    if let Some(word) = trivial {
        verdict = FreeVerdict::FixedPoint { word, fixed: unit };
    }
    FreeReport {
        verdict,
        elements: sizes.last().copied().unwrap_or(1),
    }
}

/// Least `p ≤ cap` such that `f^p` commutes with `h`.
pub fn commuting_power(f: &Iet, h: &Iet, cap: u64) -> Option<u64> {
    let mut cur = f.clone();
    for p in 1..=cap {
        if cur.commutes_with(h) {
            return Some(p);
        }
        cur = cur.compose(f);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Preset;

    fn cyclic(angle: AlgebraicNumber) -> GeneratorSet {
        GeneratorSet::new(vec![("a".into(), Iet::rotation(&angle))]).unwrap()
    }

    #[test]
    fn ball_of_rotations() {
        let f = Preset::Sqrt2.field();
        let g = cyclic(&f.theta() - &f.one());
        assert_eq!(ball_growth(&g, 5), vec![3, 5, 7, 9, 11]);
        let q = Preset::Rational.field();
        assert_eq!(ball_growth(&cyclic(q.ratio(1, 4)), 5), vec![3, 4, 4, 4, 4]);
    }

    #[test]
    fn freeness_of_rotations() {
        let f = Preset::Sqrt2.field();
        let g = cyclic(&f.theta() - &f.one());
        assert_eq!(free_up_to(&g, 6, None).verdict, FreeVerdict::FreeUpTo(6));
        let q = Preset::Rational.field();
        match free_up_to(&cyclic(q.ratio(1, 4)), 4, None).verdict {
            FreeVerdict::FixedPoint { word, fixed } => {
                assert_eq!(word.len(), 4);
                assert_eq!(fixed, IntervalSet::unit(&q));
            }
            v => panic!("unexpected {v:?}"),
        }
        match free_up_to(&cyclic(q.ratio(1, 4)), 2, Some(8)).verdict {
            FreeVerdict::PeriodicPoint { period, .. } => assert_eq!(period, 4),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn relation_witness() {
        let f = Preset::Sqrt2.field();
        let a = Iet::rotation(&(&f.theta() - &f.one()));
        let gens = GeneratorSet::new(vec![("a".into(), a), ("b".into(), Iet::identity(&f))])
            .unwrap()
            .with_relations(vec![Relation::relator(Word::parse("b a b^-1 a").unwrap())])
            .unwrap();
        let res = relation_check(&gens).unwrap();
        assert!(!res[0].holds());
        let x = res[0].witness.clone().unwrap();
        let lhs = gens.evaluate(&Word::parse("b a b^-1 a").unwrap()).unwrap();
        assert_ne!(lhs.apply(&x), x);
    }

    #[test]
    fn undeclared_names() {
        let f = Preset::Rational.field();
        let g = cyclic(f.ratio(1, 3));
        assert_eq!(
            g.evaluate(&Word::parse("c").unwrap()),
            Err(GroupError::Undeclared("c".into()))
        );
        assert!(g.evaluate(&Word::identity()).unwrap().is_identity());
    }

    #[test]
    fn commuting_powers() {
        let f = Preset::Rational.field();
        let r = Iet::rotation(&f.ratio(1, 3));
        let s = crate::iet::restricted_rotation(&f.ratio(1, 4), &f.zero(), &f.ratio(1, 2)).unwrap();
        assert_eq!(commuting_power(&r, &s, 5), Some(3));
    }
}
