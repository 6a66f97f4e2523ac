//! Interval exchange transformations on `[0, 1)`.
//!
//! An [`Iet`] is stored as the left endpoints of its maximal continuity
//! intervals together with the translation applied on each. Construction
//! checks bijectivity and merges neighbouring intervals with equal
//! translations, so two IETs are equal exactly when their data are.

mod interval_set;
mod rotation;

use std::fmt;

use thiserror::Error;

use crate::numfield::{AlgebraicNumber, Field, FieldError};

pub use interval_set::{Interval, IntervalSet};
pub use rotation::{product_of_restricted_rotations, restricted_rotation, RestrictedRotation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IetError {
    #[error("an IET needs at least one interval")]
    Empty,
    #[error("cuts and translations differ in length ({cuts} vs {translations})")]
    LengthMismatch { cuts: usize, translations: usize },
    #[error("first cut must be 0")]
    FirstCutNotZero,
    #[error("cuts must be strictly increasing")]
    CutsNotIncreasing,
    #[error("cut {0} lies outside [0, 1)")]
    CutOutOfRange(String),
    #[error("images overlap or fail to cover [0, 1) near {0}")]
    NotBijective(String),
    #[error("point {0} lies outside [0, 1)")]
    PointOutOfRange(String),
    #[error("support [{0}, {1}) is empty or outside [0, 1)")]
    BadSupport(String, String),
    #[error("supports overlap")]
    OverlappingSupports,
    #[error("rotation angle {0} must lie in [0, length of support)")]
    AngleOutOfRange(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Iet {
    field: Field,
    cuts: Vec<AlgebraicNumber>,
    translations: Vec<AlgebraicNumber>,
}

impl std::hash::Hash for Iet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cuts.hash(state);
        self.translations.hash(state);
    }
}

impl fmt::Debug for Iet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Iet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[AlgebraicNumber]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "iet {{ cuts: [{}]; translations: [{}] }}",
            join(&self.cuts),
            join(&self.translations)
        )
    }
}

impl Iet {
    /// Builds the canonical IET from left endpoints and translations.
    pub fn new(
        cuts: Vec<AlgebraicNumber>,
        translations: Vec<AlgebraicNumber>,
    ) -> Result<Self, IetError> {
        let Some(first) = cuts.first() else {
            return Err(IetError::Empty);
        };
        if cuts.len() != translations.len() {
            return Err(IetError::LengthMismatch {
                cuts: cuts.len(),
                translations: translations.len(),
            });
        }
        let field = first.field().clone();
        for x in cuts.iter().chain(&translations) {
            if x.field() != &field {
                return Err(FieldError::MixedFields.into());
            }
        }
        if !first.is_zero() {
            return Err(IetError::FirstCutNotZero);
        }
        for w in cuts.windows(2) {
            if w[0] >= w[1] {
                return Err(IetError::CutsNotIncreasing);
            }
        }
        let one = field.one();
        if let Some(last) = cuts.last() {
            if *last >= one {
                return Err(IetError::CutOutOfRange(last.to_string()));
            }
        }
        let raw = Iet {
            field,
            cuts,
            translations,
        };
        raw.check_bijective()?;
        Ok(raw.canonical())
    }

    fn check_bijective(&self) -> Result<(), IetError> {
        let mut images: Vec<(AlgebraicNumber, AlgebraicNumber)> = (0..self.cuts.len())
            .map(|i| {
                (
                    &self.cuts[i] + &self.translations[i],
                    &self.end(i) + &self.translations[i],
                )
            })
            .collect();
        images.sort_by(|a, b| a.0.cmp(&b.0));
        let mut cur = self.field.zero();
        for (s, e) in images {
            if s != cur {
                return Err(IetError::NotBijective(cur.to_string()));
            }
            cur = e;
        }
        if !cur.is_one() {
            return Err(IetError::NotBijective(cur.to_string()));
        }
        Ok(())
    }

    /// Merges neighbours with equal translation.
    fn canonical(self) -> Self {
        let mut cuts = Vec::with_capacity(self.cuts.len());
        let mut translations: Vec<AlgebraicNumber> = Vec::with_capacity(self.cuts.len());
        for (c, t) in self.cuts.into_iter().zip(self.translations) {
            if translations.last() == Some(&t) {
                continue;
            }
            cuts.push(c);
            translations.push(t);
        }
        Iet {
            field: self.field,
            cuts,
            translations,
        }
    }

    /// Assembles an IET from pieces already known to be a bijection, sorted by
    /// domain start. Used by the internal algebra, which preserves bijectivity.
    pub(crate) fn from_sorted_pieces(
        field: &Field,
        pieces: Vec<(AlgebraicNumber, AlgebraicNumber)>,
    ) -> Self {
        let (cuts, translations) = pieces.into_iter().unzip();
        let raw = Iet {
            field: field.clone(),
            cuts,
            translations,
        };
        debug_assert!(raw.check_bijective().is_ok());
        raw.canonical()
    }

    pub fn identity(field: &Field) -> Self {
        Iet {
            field: field.clone(),
            cuts: vec![field.zero()],
            translations: vec![field.zero()],
        }
    }

    /// The circle rotation `x ↦ x + angle mod 1` as a 2-IET.
    pub fn rotation(angle: &AlgebraicNumber) -> Self {
        let field = angle.field().clone();
        let (_, a) = angle.floor_frac();
        if a.is_zero() {
            return Iet::identity(&field);
        }
        let one = field.one();
        Iet {
            cuts: vec![field.zero(), &one - &a],
            translations: vec![a.clone(), &a - &one],
            field,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn cuts(&self) -> &[AlgebraicNumber] {
        &self.cuts
    }

    pub fn translations(&self) -> &[AlgebraicNumber] {
        &self.translations
    }

    /// Number of maximal continuity intervals.
    pub fn interval_count(&self) -> usize {
        self.cuts.len()
    }

    /// Right endpoint of interval `i`.
    pub fn end(&self, i: usize) -> AlgebraicNumber {
        self.cuts
            .get(i + 1)
            .cloned()
            .unwrap_or_else(|| self.field.one())
    }

    pub fn interval(&self, i: usize) -> Interval {
        Interval::new(self.cuts[i].clone(), self.end(i))
    }

    pub fn is_identity(&self) -> bool {
        self.cuts.len() == 1 && self.translations[0].is_zero()
    }

    /// Index of the interval containing `x`, assuming `0 ≤ x < 1`.
    pub fn locate(&self, x: &AlgebraicNumber) -> usize {
        self.cuts.partition_point(|c| c <= x) - 1
    }

    fn in_range(&self, x: &AlgebraicNumber) -> Result<(), IetError> {
        if x.field() != &self.field {
            return Err(FieldError::MixedFields.into());
        }
        if x.is_negative() || *x >= self.field.one() {
            return Err(IetError::PointOutOfRange(x.to_string()));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &AlgebraicNumber) -> Result<AlgebraicNumber, IetError> {
        self.in_range(x)?;
        Ok(self.apply(x))
    }

    /// Unchecked evaluation; `x` must lie in `[0, 1)`.
    pub fn apply(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        x + &self.translations[self.locate(x)]
    }

    /// Translation in effect at `x`.
    pub fn translation_at(&self, x: &AlgebraicNumber) -> &AlgebraicNumber {
        &self.translations[self.locate(x)]
    }

    /// Left limit `lim_{y→x⁻} f(y)` for `0 < x ≤ 1`; may equal 1.
    pub fn left_limit(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let idx = self.cuts.partition_point(|c| c < x) - 1;
        x + &self.translations[idx]
    }

    /// `self ∘ g`, i.e. apply `g` first.
    pub fn compose(&self, g: &Iet) -> Iet {
        assert_eq!(self.field, g.field, "composing IETs over different fields");
        let mut pieces = Vec::with_capacity(self.cuts.len() + g.cuts.len());
        for i in 0..g.cuts.len() {
            let t = &g.translations[i];
            let a = &g.cuts[i] + t;
            let b = &g.end(i) + t;
            let mut j = self.locate(&a);
            let mut start = a;
            loop {
                pieces.push((&start - t, t + &self.translations[j]));
                let e = self.end(j);
                if e >= b {
                    break;
                }
                j += 1;
                start = e;
            }
        }
        Iet::from_sorted_pieces(&self.field, pieces)
    }

    pub fn inverse(&self) -> Iet {
        let mut pieces: Vec<(AlgebraicNumber, AlgebraicNumber)> = self
            .cuts
            .iter()
            .zip(&self.translations)
            .map(|(c, t)| (c + t, -t))
            .collect();
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        Iet::from_sorted_pieces(&self.field, pieces)
    }

    pub fn power(&self, n: i64) -> Iet {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Iet::identity(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Iet) -> Iet {
        self.compose(g).compose(&self.inverse())
    }

    /// BP(f): the discontinuities together with 0. Equal to the cuts of the
    /// canonical form.
    pub fn break_points(&self) -> Vec<AlgebraicNumber> {
        self.cuts.clone()
    }

    /// Distinct values of `f(x) - x`, sorted.
    pub fn translation_set(&self) -> Vec<AlgebraicNumber> {
        let mut out = self.translations.clone();
        out.sort();
        out.dedup();
        out
    }

    /// Fix(f) as a union of maximal intervals.
    pub fn fixed_set(&self) -> IntervalSet {
        IntervalSet::from_intervals(
            (0..self.cuts.len())
                .filter(|&i| self.translations[i].is_zero())
                .map(|i| self.interval(i))
                .collect(),
        )
    }

    /// Closure-free support: the complement of Fix(f).
    pub fn support(&self) -> IntervalSet {
        IntervalSet::unit(&self.field).difference(&self.fixed_set())
    }

    /// Image of a union of intervals.
    pub fn image_of_set(&self, set: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for iv in set.intervals() {
            let mut j = self.locate(&iv.start);
            let mut start = iv.start.clone();
            loop {
                let e = self.end(j);
                let stop = e.min_ref(&iv.end).clone();
                let t = &self.translations[j];
                out.push(Interval::new(&start + t, &stop + t));
                if e >= iv.end {
                    break;
                }
                j += 1;
                start = e;
            }
        }
        IntervalSet::from_intervals(out)
    }

    /// `(lengths, permutation)` view: interval `i` has length `lengths[i]` and
    /// lands in position `permutation[i]` (0-based) among the images.
    pub fn lengths_and_permutation(&self) -> (Vec<AlgebraicNumber>, Vec<usize>) {
        let lengths: Vec<_> = (0..self.cuts.len())
            .map(|i| self.interval(i).len())
            .collect();
        let mut order: Vec<usize> = (0..self.cuts.len()).collect();
        let starts: Vec<_> = (0..self.cuts.len())
            .map(|i| &self.cuts[i] + &self.translations[i])
            .collect();
        order.sort_by(|&a, &b| starts[a].cmp(&starts[b]));
        let mut perm = vec![0; order.len()];
        for (pos, &i) in order.iter().enumerate() {
            perm[i] = pos;
        }
        (lengths, perm)
    }

    /// Least `m ≤ cap` with `f^m = id`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut cur = self.clone();
        for m in 1..=cap {
            if cur.is_identity() {
                return Some(m);
            }
            cur = cur.compose(self);
        }
        None
    }

    pub fn commutes_with(&self, g: &Iet) -> bool {
        self.compose(g) == g.compose(self)
    }
}

/// `[f, g] = f ∘ g ∘ f⁻¹ ∘ g⁻¹`.
pub fn commutator(f: &Iet, g: &Iet) -> Iet {
    f.compose(g).compose(&f.inverse()).compose(&g.inverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Preset;

    #[test]
    fn identity_and_rotation() {
        let f = Preset::Sqrt2.field();
        let id = Iet::new(vec![f.zero()], vec![f.zero()]).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.apply(&f.ratio(1, 3)), f.ratio(1, 3));
        let a = &f.theta() - &f.one();
        let r = Iet::new(
            vec![f.zero(), &f.one() - &a],
            vec![a.clone(), &a - &f.one()],
        )
        .unwrap();
        assert_eq!(r, Iet::rotation(&a));
        assert_eq!(r.evaluate(&(&f.one() - &a)).unwrap(), f.zero());
        assert_eq!(r.break_points(), vec![f.zero(), &f.one() - &a]);
        assert!(r.fixed_set().is_empty());
    }

    #[test]
    fn overlapping_images_rejected() {
        let f = Preset::Rational.field();
        let err = Iet::new(vec![f.zero(), f.ratio(1, 2)], vec![f.ratio(1, 4), f.zero()]);
        assert!(matches!(err, Err(IetError::NotBijective(_))));
    }

    #[test]
    fn construction_errors() {
        let f = Preset::Rational.field();
        assert_eq!(Iet::new(vec![], vec![]), Err(IetError::Empty));
        assert_eq!(
            Iet::new(vec![f.ratio(1, 2)], vec![f.zero()]),
            Err(IetError::FirstCutNotZero)
        );
        assert_eq!(
            Iet::new(vec![f.zero(), f.zero()], vec![f.zero(), f.zero()]),
            Err(IetError::CutsNotIncreasing)
        );
        assert!(matches!(
            Iet::new(vec![f.zero(), f.one()], vec![f.zero(), f.zero()]),
            Err(IetError::CutOutOfRange(_))
        ));
        let id = Iet::identity(&f);
        assert!(matches!(
            id.evaluate(&f.one()),
            Err(IetError::PointOutOfRange(_))
        ));
    }

    #[test]
    fn canonical_merge() {
        let f = Preset::Rational.field();
        let g = Iet::new(
            vec![f.zero(), f.ratio(1, 4), f.ratio(1, 2)],
            vec![f.ratio(1, 2), f.ratio(1, 2), f.ratio(-1, 2)],
        )
        .unwrap();
        assert_eq!(g.interval_count(), 2);
        assert_eq!(g, Iet::rotation(&f.ratio(1, 2)));
    }

    #[test]
    fn compose_rotations() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let ra = Iet::rotation(&a);
        let rb = Iet::rotation(&(&f.one() - &a));
        assert!(ra.compose(&rb).is_identity());
        assert!(ra.compose(&ra.inverse()).is_identity());
        assert_eq!(ra.power(3), Iet::rotation(&a.scale_int(3)));
        assert_eq!(ra.power(-2), Iet::rotation(&a.scale_int(-2)));
        assert!(ra.power(0).is_identity());
    }

    #[test]
    fn left_limit_at_wrap() {
        let f = Preset::Rational.field();
        let r = Iet::rotation(&f.ratio(1, 4));
        assert_eq!(r.left_limit(&f.ratio(3, 4)), f.one());
        assert_eq!(r.apply(&f.ratio(3, 4)), f.zero());
    }

    #[test]
    fn lengths_and_permutation_view() {
        let f = Preset::Rational.field();
        let r = Iet::rotation(&f.ratio(1, 4));
        let (l, p) = r.lengths_and_permutation();
        assert_eq!(l, vec![f.ratio(3, 4), f.ratio(1, 4)]);
        assert_eq!(p, vec![1, 0]);
    }
}
