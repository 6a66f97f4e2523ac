//! Rotations restricted to a subinterval and products of such rotations
//! with pairwise disjoint supports.

use crate::numfield::AlgebraicNumber;

use super::{Iet, IetError};

/// Rotation by `angle` of the circle `[lo, hi)`, identity elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedRotation {
    pub angle: AlgebraicNumber,
    pub lo: AlgebraicNumber,
    pub hi: AlgebraicNumber,
}

impl RestrictedRotation {
    pub fn new(
        angle: AlgebraicNumber,
        lo: AlgebraicNumber,
        hi: AlgebraicNumber,
    ) -> Result<Self, IetError> {
        let field = lo.field().clone();
        if hi.field() != &field || angle.field() != &field {
            return Err(crate::numfield::FieldError::MixedFields.into());
        }
        if lo.is_negative() || lo >= hi || hi > field.one() {
            return Err(IetError::BadSupport(lo.to_string(), hi.to_string()));
        }
        if angle.is_negative() || angle >= &hi - &lo {
            return Err(IetError::AngleOutOfRange(angle.to_string()));
        }
        Ok(RestrictedRotation { angle, lo, hi })
    }

    /// Domain pieces `(start, translation)` covering `[lo, hi)`.
    fn pieces(&self) -> Vec<(AlgebraicNumber, AlgebraicNumber)> {
        if self.angle.is_zero() {
            return vec![(self.lo.clone(), self.lo.field().zero())];
        }
        let len = &self.hi - &self.lo;
        vec![
            (self.lo.clone(), self.angle.clone()),
            (&self.hi - &self.angle, &self.angle - &len),
        ]
    }
}

pub fn restricted_rotation(
    angle: &AlgebraicNumber,
    lo: &AlgebraicNumber,
    hi: &AlgebraicNumber,
) -> Result<Iet, IetError> {
    let r = RestrictedRotation::new(angle.clone(), lo.clone(), hi.clone())?;
    product_of_restricted_rotations(&[r])
}

/// Product of rotations with pairwise disjoint supports. The factors commute,
/// so order does not matter.
pub fn product_of_restricted_rotations(rots: &[RestrictedRotation]) -> Result<Iet, IetError> {
    let Some(first) = rots.first() else {
        return Err(IetError::Empty);
    };
    let field = first.lo.field().clone();
    let mut sorted: Vec<&RestrictedRotation> = rots.iter().collect();
    sorted.sort_by(|a, b| a.lo.cmp(&b.lo));
    for w in sorted.windows(2) {
        if w[1].lo < w[0].hi {
            return Err(IetError::OverlappingSupports);
        }
    }
    let zero = field.zero();
    let mut pieces = Vec::new();
    let mut cur = field.zero();
    for r in sorted {
        if r.lo > cur {
            pieces.push((cur.clone(), zero.clone()));
        }
        pieces.extend(r.pieces());
        cur = r.hi.clone();
    }
    if cur < field.one() {
        pieces.push((cur, zero));
    }
    Ok(Iet::from_sorted_pieces(&field, pieces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{Interval, IntervalSet};
    use crate::numfield::Preset;

    #[test]
    fn two_rotations_make_five_intervals() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let third = &a / &f.from_int(3);
        let half = &a / &f.from_int(2);
        let r1 = RestrictedRotation::new(third.clone(), f.zero(), f.ratio(1, 3)).unwrap();
        let r2 = RestrictedRotation::new(half.clone(), f.ratio(1, 2), f.one()).unwrap();
        let g = product_of_restricted_rotations(&[r2, r1]).unwrap();
        assert_eq!(g.interval_count(), 5);
        assert_eq!(g.apply(&f.zero()), third);
        assert_eq!(g.apply(&f.ratio(2, 5)), f.ratio(2, 5));
        assert_eq!(
            g.fixed_set(),
            IntervalSet::single(Interval::new(f.ratio(1, 3), f.ratio(1, 2)))
        );
    }

    #[test]
    fn rejects_bad_input() {
        let f = Preset::Rational.field();
        assert!(RestrictedRotation::new(f.ratio(1, 2), f.zero(), f.ratio(1, 2)).is_err());
        assert!(RestrictedRotation::new(f.zero(), f.ratio(1, 2), f.ratio(1, 2)).is_err());
        let r1 = RestrictedRotation::new(f.ratio(1, 8), f.zero(), f.ratio(1, 2)).unwrap();
        let r2 = RestrictedRotation::new(f.ratio(1, 8), f.ratio(1, 4), f.one()).unwrap();
        assert_eq!(
            product_of_restricted_rotations(&[r1, r2]),
            Err(IetError::OverlappingSupports)
        );
    }

    #[test]
    fn full_support_is_rotation() {
        let f = Preset::Rational.field();
        let g = restricted_rotation(&f.ratio(1, 3), &f.zero(), &f.one()).unwrap();
        assert_eq!(g, Iet::rotation(&f.ratio(1, 3)));
    }
}
