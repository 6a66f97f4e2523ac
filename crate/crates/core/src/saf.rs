//! The SAF invariant `Σ λᵢ ∧ tᵢ`, a conjugacy obstruction.
//!
//! Wedges are stored on the field's power basis: `u ∧ v` becomes the
//! antisymmetric matrix `(u vᵀ - v uᵀ) / 2` of coordinate vectors. Inside a
//! fixed number field this loses nothing.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::iet::Iet;
use crate::numfield::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SafValue {
    matrix: Vec<Vec<Rat>>,
}

impl SafValue {
    pub fn zero(d: usize) -> Self {
        SafValue {
            matrix: vec![vec![Rat::zero(); d]; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Row `i` pairs the `θ^i` coordinate of lengths with the others.
    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.matrix[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.matrix[i][j] == -&self.matrix[j][i]))
    }

    fn zip(&self, other: &Self, op: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        assert_eq!(self.dim(), other.dim(), "SAF values of different fields");
        SafValue {
            matrix: self
                .matrix
                .iter()
                .zip(&other.matrix)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| op(a, b)).collect())
                .collect(),
        }
    }
}

impl Add for &SafValue {
    type Output = SafValue;
    fn add(self, rhs: &SafValue) -> SafValue {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &SafValue {
    type Output = SafValue;
    fn sub(self, rhs: &SafValue) -> SafValue {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &SafValue {
    type Output = SafValue;
    fn neg(self) -> SafValue {
        self.zip(self, |a, _| -a)
    }
}

impl fmt::Display for SafValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn saf_invariant(f: &Iet) -> SafValue {
    let d = f.field().degree();
    let mut m = vec![vec![Rat::zero(); d]; d];
    for i in 0..f.interval_count() {
        let len = f.interval(i).len();
        let t = &f.translations()[i];
        for (a, la) in len.coeffs().iter().enumerate() {
            if la.is_zero() {
                continue;
            }
            for (b, tb) in t.coeffs().iter().enumerate() {
                m[a][b] += la * tb;
            }
        }
    }
    let half = Rat::new(1.into(), 2.into());
    let matrix = (0..d)
        .map(|i| (0..d).map(|j| (&m[i][j] - &m[j][i]) * &half).collect())
        .collect();
    SafValue { matrix }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SafVerdict {
    PossiblyConjugate,
    NotConjugate,
}

impl fmt::Display for SafVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SafVerdict::PossiblyConjugate => "possibly conjugate",
            SafVerdict::NotConjugate => "not conjugate",
        })
    }
}

pub fn saf_distinguish(f: &Iet, g: &Iet) -> SafVerdict {
    if saf_invariant(f) == saf_invariant(g) {
        SafVerdict::PossiblyConjugate
    } else {
        SafVerdict::NotConjugate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{product_of_restricted_rotations, RestrictedRotation};
    use crate::numfield::{AlgebraicNumber, Preset};

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    // u ∧ v written out on a 2-dimensional basis.
    fn wedge2(u: (Rat, Rat), v: (Rat, Rat)) -> Rat {
        &u.0 * &v.1 - &u.1 * &v.0
    }

    #[test]
    fn rotation_by_irrational() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let s = saf_invariant(&Iet::rotation(&a));
        // λ = (2 - θ, θ - 1), t = (θ - 1, θ - 2): the bilinear sum on the
        // (1, θ) entry is ½ Σ λ ∧ t
        let sum = wedge2((r(2, 1), r(-1, 1)), (r(-1, 1), r(1, 1)))
            + wedge2((r(-1, 1), r(1, 1)), (r(-2, 1), r(1, 1)));
        assert_eq!(sum, r(2, 1));
        assert_eq!(*s.get(0, 1), sum * r(1, 2));
        assert_eq!(*s.get(0, 1), r(1, 1));
        assert!(s.is_antisymmetric());
    }

    #[test]
    fn trivial_cases() {
        let f = Preset::Cubic2.field();
        assert!(saf_invariant(&Iet::identity(&f)).is_zero());
        assert!(saf_invariant(&Iet::rotation(&f.ratio(3, 7))).is_zero());
    }

    #[test]
    fn distinguishes_rotations() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let a2 = (&a + &a).floor_frac().1;
        let ra = Iet::rotation(&a);
        assert_eq!(
            saf_distinguish(&ra, &Iet::rotation(&a2)),
            SafVerdict::NotConjugate
        );
        assert_eq!(saf_distinguish(&ra, &ra), SafVerdict::PossiblyConjugate);
    }

    #[test]
    fn additive_over_supports() {
        let f = Preset::Sqrt2.field();
        let a: AlgebraicNumber = &(&f.theta() - &f.one()) / &f.from_int(4);
        let rots = [
            RestrictedRotation::new(a.clone(), f.zero(), f.ratio(1, 2)).unwrap(),
            RestrictedRotation::new(f.ratio(1, 7), f.ratio(1, 2), f.ratio(3, 4)).unwrap(),
            RestrictedRotation::new(a.clone(), f.ratio(3, 4), f.one()).unwrap(),
        ];
        let whole = saf_invariant(&product_of_restricted_rotations(&rots).unwrap());
        let parts = rots.iter().fold(SafValue::zero(2), |acc, r| {
            &acc + &saf_invariant(
                &product_of_restricted_rotations(std::slice::from_ref(r)).unwrap(),
            )
        });
        assert_eq!(whole, parts);
        assert!(!whole.is_zero());
    }
}
