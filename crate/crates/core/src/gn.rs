//! The subgroup `G_n`: IETs permuting the blocks `I_i = [i/n, (i+1)/n)` and
//! acting on each block as a rotation of the circle of length `1/n`.
//!
//! An element is a rotation vector together with a block permutation. The
//! element `(α, σ)` rotates `I_i` by `α[i]` and then moves it onto `I_σ(i)`,
//! which gives the law
//! `α_{f∘g}[i] = α_f[σ_g(i)] + α_g[i]`, `σ_{f∘g} = σ_f ∘ σ_g`.

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::iet::Iet;
use crate::numfield::{int, q_linear_rank, AlgebraicNumber, Field, FieldError};
use crate::perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GnError {
    #[error("n must be positive")]
    ZeroN,
    #[error("expected {expected} angles, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("sigma is not a permutation of 1..{0}")]
    BadSigma(usize),
    #[error("elements of G_{0} and G_{1} cannot be composed")]
    MismatchedN(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GnElem {
    alpha: Vec<AlgebraicNumber>,
    sigma: Perm,
}

impl fmt::Debug for GnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.alpha.iter().map(|a| a.to_string()).collect();
        let sigma: Vec<String> = self
            .sigma
            .one_based()
            .iter()
            .map(|i| i.to_string())
            .collect();
        write!(
            f,
            "gn {{ n: {}; alpha: [{}]; sigma: [{}] }}",
            self.n(),
            alpha.join(", "),
            sigma.join(", ")
        )
    }
}

fn block_width(field: &Field, n: usize) -> AlgebraicNumber {
    field.ratio(1, n as i64)
}

impl GnElem {
    /// Angles are reduced into `[0, 1/n)`.
    pub fn new(alpha: Vec<AlgebraicNumber>, sigma: Perm) -> Result<Self, GnError> {
        let n = sigma.n();
        if n == 0 {
            return Err(GnError::ZeroN);
        }
        if alpha.len() != n {
            return Err(GnError::WrongLength {
                expected: n,
                got: alpha.len(),
            });
        }
        let field = alpha[0].field().clone();
        if alpha.iter().any(|a| a.field() != &field) {
            return Err(FieldError::MixedFields.into());
        }
        let w = block_width(&field, n);
        let alpha = alpha.iter().map(|a| a.rem_euclid(&w)).collect();
        Ok(GnElem { alpha, sigma })
    }

    /// Like [`GnElem::new`] with a one-based image list for `sigma`.
    pub fn from_parts(alpha: Vec<AlgebraicNumber>, sigma: &[usize]) -> Result<Self, GnError> {
        let perm = Perm::from_one_based(sigma).ok_or(GnError::BadSigma(sigma.len()))?;
        GnElem::new(alpha, perm)
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        GnElem {
            alpha: vec![field.zero(); n],
            sigma: Perm::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.n()
    }

    pub fn field(&self) -> &Field {
        self.alpha[0].field()
    }

    pub fn alpha(&self) -> &[AlgebraicNumber] {
        &self.alpha
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.alpha.iter().all(AlgebraicNumber::is_zero)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &GnElem) -> Result<GnElem, GnError> {
        if self.n() != g.n() {
            return Err(GnError::MismatchedN(self.n(), g.n()));
        }
        let w = block_width(self.field(), self.n());
        let alpha = (0..self.n())
            .map(|i| (&self.alpha[g.sigma.apply(i)] + &g.alpha[i]).rem_euclid(&w))
            .collect();
        Ok(GnElem {
            alpha,
            sigma: self.sigma.compose(&g.sigma),
        })
    }

    pub fn inverse(&self) -> GnElem {
        let w = block_width(self.field(), self.n());
        let inv = self.sigma.inverse();
        let alpha = (0..self.n())
            .map(|j| (-&self.alpha[inv.apply(j)]).rem_euclid(&w))
            .collect();
        GnElem { alpha, sigma: inv }
    }

    pub fn power(&self, k: i64) -> GnElem {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GnElem::identity(self.field(), self.n());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base).expect("same n");
        }
        acc
    }

    pub fn embed(&self) -> Iet {
        let field = self.field().clone();
        let n = self.n() as i64;
        let w = block_width(&field, self.n());
        let mut pieces = Vec::with_capacity(2 * self.n());
        for (i, a) in self.alpha.iter().enumerate() {
            let shift = field.ratio(self.sigma.apply(i) as i64 - i as i64, n);
            let lo = field.ratio(i as i64, n);
            if a.is_zero() {
                pieces.push((lo, shift));
            } else {
                let hi = field.ratio(i as i64 + 1, n);
                pieces.push((lo, a + &shift));
                pieces.push((&hi - a, &(a - &w) + &shift));
            }
        }
        Iet::from_sorted_pieces(&field, pieces)
    }

    /// The unique element of `G_n` embedding to `f`, if any.
    pub fn recognize(n: usize, f: &Iet) -> Option<GnElem> {
        if n == 0 {
            return None;
        }
        let field = f.field();
        let nn = field.from_int(n as i64);
        let mut alpha = Vec::with_capacity(n);
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let y = f.apply(&field.ratio(i as i64, n as i64));
            let (k, _) = (&y * &nn).floor_frac();
            let j = k.to_usize()?;
            alpha.push(&y - &field.ratio(j as i64, n as i64));
            images.push(j);
        }
        let sigma = Perm::from_images(images)?;
        let e = GnElem::new(alpha, sigma).ok()?;
        (e.embed() == *f).then_some(e)
    }

    /// Sum of the angles along each cycle of `sigma`, paired with the cycle.
    fn cycle_sums(&self) -> Vec<(Vec<usize>, AlgebraicNumber)> {
        self.sigma
            .cycles()
            .into_iter()
            .map(|c| {
                let s = c
                    .iter()
                    .fold(self.field().zero(), |acc, &i| &acc + &self.alpha[i]);
                (c, s)
            })
            .collect()
    }

    /// True iff no power of the element has a fixed point: every cycle sum
    /// is irrational.
    pub fn periodic_point_free(&self) -> bool {
        let one = self.field().one();
        self.cycle_sums()
            .iter()
            .all(|(_, s)| q_linear_rank(&[one.clone(), s.clone()]) == 2)
    }

    /// Least `m ≥ 1` with `self^m = id`, or `None` for infinite order.
    pub fn order(&self) -> Option<u64> {
        let n = int(self.n() as i64);
        let mut m: u64 = 1;
        for (c, s) in self.cycle_sums() {
            // Return map to a block of the cycle rotates the circle of
            // length 1/n by s, so its order is the denominator of n·s.
            let q = s.as_rational()?;
            let d = (q * &n).fract().denom().to_u64()?;
            m = m.lcm(&(c.len() as u64 * d));
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Preset;

    #[test]
    fn compose_matches_iet_level() {
        let f = Preset::Rational.field();
        let a = GnElem::from_parts(vec![f.ratio(1, 8), f.zero()], &[2, 1]).unwrap();
        let b = GnElem::from_parts(vec![f.zero(), f.ratio(1, 8)], &[2, 1]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.embed(), a.embed().compose(&b.embed()));
        assert_eq!(ab.alpha(), &[f.zero(), f.ratio(1, 4)]);
        assert!(ab.sigma().is_identity());
    }

    #[test]
    fn inverse_and_identity() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let e = GnElem::from_parts(vec![a.clone(), f.ratio(1, 7), f.zero()], &[3, 1, 2]).unwrap();
        assert!(e.compose(&e.inverse()).unwrap().is_identity());
        assert!(GnElem::identity(&f, 3).embed().is_identity());
        assert_eq!(e.power(3), e.compose(&e).unwrap().compose(&e).unwrap());
    }

    #[test]
    fn recognize_examples() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let r = Iet::rotation(&a);
        let e = GnElem::recognize(1, &r).unwrap();
        assert_eq!(e.alpha(), &[a]);
        // Three pieces with a cut at 1/3 do not preserve the halves.
        let g = Iet::new(
            vec![f.zero(), f.ratio(1, 3)],
            vec![f.ratio(2, 3), f.ratio(-1, 3)],
        )
        .unwrap();
        assert_eq!(GnElem::recognize(2, &g), None);
    }

    #[test]
    fn periodic_point_freeness_and_order() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let half = &a / &f.from_int(2);
        let e = GnElem::from_parts(vec![half, f.zero()], &[2, 1]).unwrap();
        assert!(e.periodic_point_free());
        assert_eq!(e.order(), None);
        let q = GnElem::from_parts(vec![f.ratio(1, 8), f.ratio(1, 8)], &[1, 2]).unwrap();
        assert!(!q.periodic_point_free());
        // rotation by 1/8 on circles of length 1/2
        assert_eq!(q.order(), Some(4));
        assert_eq!(GnElem::identity(&f, 4).order(), Some(1));
    }

    #[test]
    fn metabelian_generator_has_order_two() {
        let f = Preset::Rational.field();
        let g = GnElem::from_parts(vec![f.zero(); 3], &[3, 2, 1]).unwrap();
        assert_eq!(g.order(), Some(2));
        assert_eq!(g.embed().apply(&f.zero()), f.ratio(2, 3));
    }
}
