//! The morphism `ℓ` and local permutations for the groups generated by an
//! irrational rotation together with block permutations of `[0, 1)`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::iet::{Iet, Interval};
use crate::numfield::{int, AlgebraicNumber, Rat};
use crate::perm::Perm;

/// Groups `⟨R_α, block permutations of n equal blocks⟩`. The metabelian
/// example is the case `n = 3` with the single swap of the outer thirds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Metabelian3 { alpha: AlgebraicNumber },
    Alternating { n: usize, alpha: AlgebraicNumber },
}

impl Family {
    pub fn alpha(&self) -> &AlgebraicNumber {
        match self {
            Family::Metabelian3 { alpha } | Family::Alternating { alpha, .. } => alpha,
        }
    }

    pub fn blocks(&self) -> usize {
        match self {
            Family::Metabelian3 { .. } => 3,
            Family::Alternating { n, .. } => *n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllValue {
    pub ell: i64,
    /// Each canonical interval with its `p`, where the translation there is
    /// `ℓ·α + p/n`.
    pub p_table: Vec<(Interval, i64)>,
}

/// The rational `c` with `t - c·α` rational, if any; `α` must be irrational.
fn alpha_multiple(t: &AlgebraicNumber, alpha: &AlgebraicNumber) -> Option<Rat> {
    let a = alpha.coeffs();
    let tc = t.coeffs();
    let k = (1..a.len()).find(|&k| !a[k].is_zero())?;
    let c = &tc[k] / &a[k];
    (1..a.len()).all(|j| tc[j] == &c * &a[j]).then_some(c)
}

/// Reads every translation of `f` as `ℓ·α + p/n` with one integer `ℓ`.
/// `None` when no such form exists, which shows `f` is outside the group.
pub fn ell_morphism(family: &Family, f: &Iet) -> Option<EllValue> {
    let alpha = family.alpha();
    let n = family.blocks() as i64;
    let mut ell: Option<Rat> = None;
    let mut p_table = Vec::with_capacity(f.interval_count());
    for i in 0..f.interval_count() {
        let t = &f.translations()[i];
        let c = alpha_multiple(t, alpha)?;
        if !c.is_integer() || ell.as_ref().is_some_and(|e| *e != c) {
            return None;
        }
        let rest = t - &alpha.scale(&c);
        let q = rest.as_rational()? * int(n);
        if !q.is_integer() {
            return None;
        }
        p_table.push((f.interval(i), q.to_integer().to_i64()?));
        ell = Some(c);
    }
    Some(EllValue {
        ell: ell?.to_integer().to_i64()?,
        p_table,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPermutation {
    pub perm: Perm,
    /// Width of the copies `[x + (p-1)/n, x + (p-1)/n + β)` used.
    pub beta: AlgebraicNumber,
}

/// The permutation `ω` of the translated copies of a small interval at `x`,
/// one in each block, with `f(J_p) = J_ω(p)`. Requires `0 ≤ x < 1/n` and
/// every translation of `f` in `(1/n)ℤ`.
pub fn local_permutation(f: &Iet, x: &AlgebraicNumber, n: usize) -> Option<LocalPermutation> {
    let field = f.field();
    if n == 0 || x.is_negative() || *x >= field.ratio(1, n as i64) {
        return None;
    }
    let nn = int(n as i64);
    let steps: Vec<BigInt> = f
        .translations()
        .iter()
        .map(|t| {
            let q = t.as_rational()? * &nn;
            q.is_integer().then(|| q.to_integer())
        })
        .collect::<Option<_>>()?;
    let one = field.one();
    let mut gap: Option<AlgebraicNumber> = None;
    let mut images = Vec::with_capacity(n);
    for p in 0..n {
        let xp = x + &field.ratio(p as i64, n as i64);
        let k = f.locate(&xp);
        let next = f.cuts().get(k + 1).unwrap_or(&one);
        let g = next - &xp;
        if gap.as_ref().is_none_or(|m| g < *m) {
            gap = Some(g);
        }
        let q = p as i64 + steps[k].to_i64()?;
        images.push(usize::try_from(q).ok()?);
    }
    let beta = &gap? / &field.from_int(2);
    Some(LocalPermutation {
        perm: Perm::from_images(images)?,
        beta,
    })
}
