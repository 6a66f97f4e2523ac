//! Conjugating a product of restricted rotations into `G_n` by a piecewise
//! affine homeomorphism that maps the `i`-th block onto `[i/n, (i+1)/n)`.

use num_traits::ToPrimitive;

use crate::gn::GnElem;
use crate::iet::{Iet, Interval};
use crate::numfield::AlgebraicNumber;
use crate::perm::Perm;

/// Increasing piecewise affine bijection of `[0, 1)` sending
/// `[domain[i], domain[i+1])` affinely onto `[i/n, (i+1)/n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlMap {
    /// `0 = domain[0] < … < domain[n] = 1`.
    pub domain: Vec<AlgebraicNumber>,
}

impl PlMap {
    pub fn n(&self) -> usize {
        self.domain.len() - 1
    }

    fn block_of(&self, x: &AlgebraicNumber) -> usize {
        (self.domain.partition_point(|d| d <= x) - 1).min(self.n() - 1)
    }

    pub fn slope(&self, i: usize) -> AlgebraicNumber {
        let field = self.domain[0].field();
        let width = &self.domain[i + 1] - &self.domain[i];
        &field.ratio(1, self.n() as i64) / &width
    }

    pub fn slopes(&self) -> Vec<AlgebraicNumber> {
        (0..self.n()).map(|i| self.slope(i)).collect()
    }

    pub fn apply(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let i = self.block_of(x);
        let base = x.field().ratio(i as i64, self.n() as i64);
        &base + &(&(x - &self.domain[i]) * &self.slope(i))
    }

    pub fn apply_inverse(&self, y: &AlgebraicNumber) -> AlgebraicNumber {
        let field = y.field();
        let n = self.n() as i64;
        let (k, _) = (y * &field.from_int(n)).floor_frac();
        let i = k.to_usize().unwrap_or(0).min(self.n() - 1);
        let base = field.ratio(i as i64, n);
        &self.domain[i] + &(&(y - &base) / &self.slope(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlNormalization {
    /// Blocks `J_i` with the rotation angle on each (zero for fixed gaps).
    pub blocks: Vec<(Interval, AlgebraicNumber)>,
    pub pl_map: PlMap,
    pub phi: GnElem,
}

/// Reads `f` as a product of restricted rotations with disjoint supports:
/// fixed gaps are single intervals with translation 0, each support is a
/// pair of intervals exchanged by a rotation.
fn blocks_of(f: &Iet) -> Option<Vec<(Interval, AlgebraicNumber)>> {
    let mut out = Vec::new();
    let mut i = 0;
    let m = f.interval_count();
    while i < m {
        let t = &f.translations()[i];
        if t.is_zero() {
            out.push((f.interval(i), t.clone()));
            i += 1;
            continue;
        }
        if i + 1 >= m {
            return None;
        }
        let (a, b) = (f.interval(i), f.interval(i + 1));
        let t2 = &f.translations()[i + 1];
        if *t != b.len() || *t2 != -&a.len() {
            return None;
        }
        out.push((Interval::new(a.start, b.end), t.clone()));
        i += 2;
    }
    Some(out)
}

/// `P ∘ f ∘ P⁻¹` built piece by piece from the pieces of `f`.
fn conjugate_by(f: &Iet, p: &PlMap) -> Iet {
    let pieces = (0..f.interval_count())
        .map(|i| {
            let iv = f.interval(i);
            let k = p.block_of(&iv.start);
            let start = p.apply(&iv.start);
            (start, &f.translations()[i] * &p.slope(k))
        })
        .collect();
    Iet::from_sorted_pieces(f.field(), pieces)
}

/// Conjugates a product of restricted rotations into `G_n` with `σ = id`.
pub fn pl_normalize(f: &Iet) -> Option<PlNormalization> {
    let blocks = blocks_of(f)?;
    let mut domain: Vec<AlgebraicNumber> = blocks.iter().map(|(iv, _)| iv.start.clone()).collect();
    domain.push(f.field().one());
    let pl_map = PlMap { domain };
    let n = blocks.len();
    let alpha = blocks
        .iter()
        .enumerate()
        .map(|(i, (_, angle))| angle * &pl_map.slope(i))
        .collect();
    let phi = GnElem::new(alpha, Perm::identity(n)).ok()?;
    let conj = conjugate_by(f, &pl_map);
    let embedded = phi.embed();
    if conj != embedded {
        return None;
    }
    // Spot check the identity P(f(x)) = Φ(P(x)) at every cut of f.
    for c in f.cuts() {
        if pl_map.apply(&f.apply(c)) != embedded.apply(&pl_map.apply(c)) {
            return None;
        }
    }
    Some(PlNormalization {
        blocks,
        pl_map,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{product_of_restricted_rotations, RestrictedRotation};
    use crate::numfield::Preset;

    #[test]
    fn halves_need_no_change() {
        let f = Preset::Sqrt2.field();
        let a = &(&f.theta() - &f.one()) / &f.from_int(4);
        let c = f.ratio(1, 7);
        let g = product_of_restricted_rotations(&[
            RestrictedRotation::new(a.clone(), f.zero(), f.ratio(1, 2)).unwrap(),
            RestrictedRotation::new(c.clone(), f.ratio(1, 2), f.one()).unwrap(),
        ])
        .unwrap();
        let norm = pl_normalize(&g).unwrap();
        assert_eq!(norm.pl_map.slopes(), vec![f.one(), f.one()]);
        assert_eq!(norm.phi.alpha(), &[a, c]);
    }

    #[test]
    fn third_and_gap() {
        let f = Preset::Sqrt2.field();
        let a = &(&f.theta() - &f.one()) / &f.from_int(4);
        let g = product_of_restricted_rotations(&[RestrictedRotation::new(
            a.clone(),
            f.zero(),
            f.ratio(1, 3),
        )
        .unwrap()])
        .unwrap();
        let norm = pl_normalize(&g).unwrap();
        assert_eq!(norm.pl_map.slopes(), vec![f.ratio(3, 2), f.ratio(3, 4)]);
        assert_eq!(norm.phi.alpha(), &[&a * &f.ratio(3, 2), f.zero()]);
        let x = f.ratio(1, 5);
        assert_eq!(norm.pl_map.apply_inverse(&norm.pl_map.apply(&x)), x);
    }

    #[test]
    fn rotation_and_non_products() {
        let f = Preset::Sqrt2.field();
        let a = &f.theta() - &f.one();
        let norm = pl_normalize(&Iet::rotation(&a)).unwrap();
        assert_eq!(norm.phi.n(), 1);
        assert_eq!(norm.phi.alpha(), &[a]);
        let swap = Iet::new(
            vec![f.zero(), f.ratio(1, 3)],
            vec![f.ratio(2, 3), f.ratio(-1, 3)],
        )
        .unwrap();
        // this is a rotation by 2/3, so it normalizes
        assert!(pl_normalize(&swap).is_some());
        let three = Iet::new(
            vec![f.zero(), f.ratio(1, 4), f.ratio(1, 2)],
            vec![f.ratio(3, 4), f.ratio(1, 4), f.ratio(-1, 2)],
        )
        .unwrap();
        assert!(pl_normalize(&three).is_none());
    }
}
