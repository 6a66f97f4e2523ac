//! Search for periodic points with an exact certificate of absence.

use crate::gn::GnElem;
use crate::iet::{Iet, IntervalSet};

use super::decompose::decompose_aperiodic;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodicVerdict {
    /// `Fix(f^k)` is the given nonempty set and `k` is least.
    Found(usize, IntervalSet),
    NoneUpTo(usize),
    /// No periodic points of any period.
    CertifiedNone,
}

/// Largest `n` tried when looking for `f` inside some `G_n`.
const GN_SEARCH_CAP: usize = 64;

pub fn periodic_points_up_to(f: &Iet, k: usize) -> PeriodicVerdict {
    let k = k.max(1);
    let mut power = f.clone();
    for m in 1..=k {
        let fix = power.fixed_set();
        if !fix.is_empty() {
            return PeriodicVerdict::Found(m, fix);
        }
        if m < k {
            power = power.compose(f);
        }
    }
    let limit = (2 * f.interval_count()).clamp(12, GN_SEARCH_CAP);
    for n in 1..=limit {
        if let Some(e) = GnElem::recognize(n, f) {
            if e.periodic_point_free() {
                return PeriodicVerdict::CertifiedNone;
            }
        }
    }
    let (minimal, residual) = decompose_aperiodic(f, &IntervalSet::unit(f.field()), k);
    let certified = residual.is_empty()
        && minimal
            .iter()
            .all(|(_, s)| *s == super::MinimalStatus::Certified);
    if certified {
        PeriodicVerdict::CertifiedNone
    } else {
        PeriodicVerdict::NoneUpTo(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::Preset;

    #[test]
    fn examples() {
        let f = Preset::Rational.field();
        assert_eq!(
            periodic_points_up_to(&Iet::rotation(&f.ratio(1, 3)), 10),
            PeriodicVerdict::Found(3, IntervalSet::unit(&f))
        );
        assert_eq!(
            periodic_points_up_to(&Iet::rotation(&f.ratio(1, 30)), 10),
            PeriodicVerdict::NoneUpTo(10)
        );
        let s = Preset::Sqrt2.field();
        assert_eq!(
            periodic_points_up_to(&Iet::rotation(&(&s.theta() - &s.one())), 10),
            PeriodicVerdict::CertifiedNone
        );
    }
}
