use std::fmt;

use crate::numfield::{AlgebraicNumber, Field};

/// Half-open interval `[start, end)` with `start < end`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub start: AlgebraicNumber,
    pub end: AlgebraicNumber,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

impl Interval {
    pub fn new(start: AlgebraicNumber, end: AlgebraicNumber) -> Self {
        debug_assert!(start < end, "empty interval");
        Interval { start, end }
    }

    pub fn len(&self) -> AlgebraicNumber {
        &self.end - &self.start
    }

    pub fn contains(&self, x: &AlgebraicNumber) -> bool {
        self.start <= *x && *x < self.end
    }

    pub fn shift(&self, t: &AlgebraicNumber) -> Interval {
        Interval {
            start: &self.start + t,
            end: &self.end + t,
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let s = self.start.max_ref(&other.start).clone();
        let e = self.end.min_ref(&other.end).clone();
        (s < e).then(|| Interval::new(s, e))
    }
}

/// Finite disjoint union of half-open intervals, sorted, with touching
/// intervals merged.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv:?}")?;
        }
        Ok(())
    }
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn unit(field: &Field) -> Self {
        IntervalSet {
            intervals: vec![Interval::new(field.zero(), field.one())],
        }
    }

    pub fn single(iv: Interval) -> Self {
        IntervalSet {
            intervals: vec![iv],
        }
    }

    /// Normalizes an arbitrary list of (possibly overlapping) intervals.
    pub fn from_intervals(mut ivs: Vec<Interval>) -> Self {
        ivs.sort_by(|a, b| a.start.cmp(&b.start));
        let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
        for iv in ivs {
            match out.last_mut() {
                Some(last) if iv.start <= last.end => {
                    if iv.end > last.end {
                        last.end = iv.end;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn measure(&self, field: &Field) -> AlgebraicNumber {
        self.intervals
            .iter()
            .fold(field.zero(), |acc, iv| &acc + &iv.len())
    }

    pub fn contains(&self, x: &AlgebraicNumber) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.start <= *x);
        idx > 0 && self.intervals[idx - 1].contains(x)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        IntervalSet::from_intervals(all)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.intervals.len() && j < other.intervals.len() {
            let a = &self.intervals[i];
            let b = &other.intervals[j];
            if let Some(iv) = a.intersect(b) {
                out.push(iv);
            }
            if a.end <= b.end {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::from_intervals(out)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in &self.intervals {
            let mut cur = a.start.clone();
            for b in &other.intervals {
                if b.end <= cur || b.start >= a.end {
                    continue;
                }
                if b.start > cur {
                    out.push(Interval::new(cur.clone(), b.start.clone()));
                }
                cur = b.end.clone();
                if cur >= a.end {
                    break;
                }
            }
            if cur < a.end {
                out.push(Interval::new(cur, a.end.clone()));
            }
        }
        IntervalSet::from_intervals(out)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Endpoints of all intervals, in order.
    pub fn endpoints(&self) -> Vec<AlgebraicNumber> {
        self.intervals
            .iter()
            .flat_map(|iv| [iv.start.clone(), iv.end.clone()])
            .collect()
    }
}
