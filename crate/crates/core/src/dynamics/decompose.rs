//! Splitting `[0, 1)` into periodic and minimal components.
//!
//! Periodic points are found exactly from `Fix(f^k)`. The rest is cut into
//! invariant blocks, and each block is certified minimal when some induced
//! map on it (the block itself, or a first return to one of its pieces) has
//! an irreducible permutation and ℚ-independent lengths.

use crate::iet::{Iet, Interval, IntervalSet};
use crate::numfield::{q_linear_rank, AlgebraicNumber};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalStatus {
    Certified,
    /// Not refuted up to the given depth, but no certificate found.
    Heuristic(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub periodic: Vec<(IntervalSet, u64)>,
    pub minimal: Vec<(IntervalSet, MinimalStatus)>,
    pub residual: IntervalSet,
}

impl ComponentReport {
    pub fn all_certified(&self) -> bool {
        self.residual.is_empty()
            && self
                .minimal
                .iter()
                .all(|(_, s)| *s == MinimalStatus::Certified)
    }
}

/// Intervals of `set` refined by the continuity intervals of `f`.
pub(crate) fn atoms(f: &Iet, set: &IntervalSet) -> Vec<Interval> {
    let mut out = Vec::new();
    for iv in set.intervals() {
        let mut j = f.locate(&iv.start);
        let mut start = iv.start.clone();
        loop {
            let e = f.end(j);
            if e >= iv.end {
                out.push(Interval::new(start, iv.end.clone()));
                break;
            }
            out.push(Interval::new(start, e.clone()));
            start = e;
            j += 1;
        }
    }
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Splits an invariant set into classes linked by `f`: atom `A` joins every
/// atom meeting `f(A)`. Each class is again invariant.
pub(crate) fn invariant_classes(f: &Iet, set: &IntervalSet) -> Vec<IntervalSet> {
    let atoms = atoms(f, set);
    let mut parent: Vec<usize> = (0..atoms.len()).collect();
    for (i, a) in atoms.iter().enumerate() {
        let img = a.shift(f.translation_at(&a.start));
        let first = atoms.partition_point(|b| b.end <= img.start);
        for (j, b) in atoms.iter().enumerate().skip(first) {
            if b.start >= img.end {
                break;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut groups: Vec<(usize, Vec<Interval>)> = Vec::new();
    for (i, a) in atoms.into_iter().enumerate() {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, v)) => v.push(a),
            None => groups.push((r, vec![a])),
        }
    }
    groups
        .into_iter()
        .map(|(_, v)| IntervalSet::from_intervals(v))
        .collect()
}

/// Induced exchange as pieces `(start, len, translation)` sorted by start.
type Pieces = Vec<(AlgebraicNumber, AlgebraicNumber, AlgebraicNumber)>;

fn merge_pieces(mut pieces: Pieces) -> Pieces {
    pieces.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Pieces = Vec::with_capacity(pieces.len());
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last.2 == p.2 && &last.0 + &last.1 == p.0 {
                last.1 = &last.1 + &p.1;
                continue;
            }
        }
        out.push(p);
    }
    out
}

/// Image order of the pieces and the least `k` such that the first `k`
/// pieces map onto the first `k` slots, if one exists below the count.
fn reducible_at(pieces: &Pieces) -> Option<usize> {
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&a, &b| (&pieces[a].0 + &pieces[a].2).cmp(&(&pieces[b].0 + &pieces[b].2)));
    let mut max_seen = 0;
    for (slot, &i) in order.iter().enumerate().take(pieces.len() - 1) {
        max_seen = max_seen.max(i);
        if max_seen == slot {
            return Some(slot + 1);
        }
    }
    None
}

fn keane(pieces: &Pieces) -> bool {
    let lens: Vec<_> = pieces.iter().map(|p| p.1.clone()).collect();
    pieces.len() >= 2 && q_linear_rank(&lens) == pieces.len()
}

/// `f` restricted to an invariant set, with the gaps collapsed.
fn collapsed(f: &Iet, set: &IntervalSet) -> Pieces {
    let ivs = set.intervals();
    // offset[i] = total gap length before interval i
    let field = f.field();
    let mut offsets = Vec::with_capacity(ivs.len());
    let mut gap = field.zero();
    let mut prev_end = field.zero();
    for iv in ivs {
        gap = &gap + &(&iv.start - &prev_end);
        offsets.push(gap.clone());
        prev_end = iv.end.clone();
    }
    let collapse = |x: &AlgebraicNumber| {
        let i = ivs.partition_point(|iv| iv.start <= *x) - 1;
        x - &offsets[i]
    };
    let pieces = atoms(f, set)
        .into_iter()
        .map(|a| {
            let img = f.apply(&a.start);
            let s = collapse(&a.start);
            let t = &collapse(&img) - &s;
            (s, a.len(), t)
        })
        .collect();
    merge_pieces(pieces)
}

struct FirstReturn {
    pieces: Pieces,
    /// Return time of each piece, aligned with `pieces` before merging.
    times: Vec<(AlgebraicNumber, AlgebraicNumber, u64)>,
    saturation: IntervalSet,
}

/// First return map to `j`, built by pushing pieces forward until they land
/// back in `j`. `None` once more than `cap` piece steps are taken.
fn first_return(f: &Iet, j: &Interval, cap: u64) -> Option<FirstReturn> {
    let mut active: Vec<(AlgebraicNumber, Interval, u64)> = vec![(j.start.clone(), j.clone(), 0)];
    let mut returned: Pieces = Vec::new();
    let mut times = Vec::new();
    let mut sat = vec![j.clone()];
    let mut steps = 0u64;
    while let Some((p, q, t)) = active.pop() {
        steps += 1;
        if steps > cap {
            return None;
        }
        let mut k = f.locate(&q.start);
        let mut start = q.start.clone();
        loop {
            let e = f.end(k);
            let stop = e.min_ref(&q.end).clone();
            let shift = &f.translations()[k];
            let p_m = &p + &(&start - &q.start);
            let r = Interval::new(&start + shift, &stop + shift);
            // split the image against j
            let cuts = [
                r.start.clone(),
                j.start.clone(),
                j.end.clone(),
                r.end.clone(),
            ];
            let mut bounds: Vec<AlgebraicNumber> = cuts
                .into_iter()
                .filter(|x| *x >= r.start && *x <= r.end)
                .collect();
            bounds.sort();
            bounds.dedup();
            for w in bounds.windows(2) {
                let part = Interval::new(w[0].clone(), w[1].clone());
                let src = &p_m + &(&part.start - &r.start);
                if j.contains(&part.start) {
                    let tr = &part.start - &src;
                    times.push((src.clone(), part.len(), t + 1));
                    returned.push((src, part.len(), tr));
                } else {
                    sat.push(part.clone());
                    active.push((src, part, t + 1));
                }
            }
            if e >= q.end {
                break;
            }
            k += 1;
            start = e;
        }
    }
    times.sort_by(|a, b| a.0.cmp(&b.0));
    Some(FirstReturn {
        pieces: merge_pieces(returned),
        times,
        saturation: IntervalSet::from_intervals(sat),
    })
}

/// Union of `f^s(a)` for `0 ≤ s < steps`.
fn sweep(f: &Iet, a: &IntervalSet, steps: u64) -> IntervalSet {
    let mut out = a.clone();
    let mut cur = a.clone();
    for _ in 1..steps {
        cur = f.image_of_set(&cur);
        out = out.union(&cur);
    }
    out
}

enum BlockOutcome {
    Certified,
    Split(IntervalSet, IntervalSet),
    Heuristic,
    Residual,
}

fn examine_block(f: &Iet, block: &IntervalSet, cap: u64) -> BlockOutcome {
    let all_rational = block
        .endpoints()
        .iter()
        .chain(atoms(f, block).iter().map(|a| f.translation_at(&a.start)))
        .all(|x| x.as_rational().is_some());
    if all_rational {
        // A rational exchange is periodic; its period lies beyond the scan.
        return BlockOutcome::Residual;
    }
    let whole = collapsed(f, block);
    if let Some(k) = reducible_at(&whole) {
        // The first k collapsed pieces form an invariant part. Map their
        // union back through the block's own atoms.
        let len: AlgebraicNumber = whole[..k]
            .iter()
            .fold(f.field().zero(), |acc, p| &acc + &p.1);
        let part = prefix_of_measure(block, &len);
        return BlockOutcome::Split(part.clone(), block.difference(&part));
    }
    if keane(&whole) {
        return BlockOutcome::Certified;
    }
    for j in atoms(f, block) {
        let Some(fr) = first_return(f, &j, cap) else {
            return BlockOutcome::Residual;
        };
        if fr.saturation != *block {
            let rest = block.difference(&fr.saturation);
            return BlockOutcome::Split(fr.saturation, rest);
        }
        if let Some(k) = reducible_at(&fr.pieces) {
            let end = &fr.pieces[k - 1].0 + &fr.pieces[k - 1].1;
            let a = IntervalSet::single(Interval::new(j.start.clone(), end.clone()));
            let max_time = fr
                .times
                .iter()
                .filter(|p| p.0 < end)
                .map(|p| p.2)
                .max()
                .unwrap_or(1);
            let sat = sweep(f, &a, max_time);
            if sat != *block {
                let rest = block.difference(&sat);
                return BlockOutcome::Split(sat, rest);
            }
            continue;
        }
        if keane(&fr.pieces) {
            return BlockOutcome::Certified;
        }
    }
    BlockOutcome::Heuristic
}

/// The part of `set` of the given measure, taken from the left.
fn prefix_of_measure(set: &IntervalSet, len: &AlgebraicNumber) -> IntervalSet {
    let mut left = len.clone();
    let mut out = Vec::new();
    for iv in set.intervals() {
        if !left.is_positive() {
            break;
        }
        let l = iv.len();
        if l <= left {
            out.push(iv.clone());
            left = &left - &l;
        } else {
            out.push(Interval::new(iv.start.clone(), &iv.start + &left));
            left = left.field().zero();
        }
    }
    IntervalSet::from_intervals(out)
}

fn invariant(f: &Iet, s: &IntervalSet) -> bool {
    f.image_of_set(s) == *s
}

/// Decomposes `[0, 1)` into periodic components (periods up to `depth`),
/// minimal components, and an undecided residual.
pub fn decompose(f: &Iet, depth: usize) -> ComponentReport {
    let depth = depth.max(1);
    let field = f.field();
    let mut periodic = Vec::new();
    let mut residual = IntervalSet::empty();
    let mut covered = IntervalSet::empty();
    let mut power = f.clone();
    for k in 1..=depth {
        if covered == IntervalSet::unit(field) {
            break;
        }
        let exact = power.fixed_set().difference(&covered);
        if !exact.is_empty() {
            covered = covered.union(&exact);
            for class in invariant_classes(f, &exact) {
                let ok = invariant(f, &class) && class.is_subset(&power.fixed_set());
                if ok {
                    periodic.push((class, k as u64));
                } else {
                    residual = residual.union(&class);
                }
            }
        }
        if k < depth {
            power = power.compose(f);
        }
    }
    let rest = IntervalSet::unit(field).difference(&covered);
    let minimal_part = decompose_aperiodic(f, &rest, depth);
    let mut minimal = Vec::new();
    for (s, st) in minimal_part.0 {
        if invariant(f, &s) {
            minimal.push((s, st));
        } else {
            residual = residual.union(&s);
        }
    }
    residual = residual.union(&minimal_part.1);
    periodic.sort_by(|a, b| a.0.intervals()[0].start.cmp(&b.0.intervals()[0].start));
    minimal.sort_by(|a, b| a.0.intervals()[0].start.cmp(&b.0.intervals()[0].start));
    ComponentReport {
        periodic,
        minimal,
        residual,
    }
}

/// Minimal components of an invariant set without short periods.
pub(crate) fn decompose_aperiodic(
    f: &Iet,
    set: &IntervalSet,
    depth: usize,
) -> (Vec<(IntervalSet, MinimalStatus)>, IntervalSet) {
    let bp = f.interval_count() as u64;
    let cap = 10 * bp * bp * depth as u64;
    let mut minimal = Vec::new();
    let mut residual = IntervalSet::empty();
    let mut stack: Vec<(IntervalSet, usize)> = if set.is_empty() {
        Vec::new()
    } else {
        invariant_classes(f, set)
            .into_iter()
            .map(|c| (c, 0))
            .collect()
    };
    while let Some((block, level)) = stack.pop() {
        if level > 64 {
            minimal.push((block, MinimalStatus::Heuristic(depth)));
            continue;
        }
        match examine_block(f, &block, cap) {
            BlockOutcome::Certified => minimal.push((block, MinimalStatus::Certified)),
            BlockOutcome::Heuristic => minimal.push((block, MinimalStatus::Heuristic(depth))),
            BlockOutcome::Residual => residual = residual.union(&block),
            BlockOutcome::Split(a, b) => {
                for part in [a, b] {
                    if !part.is_empty() {
                        stack.push((part, level + 1));
                    }
                }
            }
        }
    }
    (minimal, residual)
}
