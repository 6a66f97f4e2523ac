//! Refinable rational enclosures of θ and its powers.
//!
//! Level `k` holds enclosures of width at most `2^-(64·2^k)`. Levels are
//! computed on first use and never change afterwards, so every query returns
//! exactly what a fresh recomputation would.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly;
use super::Rat;

const BASE_BITS: u32 = 64;

#[derive(Debug)]
struct Level {
    bits: u32,
    theta: (Rat, Rat),
    /// Enclosures of θ^j for j < degree.
    powers: Vec<(Rat, Rat)>,
}

pub(super) struct EnclosureCache {
    minpoly: Vec<Rat>,
    degree: usize,
    initial: (Rat, Rat),
    levels: RwLock<Vec<Arc<Level>>>,
    /// θ^j as floats, for the quick sign test.
    float_powers: OnceLock<Vec<f64>>,
}

fn two_pow(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(x: &Rat, bits: u32) -> Rat {
    let scale = two_pow(bits);
    let n = (x * Rat::from_integer(scale.clone())).floor().to_integer();
    Rat::new(n, scale)
}

fn round_up(x: &Rat, bits: u32) -> Rat {
    let scale = two_pow(bits);
    let n = (x * Rat::from_integer(scale.clone())).ceil().to_integer();
    Rat::new(n, scale)
}

fn interval_mul(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    let cands = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let mut lo = cands[0].clone();
    let mut hi = cands[0].clone();
    for c in &cands[1..] {
        if *c < lo {
            lo = c.clone();
        }
        if *c > hi {
            hi = c.clone();
        }
    }
    (lo, hi)
}

impl EnclosureCache {
    pub(super) fn new(minpoly: Vec<Rat>, lo: Rat, hi: Rat, degree: usize) -> Self {
        EnclosureCache {
            minpoly,
            degree,
            initial: (lo, hi),
            levels: RwLock::new(Vec::new()),
            float_powers: OnceLock::new(),
        }
    }

    fn bisect(&self, start: &(Rat, Rat), bits: u32) -> (Rat, Rat) {
        let (mut lo, mut hi) = start.clone();
        let target = Rat::new(BigInt::one(), two_pow(bits));
        let sign_lo = poly::eval(&self.minpoly, &lo).is_positive();
        let two = Rat::from_integer(2.into());
        while &hi - &lo > target {
            let mid = (&lo + &hi) / &two;
            let v = poly::eval(&self.minpoly, &mid);
            if v.is_zero() {
                return (mid.clone(), mid);
            }
            if v.is_positive() == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    fn build_level(&self, prev: Option<&Level>, bits: u32) -> Level {
        let start = match prev {
            Some(l) => l.theta.clone(),
            None => self.initial.clone(),
        };
        let (lo, hi) = self.bisect(&start, bits);
        // Dyadic outward rounding keeps the rationals small.
        let pad = bits + 8;
        let theta = (round_down(&lo, pad), round_up(&hi, pad));
        let mut powers = Vec::with_capacity(self.degree);
        let mut cur = (Rat::one(), Rat::one());
        for j in 0..self.degree {
            if j > 0 {
                let p = interval_mul(&cur, &theta);
                cur = (round_down(&p.0, pad), round_up(&p.1, pad));
            }
            powers.push(cur.clone());
        }
        Level {
            bits,
            theta,
            powers,
        }
    }

    fn level(&self, k: usize) -> Arc<Level> {
        if let Some(l) = self.levels.read().expect("enclosure lock").get(k) {
            return Arc::clone(l);
        }
        let mut levels = self.levels.write().expect("enclosure lock");
        while levels.len() <= k {
            let idx = levels.len();
            let bits = BASE_BITS << idx;
            let next = self.build_level(levels.last().map(|l| l.as_ref()), bits);
            levels.push(Arc::new(next));
        }
        Arc::clone(&levels[k])
    }

    fn level_for_bits(&self, bits: u32) -> Arc<Level> {
        let mut k = 0;
        while (BASE_BITS << k) < bits {
            k += 1;
        }
        self.level(k)
    }

    pub(super) fn theta_enclosure(&self, bits: u32) -> (Rat, Rat) {
        self.level_for_bits(bits).theta.clone()
    }

    fn eval_at(level: &Level, coeffs: &[Rat]) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for (c, (plo, phi)) in coeffs.iter().zip(&level.powers) {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lo += c * plo;
                hi += c * phi;
            } else {
                lo += c * phi;
                hi += c * plo;
            }
        }
        (lo, hi)
    }

    /// Enclosure of `Σ c_j θ^j` at the level covering `bits`.
    pub(super) fn evaluate(&self, coeffs: &[Rat], bits: u32) -> (Rat, Rat) {
        Self::eval_at(&self.level_for_bits(bits), coeffs)
    }

    fn float_powers(&self) -> &[f64] {
        self.float_powers.get_or_init(|| {
            let level = self.level(0);
            level
                .powers
                .iter()
                .map(|(lo, hi)| {
                    ((lo + hi) / Rat::from_integer(2.into()))
                        .to_f64()
                        .unwrap_or(f64::NAN)
                })
                .collect()
        })
    }

    /// Sign from a float evaluation when it is far from zero. The float
    /// error is below `(d + 3)·2^-52` times the sum of term magnitudes, so a
    /// value above `1e-9` of that sum has the right sign.
    fn quick_sign(&self, coeffs: &[Rat]) -> Option<i8> {
        let mut value = 0.0f64;
        let mut magnitude = 0.0f64;
        for (c, p) in coeffs.iter().zip(self.float_powers()) {
            if c.is_zero() {
                continue;
            }
            let term = c.to_f64()? * p;
            value += term;
            magnitude += term.abs();
        }
        let ok = magnitude.is_finite() && magnitude > 1e-250 && value.abs() > 1e-9 * magnitude;
        ok.then_some(if value > 0.0 { 1 } else { -1 })
    }

    /// Sign of a nonzero-or-zero element whose irrational part is nonzero.
    pub(super) fn sign(&self, coeffs: &[Rat]) -> i8 {
        if coeffs.iter().all(Zero::is_zero) {
            return 0;
        }
        if let Some(s) = self.quick_sign(coeffs) {
            return s;
        }
        // Scale to integers so the evaluation stays cheap.
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<Rat> = if den.is_one() {
            coeffs.to_vec()
        } else {
            let d = Rat::from_integer(den);
            coeffs.iter().map(|c| c * &d).collect()
        };
        let mut k = 0;
        loop {
            let level = self.level(k);
            let (lo, hi) = Self::eval_at(&level, &scaled);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            debug_assert!(level.bits < u32::MAX / 2, "sign refinement diverged");
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_sign_declines_near_zero() {
        let p: Vec<Rat> = [-2, 0, 1]
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect();
        let cache = EnclosureCache::new(p, Rat::one(), Rat::from_integer(2.into()), 2);
        // 665857/470832 is a convergent of √2 from above, off by about 1.6e-12
        let close = [
            Rat::from_integer(665857.into()),
            Rat::from_integer((-470832).into()),
        ];
        assert_eq!(cache.quick_sign(&close), None);
        assert_eq!(cache.sign(&close), 1);
        let neg: Vec<Rat> = close.iter().map(|c| -c).collect();
        assert_eq!(cache.sign(&neg), -1);
        let far = [Rat::from_integer(3.into()), Rat::from_integer((-2).into())];
        assert_eq!(cache.quick_sign(&far), Some(1));
    }

    #[test]
    fn levels_shrink() {
        let p: Vec<Rat> = [-2, 0, 1]
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect();
        let cache = EnclosureCache::new(
            p,
            Rat::from_integer(1.into()),
            Rat::from_integer(2.into()),
            2,
        );
        let (a, b) = cache.theta_enclosure(64);
        let (c, d) = cache.theta_enclosure(200);
        assert!(a <= c && d <= b);
        assert!(&d - &c < Rat::new(BigInt::one(), BigInt::one() << 199));
    }
}
