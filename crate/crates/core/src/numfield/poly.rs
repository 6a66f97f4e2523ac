//! Dense univariate polynomials over ℚ, stored low degree first.
//!
//! Only what the number-field layer needs: evaluation, Euclidean division,
//! gcd, Sturm root counting and a bounded irreducibility test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn trim(p: &mut Vec<Rat>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Rat]) -> Vec<Rat> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
        .collect()
}

/// Euclidean division `a = q·b + r`. Panics if `b` is zero.
pub fn div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r: Vec<Rat> = a.to_vec();
    trim(&mut r);
    let mut q = vec![Rat::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let coef = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &coef * bc;
        }
        q[shift] = coef;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    div_rem(a, b).1
}

pub fn monic(p: &[Rat]) -> Vec<Rat> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
    }
}

pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rat> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm, or `None`
/// when `gcd(a, m)` is not constant.
pub fn inverse_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    let mut r0 = m.to_vec();
    let mut r1 = rem(a, m);
    let mut s0: Vec<Rat> = Vec::new();
    let mut s1: Vec<Rat> = vec![Rat::one()];
    trim(&mut r0);
    degree(&r1)?;
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        degree(&r1)?;
    }
    // r1 is a nonzero constant c with s1·a ≡ c (mod m).
    let c = r1[0].clone();
    let mut out: Vec<Rat> = s1.iter().map(|x| x / &c).collect();
    out = rem(&out, m);
    Some(out)
}

pub fn sturm_sequence(p: &[Rat]) -> Vec<Vec<Rat>> {
    let mut seq = vec![p.to_vec(), derivative(p)];
    trim(&mut seq[1]);
    loop {
        let n = seq.len();
        if degree(&seq[n - 1]).is_none() {
            seq.pop();
            break;
        }
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if degree(&r).is_none() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<Rat>], x: &Rat) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub fn count_roots(p: &[Rat], lo: &Rat, hi: &Rat) -> usize {
    let seq = sturm_sequence(p);
    sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi))
}

/// Result of the bounded irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// Degree above four, or coefficients too large to search.
    Unchecked,
}

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Scale a monic rational polynomial to a monic integer one via `x = y / D`.
fn monic_integer_form(p: &[Rat]) -> Vec<BigInt> {
    let d = degree(p).unwrap_or(0);
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // D^d p(y/D) = sum c_i D^(d-i) y^i
    (0..=d)
        .map(|i| {
            let scale = num_traits::pow(den.clone(), d - i);
            let v = &p[i] * Rat::from_integer(scale);
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect()
}

fn divisors(n: &BigInt) -> Option<Vec<i64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k as i64);
            if k * k != n {
                out.push((n / k) as i64);
            }
        }
        k += 1;
    }
    Some(out)
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Irreducibility over ℚ for monic polynomials of degree at most four,
/// by rational-root search plus, in degree four, a search for monic
/// quadratic factors over ℤ.
pub fn irreducibility(p: &[Rat]) -> Irreducibility {
    let Some(d) = degree(p) else {
        return Irreducibility::Reducible;
    };
    if d <= 1 {
        return Irreducibility::Irreducible;
    }
    if d > 4 {
        return Irreducibility::Unchecked;
    }
    let q = monic_integer_form(&monic(p));
    if q[0].is_zero() {
        return Irreducibility::Reducible;
    }
    let Some(divs) = divisors(&q[0]) else {
        return Irreducibility::Unchecked;
    };
    // Monic integer polynomial: rational roots are integer divisors of q[0].
    for &k in &divs {
        for cand in [BigInt::from(k), BigInt::from(-k)] {
            if eval_int(&q, &cand).is_zero() {
                return Irreducibility::Reducible;
            }
        }
    }
    if d < 4 {
        return Irreducibility::Irreducible;
    }
    // x^4 + a3 x^3 + a2 x^2 + a1 x + a0 = (x^2 + a x + b)(x^2 + c x + e)
    let (a0, a1, a2, a3) = (&q[0], &q[1], &q[2], &q[3]);
    for &k in &divs {
        for b in [BigInt::from(k), BigInt::from(-k)] {
            let e = a0 / &b;
            if &(&b * &e) != a0 {
                continue;
            }
            if e != b {
                // a (e - b) = a1 - a3 b
                let num = a1 - a3 * &b;
                let den = &e - &b;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let a = &num / &den;
                let c = a3 - &a;
                if &(&b + &e + &a * &c) == a2 {
                    return Irreducibility::Reducible;
                }
            } else {
                if a1 != &(a3 * &b) {
                    continue;
                }
                // a + c = a3, a c = a2 - 2b
                let prod = a2 - &b * 2;
                let disc = a3 * a3 - &prod * 4;
                if let Some(r) = is_square(&disc) {
                    if ((a3 + &r) % BigInt::from(2)).is_zero() {
                        return Irreducibility::Reducible;
                    }
                }
            }
        }
    }
    Irreducibility::Irreducible
}
