//! Exact arithmetic in a real number field ℚ(θ).
//!
//! A [`Field`] is fixed by a monic minimal polynomial and a rational interval
//! isolating one real root θ. Elements are reduced coefficient vectors in the
//! power basis `1, θ, …, θ^(d-1)`, so equality is coefficient-wise. Signs are
//! decided by evaluating the element on ever finer enclosures of θ; equality
//! never needs an enclosure.

mod enclosure;
pub mod linalg;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use enclosure::EnclosureCache;
pub use linalg::q_linear_rank;
use poly::Irreducibility;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("minimal polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("minimal polynomial is not square-free")]
    NotSquareFree,
    #[error("minimal polynomial is reducible over Q")]
    Reducible,
    #[error("isolating interval must satisfy lo < hi")]
    EmptyInterval,
    #[error("isolating interval contains no root")]
    NoRoot,
    #[error("isolating interval contains {0} roots")]
    MultipleRoots(usize),
    #[error("isolating interval endpoint is a root")]
    RootOnEndpoint,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("coefficient vector has length {got}, field degree is {expected}")]
    BadLength { expected: usize, got: usize },
}

/// Input data for [`Field::new`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    /// Coefficients, constant term first; the last entry must be 1.
    pub minimal_polynomial: Vec<Rat>,
    pub isolating_interval: (Rat, Rat),
}

impl FieldSpec {
    pub fn from_integers(poly: &[i64], lo: i64, hi: i64) -> Self {
        FieldSpec {
            minimal_polynomial: poly.iter().map(|&c| int(c)).collect(),
            isolating_interval: (int(lo), int(hi)),
        }
    }
}

/// Shipped presets: ℚ, ℚ(√2), ℚ(2^{1/3}), ℚ(2^{1/4}).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Rational,
    Sqrt2,
    Cubic2,
    Quartic2,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Rational,
        Preset::Sqrt2,
        Preset::Cubic2,
        Preset::Quartic2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Rational => "rational",
            Preset::Sqrt2 => "sqrt2",
            Preset::Cubic2 => "cubic2",
            Preset::Quartic2 => "quartic2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn spec(self) -> FieldSpec {
        match self {
            Preset::Rational => FieldSpec::from_integers(&[0, 1], -1, 1),
            Preset::Sqrt2 => FieldSpec::from_integers(&[-2, 0, 1], 1, 2),
            Preset::Cubic2 => FieldSpec::from_integers(&[-2, 0, 0, 1], 1, 2),
            Preset::Quartic2 => FieldSpec::from_integers(&[-2, 0, 0, 0, 1], 1, 2),
        }
    }

    pub fn field(self) -> Field {
        Field::new(self.spec()).expect("preset fields are valid")
    }
}

struct FieldInner {
    spec: FieldSpec,
    degree: usize,
    /// Reduced forms of θ^d, …, θ^(2d-2).
    high_powers: Vec<Vec<Rat>>,
    irreducibility: Irreducibility,
    cache: EnclosureCache,
}

/// Shared, immutable handle to a number field context.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(")?;
        write_poly(f, &self.0.spec.minimal_polynomial)?;
        let (lo, hi) = &self.0.spec.isolating_interval;
        write!(f, ", ({lo}, {hi}))")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &[Rat]) -> fmt::Result {
    write!(f, "[")?;
    for (i, c) in p.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, "]")
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let mut p = spec.minimal_polynomial.clone();
        poly::trim(&mut p);
        let d = match poly::degree(&p) {
            Some(d) if d >= 1 && p[d].is_one() => d,
            _ => return Err(FieldError::NotMonic),
        };
        let (lo, hi) = &spec.isolating_interval;
        if lo >= hi {
            return Err(FieldError::EmptyInterval);
        }
        let g = poly::gcd(&p, &poly::derivative(&p));
        if poly::degree(&g).unwrap_or(0) > 0 {
            return Err(FieldError::NotSquareFree);
        }
        if poly::eval(&p, lo).is_zero() || poly::eval(&p, hi).is_zero() {
            return Err(FieldError::RootOnEndpoint);
        }
        match poly::count_roots(&p, lo, hi) {
            0 => return Err(FieldError::NoRoot),
            1 => {}
            k => return Err(FieldError::MultipleRoots(k)),
        }
        let irreducibility = poly::irreducibility(&p);
        if irreducibility == Irreducibility::Reducible {
            return Err(FieldError::Reducible);
        }
        let mut high_powers = Vec::new();
        for k in d..=(2 * d).saturating_sub(2).max(d) {
            let mut mono = vec![Rat::zero(); k + 1];
            mono[k] = Rat::one();
            let mut r = poly::rem(&mono, &p);
            r.resize(d, Rat::zero());
            high_powers.push(r);
        }
        let cache = EnclosureCache::new(p.clone(), lo.clone(), hi.clone(), d);
        Ok(Field(Arc::new(FieldInner {
            spec: FieldSpec {
                minimal_polynomial: p,
                isolating_interval: spec.isolating_interval,
            },
            degree: d,
            high_powers,
            irreducibility,
            cache,
        })))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    /// True when irreducibility was proven rather than assumed (degree > 4).
    pub fn irreducibility_checked(&self) -> bool {
        self.0.irreducibility == Irreducibility::Irreducible
    }

    pub fn zero(&self) -> AlgebraicNumber {
        self.from_rational(Rat::zero())
    }

    pub fn one(&self) -> AlgebraicNumber {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(&self, q: Rat) -> AlgebraicNumber {
        let mut coeffs = vec![Rat::zero(); self.degree()];
        coeffs[0] = q;
        AlgebraicNumber {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_int(&self, k: i64) -> AlgebraicNumber {
        self.from_rational(int(k))
    }

    pub fn ratio(&self, p: i64, q: i64) -> AlgebraicNumber {
        self.from_rational(Rat::new(p.into(), q.into()))
    }

    /// The generator θ.
    pub fn theta(&self) -> AlgebraicNumber {
        let coeffs = if self.degree() == 1 {
            // θ is the rational root of x - c
            vec![-self.0.spec.minimal_polynomial[0].clone()]
        } else {
            let mut v = vec![Rat::zero(); self.degree()];
            v[1] = Rat::one();
            v
        };
        AlgebraicNumber {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rat>) -> Result<AlgebraicNumber, FieldError> {
        if coeffs.len() != self.degree() {
            return Err(FieldError::BadLength {
                expected: self.degree(),
                got: coeffs.len(),
            });
        }
        Ok(AlgebraicNumber {
            field: self.clone(),
            coeffs,
        })
    }

    /// Rational enclosure `[lo, hi]` of θ with width at most `2^-bits`.
    pub fn theta_enclosure(&self, bits: u32) -> (Rat, Rat) {
        self.0.cache.theta_enclosure(bits)
    }

    fn reduce(&self, mut prod: Vec<Rat>) -> Vec<Rat> {
        let d = self.degree();
        if prod.len() <= d {
            prod.resize(d, Rat::zero());
            return prod;
        }
        let mut out: Vec<Rat> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, h) in out.iter_mut().zip(&self.0.high_powers[k - d]) {
                if !h.is_zero() {
                    *o += c * h;
                }
            }
        }
        out
    }
}

/// An element of ℚ(θ): `coeffs[0] + coeffs[1]·θ + …`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Field,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_coeff_string())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics on mixed fields; use [`AlgebraicNumber::try_cmp`] to get an error.
impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other)
            .expect("compared numbers from different fields")
    }
}

impl AlgebraicNumber {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the number lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rat> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check_same(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        let prod = poly::mul(&self.coeffs, &other.coeffs);
        Ok(AlgebraicNumber {
            coeffs: self.field.reduce(prod),
            field: self.field.clone(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check_same(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let m = &self.field.0.spec.minimal_polynomial;
        let mut inv = poly::inverse_mod(&self.coeffs, m).ok_or(FieldError::DivisionByZero)?;
        inv.resize(self.field.degree(), Rat::zero());
        Ok(AlgebraicNumber {
            field: self.field.clone(),
            coeffs: inv,
        })
    }

    pub fn scale(&self, q: &Rat) -> Self {
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&int(k))
    }

    pub fn pow(&self, k: i64) -> Result<Self, FieldError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    /// Sign of the real value: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        if let Some(q) = self.as_rational() {
            return if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            };
        }
        self.field.0.cache.sign(&self.coeffs)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, FieldError> {
        self.check_same(other)?;
        if self.coeffs == other.coeffs {
            return Ok(Ordering::Equal);
        }
        let diff = self.zip_with(other, |a, b| a - b);
        Ok(diff.signum().cmp(&0))
    }

    /// Rational enclosure of the real value, of width shrinking with `bits`.
    pub fn enclosure(&self, bits: u32) -> (Rat, Rat) {
        if let Some(q) = self.as_rational() {
            return (q.clone(), q.clone());
        }
        self.field.0.cache.evaluate(&self.coeffs, bits)
    }

    /// `(k, r)` with `self = k + r`, `k` an integer and `0 ≤ r < 1`.
    pub fn floor_frac(&self) -> (BigInt, AlgebraicNumber) {
        let k = if let Some(q) = self.as_rational() {
            q.floor().to_integer()
        } else {
            let (lo, _) = self.enclosure(64);
            let mut k = lo.floor().to_integer();
            loop {
                let kq = self.field.from_rational(Rat::from_integer(k.clone()));
                if kq > *self {
                    k -= 1;
                    continue;
                }
                let k1 = self.field.from_rational(Rat::from_integer(&k + 1));
                if k1 <= *self {
                    k += 1;
                    continue;
                }
                break k;
            }
        };
        let r = self - &self.field.from_rational(Rat::from_integer(k.clone()));
        (k, r)
    }

    /// Reduction into `[0, m)` for a positive modulus `m`.
    pub fn rem_euclid(&self, m: &AlgebraicNumber) -> AlgebraicNumber {
        if let (Some(a), Some(b)) = (self.as_rational(), m.as_rational()) {
            let k = (a / b).floor();
            return self.field.from_rational(a - k * b);
        }
        let q = self / m;
        let (k, _) = q.floor_frac();
        self - &m.scale(&Rat::from_integer(k))
    }

    /// Serialized form: the reduced coefficient vector, e.g. `[1/3, -2]`.
    pub fn to_coeff_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (lo, hi) = self.enclosure(64);
        ((lo + hi) / int(2)).to_f64().unwrap_or(f64::NAN)
    }

    pub fn min_ref<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max_ref<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

pub(crate) fn int(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&AlgebraicNumber> for &AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
                self.$try(rhs)
                    .expect("arithmetic on numbers from different fields")
            }
        }
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Div<&AlgebraicNumber> for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn div(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.try_div(rhs).expect("division by zero or mixed fields")
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> Field {
        Preset::Sqrt2.field()
    }

    #[test]
    fn rational_field_is_valid() {
        let q = Preset::Rational.field();
        assert_eq!(q.degree(), 1);
        assert!(q.theta().is_zero());
        let half = q.ratio(1, 2);
        assert_eq!(&half + &half, q.one());
    }

    #[test]
    fn sqrt2_field_encloses_root() {
        let f = sqrt2();
        let (lo, hi) = f.theta_enclosure(40);
        assert!(lo < hi);
        let lo_f: f64 = num_traits::ToPrimitive::to_f64(&lo).unwrap();
        assert!((lo_f - std::f64::consts::SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn two_roots_rejected() {
        let spec = FieldSpec::from_integers(&[-2, 0, 1], -2, 2);
        assert_eq!(Field::new(spec).unwrap_err(), FieldError::MultipleRoots(2));
    }

    #[test]
    fn bad_inputs_rejected() {
        assert_eq!(
            Field::new(FieldSpec::from_integers(&[-2, 0, 2], 1, 2)).unwrap_err(),
            FieldError::NotMonic
        );
        assert_eq!(
            Field::new(FieldSpec::from_integers(&[-2, 0, 1], 2, 3)).unwrap_err(),
            FieldError::NoRoot
        );
        assert_eq!(
            Field::new(FieldSpec::from_integers(&[-4, 0, 1], 1, 3)).unwrap_err(),
            FieldError::Reducible
        );
        assert_eq!(
            Field::new(FieldSpec::from_integers(&[1, -2, 1], 0, 3)).unwrap_err(),
            FieldError::NotSquareFree
        );
    }

    #[test]
    fn arithmetic_examples() {
        let f = sqrt2();
        let t = f.theta();
        assert_eq!(&t * &t, f.from_int(2));
        let a = &t - &f.one();
        let b = &f.one() - &t;
        assert!((&a + &b).is_zero());
        assert_eq!(t.inv().unwrap(), t.scale(&Rat::new(1.into(), 2.into())));
        assert_eq!(&t * &t.inv().unwrap(), f.one());
        assert_eq!(f.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_fields_error() {
        let a = sqrt2().theta();
        let b = Preset::Cubic2.field().theta();
        assert_eq!(a.try_add(&b), Err(FieldError::MixedFields));
        assert_eq!(a.try_cmp(&b), Err(FieldError::MixedFields));
    }

    #[test]
    fn compare_examples() {
        let f = sqrt2();
        let t = f.theta();
        assert_eq!(t.cmp(&f.one()), Ordering::Greater);
        assert_eq!(
            (&(&t * &t) - &f.from_int(2)).cmp(&f.zero()),
            Ordering::Equal
        );
        // 9·2 = 18 > 16
        assert_eq!(t.scale_int(3).cmp(&f.from_int(4)), Ordering::Greater);
        // 7·7·2 = 98 < 100
        assert_eq!(t.scale_int(7).cmp(&f.from_int(10)), Ordering::Less);
    }

    #[test]
    fn floor_frac_examples() {
        let f = sqrt2();
        let t = f.theta();
        let (k, r) = t.floor_frac();
        assert_eq!(k, BigInt::from(1));
        assert_eq!(r, &t - &f.one());
        let (k, r) = (-&t).floor_frac();
        assert_eq!(k, BigInt::from(-2));
        assert_eq!(r, &f.from_int(2) - &t);
        let (k, r) = f.ratio(1, 2).floor_frac();
        assert_eq!(k, BigInt::from(0));
        assert_eq!(r, f.ratio(1, 2));
    }

    #[test]
    fn pow_and_display() {
        let f = Preset::Quartic2.field();
        let t = f.theta();
        assert_eq!(t.pow(4).unwrap(), f.from_int(2));
        assert_eq!(t.pow(-4).unwrap(), f.ratio(1, 2));
        assert_eq!(
            format!("{}", &t.scale_int(3) - &f.ratio(1, 2)),
            "-1/2 + 3*t"
        );
        assert_eq!(t.to_coeff_string(), "[0, 1, 0, 0]");
    }
}
