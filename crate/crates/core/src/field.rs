//! Exact coordinate fields: the rationals and prime fields of characteristic > 3.
//!
//! A [`FieldValue`] always carries enough information to recover its
//! [`FieldDescriptor`], and is stored in canonical form (reduced fraction with
//! positive denominator, or a residue in `[0, p)`), so derived equality is
//! value equality.
//!
//! The checked methods (`checked_add`, `inv`, ...) report descriptor
//! mismatches and division by zero as errors. The `std::ops` impls are for
//! code that has already validated its inputs share one field; they panic on
//! a mismatch.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Height bound used when sampling rationals without an explicit bound.
pub const DEFAULT_RATIONAL_HEIGHT: u64 = 10;

/// An odd prime `p > 3`, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::InvalidModulus(p.to_string()));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Which field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(PrimeModulus),
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeModulus::new(p).map(FieldDescriptor::Prime)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime(p) => Some(p.get()),
        }
    }

    pub fn zero(&self) -> FieldValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> FieldValue {
        match *self {
            FieldDescriptor::Rationals => FieldValue::Rational(BigRational::from_integer(k.into())),
            FieldDescriptor::Prime(p) => {
                let m = p.get() as i128;
                FieldValue::Residue(Residue {
                    value: (k as i128).rem_euclid(m) as u64,
                    modulus: p,
                })
            }
        }
    }

    pub fn from_bigint(&self, k: &BigInt) -> FieldValue {
        match *self {
            FieldDescriptor::Rationals => {
                FieldValue::Rational(BigRational::from_integer(k.clone()))
            }
            FieldDescriptor::Prime(p) => {
                let m = BigInt::from(p.get());
                let r = k.mod_floor(&m).to_u64().expect("residue fits in u64");
                FieldValue::Residue(Residue {
                    value: r,
                    modulus: p,
                })
            }
        }
    }

    /// Maps a rational into this field. Fails if the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldValue> {
        match self {
            FieldDescriptor::Rationals => Ok(FieldValue::Rational(q.clone())),
            FieldDescriptor::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                Ok(&num * &den.inv()?)
            }
        }
    }

    /// Parses a value written as an integer or `num/den`.
    pub fn parse_value(&self, s: &str) -> Result<FieldValue> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid field element {s:?}"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }

    /// Deterministic sample from a seed; rationals use [`DEFAULT_RATIONAL_HEIGHT`].
    pub fn sample_seeded(&self, seed: u64) -> FieldValue {
        self.sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform residue for prime fields; height-bounded fraction for Q.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldValue {
        self.sample_with_height(rng, DEFAULT_RATIONAL_HEIGHT)
    }

    pub fn sample_with_height<R: Rng + ?Sized>(&self, rng: &mut R, height: u64) -> FieldValue {
        match *self {
            FieldDescriptor::Rationals => {
                let h = height.max(1) as i64;
                let num = rng.gen_range(-h..=h);
                let den = rng.gen_range(1..=h);
                FieldValue::Rational(BigRational::new(num.into(), den.into()))
            }
            FieldDescriptor::Prime(p) => FieldValue::Residue(Residue {
                value: rng.gen_range(0..p.get()),
                modulus: p,
            }),
        }
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldValue {
        loop {
            let v = self.sample(rng);
            if !v.is_zero() {
                return v;
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "Fp:{}", p.get()),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .ok_or_else(|| Error::Parse(format!("unknown field descriptor {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidModulus(digits.to_string()))?;
        FieldDescriptor::prime(p)
    }
}

/// A canonical residue `value` in `[0, modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: PrimeModulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus.get()
    }
}

/// An exact element of Q or of a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(BigRational),
    Residue(Residue),
}

impl FieldValue {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            FieldValue::Rational(_) => FieldDescriptor::Rationals,
            FieldValue::Residue(r) => FieldDescriptor::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_zero(),
            FieldValue::Residue(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_one(),
            FieldValue::Residue(r) => r.value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldValue::Rational(q) => Some(q),
            FieldValue::Residue(_) => None,
        }
    }

    pub fn same_field(&self, other: &FieldValue) -> Result<()> {
        let (l, r) = (self.descriptor(), other.descriptor());
        if l == r {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { left: l, right: r })
        }
    }

    pub fn checked_add(&self, other: &FieldValue) -> Result<FieldValue> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &FieldValue) -> Result<FieldValue> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &FieldValue) -> Result<FieldValue> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &FieldValue) -> Result<FieldValue> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldValue> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldValue::Rational(q) => FieldValue::Rational(q.recip()),
            FieldValue::Residue(r) => {
                let p = r.modulus.get();
                FieldValue::Residue(Residue {
                    value: pow_mod(r.value, p - 2, p),
                    modulus: r.modulus,
                })
            }
        })
    }

    pub fn square(&self) -> FieldValue {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> FieldValue {
        let mut base = self.clone();
        let mut acc = self.descriptor().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Whether the value is a square in its field (Euler's criterion mod p).
    pub fn is_square(&self) -> bool {
        match self {
            FieldValue::Rational(_) => self.sqrt().is_some(),
            FieldValue::Residue(r) => {
                let p = r.modulus.get();
                r.value == 0 || pow_mod(r.value, (p - 1) / 2, p) == 1
            }
        }
    }

    /// The smaller square root: the least residue of the two roots mod p, or
    /// the nonnegative root over Q.
    pub fn sqrt(&self) -> Option<FieldValue> {
        match self {
            FieldValue::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = exact_isqrt(q.numer())?;
                let d = exact_isqrt(q.denom())?;
                Some(FieldValue::Rational(BigRational::new(n, d)))
            }
            FieldValue::Residue(r) => {
                let p = r.modulus.get();
                let root = tonelli_shanks(r.value, p)?;
                Some(FieldValue::Residue(Residue {
                    value: root.min(p - root),
                    modulus: r.modulus,
                }))
            }
        }
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(q) => write!(f, "{q}"),
            FieldValue::Residue(r) => write!(f, "{}", r.value),
        }
    }
}

fn mismatch(l: &FieldValue, r: &FieldValue) -> ! {
    panic!("field mismatch: {} vs {}", l.descriptor(), r.descriptor())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(n, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Miller-Rabin with a witness set that is deterministic for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl<'a> Add<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;

    fn add(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a + b),
            (FieldValue::Residue(a), FieldValue::Residue(b)) if a.modulus == b.modulus => {
                let p = a.modulus.get();
                let s = (a.value as u128 + b.value as u128) % p as u128;
                FieldValue::Residue(Residue {
                    value: s as u64,
                    modulus: a.modulus,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;

    fn sub(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a - b),
            (FieldValue::Residue(a), FieldValue::Residue(b)) if a.modulus == b.modulus => {
                let p = a.modulus.get();
                let v = if a.value >= b.value {
                    a.value - b.value
                } else {
                    p - (b.value - a.value)
                };
                FieldValue::Residue(Residue {
                    value: v,
                    modulus: a.modulus,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldValue> for &'a FieldValue {
    type Output = FieldValue;

    fn mul(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a * b),
            (FieldValue::Residue(a), FieldValue::Residue(b)) if a.modulus == b.modulus => {
                FieldValue::Residue(Residue {
                    value: mul_mod(a.value, b.value, a.modulus.get()),
                    modulus: a.modulus,
                })
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;

    fn neg(self) -> FieldValue {
        match self {
            FieldValue::Rational(a) => FieldValue::Rational(-a),
            FieldValue::Residue(a) => {
                let v = if a.value == 0 {
                    0
                } else {
                    a.modulus.get() - a.value
                };
                FieldValue::Residue(Residue {
                    value: v,
                    modulus: a.modulus,
                })
            }
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: FieldValue) -> FieldValue { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: &FieldValue) -> FieldValue { (&self).$m(rhs) }
        }
        impl<'a> $tr<FieldValue> for &'a FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: FieldValue) -> FieldValue { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for FieldValue {
    type Output = FieldValue;

    fn neg(self) -> FieldValue {
        -&self
    }
}
