//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! Generic code never uses operator overloading on scalars; every operation
//! goes through the [`Field`] trait so that both backends share one code path.
//! Constants need a field descriptor because a prime field element cannot
//! invent its modulus.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Runtime data needed to build constants (`()` for the rationals, the
    /// modulus for a prime field).
    type Desc: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static;

    fn zero(desc: &Self::Desc) -> Self;
    fn one(desc: &Self::Desc) -> Self;
    fn from_i64(v: i64, desc: &Self::Desc) -> Self;
    /// `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt, desc: &Self::Desc) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Human-readable descriptor, e.g. `QQ` or `GF(101)`.
    fn describe(desc: &Self::Desc) -> String;
}

/// Field choice as it appears in ring definition files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Input(format!("unknown field `{t}` (expected QQ or GF(p))")))?;
        let p: u32 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad prime in `{t}`")))?;
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::Input(format!(
                "GF({p}): modulus must be a prime below 2^31"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Rationals

/// Exact rational number, reduced with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are kept inline; the
/// representation is canonical so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub fn from_integer(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }

    /// Builds `num/den` from a wide intermediate; `den` must be positive.
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        let g = gcd_u128(num.unsigned_abs(), den as u128) as i128;
        let (n, d) = if g > 1 {
            (num / g, den / g)
        } else {
            (num, den)
        };
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(n),
                BigInt::from(d),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational arithmetic keeps values reduced with positive denominator.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rational(Repr::Small(n, d));
        }
        Rational(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for Rational {
    type Desc = ();

    fn zero(_: &()) -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one(_: &()) -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn from_i64(v: i64, _: &()) -> Self {
        Rational::from_integer(v)
    }

    fn from_ratio(num: &BigInt, den: &BigInt, _: &()) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Rational::from_big(BigRational::new(
            num.clone(),
            den.clone(),
        )))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rational(Repr::Small(s, 1)),
                None => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rational::from_i128(a + c, b)
                } else {
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Rational(Repr::Small(p, 1)),
                None => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Rational::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("inverse of zero"),
            Repr::Small(n, d) => {
                let (n, d) = (*n as i128, *d as i128);
                if n < 0 {
                    Rational::from_i128(-d, -n)
                } else {
                    Rational::from_i128(d, n)
                }
            }
            Repr::Big(b) => Rational::from_big(b.recip()),
        }
    }

    fn describe(_: &()) -> String {
        "QQ".to_string()
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// Residue modulo a prime `p < 2^31`, stored in `[0, p)` together with `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Self {
        Fp {
            value: v.rem_euclid(p as i64) as u32,
            modulus: p,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn pow(&self, mut e: u64) -> Self {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Field for Fp {
    type Desc = u32;

    fn zero(p: &u32) -> Self {
        Fp {
            value: 0,
            modulus: *p,
        }
    }

    fn one(p: &u32) -> Self {
        Fp {
            value: 1 % *p,
            modulus: *p,
        }
    }

    fn from_i64(v: i64, p: &u32) -> Self {
        Fp::new(v, *p)
    }

    fn from_ratio(num: &BigInt, den: &BigInt, p: &u32) -> Option<Self> {
        let m = BigInt::from(*p);
        let d = den.mod_floor(&m).to_i64()?;
        if d == 0 {
            return None;
        }
        let n = num.mod_floor(&m).to_i64()?;
        Some(Fp::new(n, *p).mul(&Fp::new(d, *p).inv()))
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u64 + rhs.value as u64;
        let p = self.modulus as u64;
        Fp {
            value: if s >= p { (s - p) as u32 } else { s as u32 },
            modulus: self.modulus,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value as u64 * rhs.value as u64 % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }

    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus as u64 - 2)
    }

    fn describe(p: &u32) -> String {
        format!("GF({p})")
    }
}

impl From<Rational> for BigRational {
    fn from(r: Rational) -> Self {
        r.to_big()
    }
}

impl Rational {
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs_is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(n, 1) => *n == 1 || *n == -1,
            _ => false,
        }
    }
}
