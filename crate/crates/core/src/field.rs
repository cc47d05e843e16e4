//! Exact scalars over a prime field GF(p) or the rationals.
//!
//! A [`Scalar`] always carries its [`FieldSpec`] and is kept in canonical
//! form: GF(p) values live in `[0, p)`, rationals are reduced with a positive
//! denominator. The checked `try_*` methods report field mismatches; the
//! operator impls on `&Scalar` panic on mismatch and are meant for code that
//! has already validated homogeneity (vectors and matrices do this on
//! construction).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MODULUS_BOUND: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Prime(u32),
    Rationals,
}

/// The scalar field: GF(p) for a prime `p < 2^31`, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < MODULUS_BOUND && is_prime(p) {
            Ok(FieldSpec(Kind::Prime(p as u32)))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rationals => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.modulus().is_some()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        Scalar::from_i64(*self, v)
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        Scalar::parse(text, *self)
    }

    /// All elements of a prime field in increasing representative order.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        let p = self.modulus()?;
        Some((0..p).map(move |v| Scalar(Repr::Gf { p, v })))
    }
}

/// Deterministic trial division; `n < 2^31` keeps this under ~46k steps.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "gf {p}"),
            Kind::Rationals => write!(f, "q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `gf <p>` or `q`, the same words used in file headers.
    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s.split_whitespace().collect();
        match words.as_slice() {
            ["q"] => Ok(FieldSpec::rationals()),
            ["gf", p] => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Format(format!("bad modulus {p:?}")))?;
                FieldSpec::prime(p)
            }
            _ => Err(Error::Format(format!(
                "expected field `gf <p>` or `q`, got {s:?}"
            ))),
        }
    }
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat's little theorem.
pub(crate) fn mod_inv(v: u64, p: u64) -> u64 {
    debug_assert!(!v.is_multiple_of(p));
    mod_pow(v, p - 2, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Gf { p: u32, v: u32 },
    Q(BigRational),
}

/// An element of a [`FieldSpec`] in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, v: i64) -> Self {
        match field.0 {
            Kind::Prime(p) => Scalar(Repr::Gf {
                p,
                v: v.rem_euclid(p as i64) as u32,
            }),
            Kind::Rationals => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    /// `num/den` in the given field; for GF(p) this is `num * den^-1`.
    pub fn from_ratio(field: FieldSpec, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        Self::from_i64(field, num).try_div(&Self::from_i64(field, den))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(Repr::Q(r))
    }

    pub(crate) fn gf_unchecked(p: u32, v: u32) -> Self {
        debug_assert!(v < p);
        Scalar(Repr::Gf { p, v })
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Gf { p, .. } => FieldSpec(Kind::Prime(*p)),
            Repr::Q(_) => FieldSpec::rationals(),
        }
    }

    /// Canonical residue in `[0, p)` for GF(p) scalars.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Gf { v, .. } => Some(*v),
            Repr::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(r) => Some(r),
            Repr::Gf { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Gf { v, .. } => *v == 0,
            Repr::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Gf { v, .. } => *v == 1,
            Repr::Q(r) => r.is_one(),
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        let (l, r) = (self.field(), other.field());
        if l == r {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: l, right: r })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.add_same(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.add_same(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.mul_same(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.mul_same(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(match &self.0 {
            Repr::Gf { p, v } => Scalar(Repr::Gf {
                p: *p,
                v: mod_inv(*v as u64, *p as u64) as u32,
            }),
            Repr::Q(r) => Scalar(Repr::Q(r.recip())),
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = Scalar::one(self.field());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            exp >>= 1;
        }
        acc
    }

    fn neg_ref(&self) -> Scalar {
        match &self.0 {
            Repr::Gf { p, v } => Scalar(Repr::Gf {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            }),
            Repr::Q(r) => Scalar(Repr::Q(-r)),
        }
    }

    fn add_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Gf { p, v: a }, Repr::Gf { v: b, .. }) => Scalar(Repr::Gf {
                p: *p,
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
            }),
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a + b)),
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    fn mul_same(&self, other: &Scalar) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Gf { p, v: a }, Repr::Gf { v: b, .. }) => Scalar(Repr::Gf {
                p: *p,
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
            }),
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a * b)),
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    /// Parses an optionally signed integer, or `a/b` over the rationals.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Scalar> {
        let t = text.trim();
        let bad = |reason| Error::ScalarParse {
            text: text.to_string(),
            reason,
        };
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => {
                if field.is_finite() {
                    return Err(bad("fractions are only accepted over q"));
                }
                (n, Some(d))
            }
            None => (t, None),
        };
        let num = parse_integer(num).ok_or_else(|| bad("expected an integer"))?;
        match field.0 {
            Kind::Prime(p) => {
                let r = num.mod_floor(&BigInt::from(p));
                Ok(Scalar(Repr::Gf {
                    p,
                    v: r.to_u32().expect("residue below modulus"),
                }))
            }
            Kind::Rationals => {
                let den = match den {
                    Some(d) => {
                        // Denominators are written unsigned; the sign lives on the numerator.
                        if d.starts_with(['+', '-']) {
                            return Err(bad("denominator must be unsigned"));
                        }
                        parse_integer(d).ok_or_else(|| bad("expected an integer denominator"))?
                    }
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(Error::ZeroDenominator(text.to_string()));
                }
                Ok(Scalar(Repr::Q(BigRational::new(num, den))))
            }
        }
    }
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: BigInt = digits.parse().ok()?;
    Some(if s.starts_with('-') { -v } else { v })
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Gf { v, .. } => write!(f, "{v}"),
            Repr::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    debug_assert!(r.denom().is_positive());
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_same(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_same(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_same(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
