//! Exact scalars of the form `a + b*sqrt(d)` with `a`, `b` rational and `d` a
//! fixed square-free non-negative integer.
//!
//! A computation works inside a single quadratic extension `Q(sqrt(d))`;
//! `d = 0` encodes plain rationals. Scalars with `b = 0` are context-neutral
//! and combine with any `d`. Combining two scalars whose irrational parts
//! live in different extensions panics: that is a programming error, not a
//! recoverable condition, and the input layer validates contexts up front.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime used when certifying that a discriminant is square-free.
/// Any `n` with no square factor below `SQFREE_TRIAL_LIMIT^2` and no
/// remaining cofactor above `SQFREE_TRIAL_LIMIT^2` is certified exactly.
const SQFREE_TRIAL_LIMIT: u64 = 1_000_000;

/// Exact element of `Q(sqrt(d))`: `a + b*sqrt(d)`.
///
/// Canonical form: `b == 0` implies `d == 0`, and the rationals are stored
/// reduced with positive denominator (guaranteed by `BigRational`). Equality
/// is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Checks that `d` is admissible as a discriminant: zero, or square-free and
/// not a perfect square.
fn check_discriminant(d: u64) -> Result<()> {
    if d == 0 {
        return Ok(());
    }
    if d == 1 {
        return Err(Error::InvalidDiscriminant(d));
    }
    let mut m = d;
    let mut p = 2u64;
    while p <= SQFREE_TRIAL_LIMIT && p.saturating_mul(p) <= m {
        if m.is_multiple_of(p * p) {
            return Err(Error::InvalidDiscriminant(d));
        }
        while m.is_multiple_of(p) {
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Remaining cofactor has no prime factor below the trial limit, so any
    // square factor would exceed the limit squared; it can only be a perfect
    // square itself, which the isqrt test catches for u64-sized inputs.
    let r = (m as f64).sqrt() as u64;
    for s in r.saturating_sub(1)..=r + 1 {
        if s > 1 && s * s == m {
            return Err(Error::InvalidDiscriminant(d));
        }
    }
    Ok(())
}

/// Decomposes a non-negative rational `r` as `r = (c^2) * d` with `d`
/// square-free, i.e. `sqrt(r) = c * sqrt(d)`. Returns `(c, d)`; `d == 0`
/// means the square root is the rational `c` itself.
pub fn sqrt_decompose(r: &BigRational) -> Result<(BigRational, u64)> {
    if r.is_negative() {
        return Err(Error::Parse(format!("square root of negative value {r}")));
    }
    if r.is_zero() {
        return Ok((BigRational::zero(), 0));
    }
    // sqrt(p/q) = sqrt(p*q)/q
    let n = r.numer() * r.denom();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut m = n.clone();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(SQFREE_TRIAL_LIMIT);
    while p <= limit && &p * &p <= m {
        let mut count = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            count += 1;
        }
        if count > 0 {
            for _ in 0..count / 2 {
                square *= &p;
            }
            if count % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1 } else { 2 };
    }
    if !m.is_one() {
        let s = m.sqrt();
        if &s * &s == m {
            square *= s;
        } else {
            // No prime factor below the limit, so m is square-free whenever
            // it is below the limit squared.
            if m > BigInt::from(SQFREE_TRIAL_LIMIT) * BigInt::from(SQFREE_TRIAL_LIMIT) {
                return Err(Error::Parse(format!(
                    "cannot certify square-free part of {n}"
                )));
            }
            free *= m;
        }
    }
    let c = BigRational::new(square, r.denom().clone());
    if free.is_one() {
        Ok((c, 0))
    } else {
        let d = free
            .to_u64()
            .ok_or_else(|| Error::Parse(format!("square-free part of {n} exceeds u64")))?;
        Ok((c, d))
    }
}

impl Scalar {
    /// Builds `a + b*sqrt(d)`. Rejects discriminants that are perfect squares
    /// or not square-free; callers fold rational roots into `a`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        check_discriminant(d)?;
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            Scalar {
                a,
                b: BigRational::zero(),
                d: 0,
            }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn zero() -> Self {
        Scalar::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::rational(BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(big(n)))
    }

    /// `p/q` as a scalar. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Scalar::rational(BigRational::new(big(p), big(q)))
    }

    /// The element `sqrt(d)` of `Q(sqrt(d))`.
    pub fn sqrt_of(d: u64) -> Result<Self> {
        Scalar::new(BigRational::zero(), BigRational::one(), d)
    }

    /// Exact square root of a non-negative rational, expressed in the
    /// appropriate quadratic extension.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self> {
        let (c, d) = sqrt_decompose(r)?;
        if d == 0 {
            Ok(Scalar::rational(c))
        } else {
            Scalar::new(BigRational::zero(), c, d)
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn context(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    /// Rational value when `b == 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.d == 0 {
            Some(&self.a)
        } else {
            None
        }
    }

    fn join_context(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (x, y) if x == y => x,
            (0, y) => y,
            (x, 0) => x,
            (x, y) => panic!("scalar context mismatch: sqrt({x}) vs sqrt({y})"),
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Scalar::normalized(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a^2 - b^2 d`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(big(self.d as i64))
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero scalar with zero norm");
        Ok(Scalar::normalized(&self.a / &n, -&self.b / &n, self.d))
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Mixed signs: compare a^2 against b^2 d. Equality would force d to
        // be the square of a rational, impossible for square-free d >= 2.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(big(self.d as i64));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("square-free discriminant cannot be a rational square"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Approximate value, for rendering only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.join_context(rhs);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.join_context(rhs);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let d = self.join_context(rhs);
        let dd = BigRational::from_integer(big(d as i64));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, d)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::normalized(-self.a.clone(), -self.b.clone(), self.d)
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned_ops!(Add, add; Sub, sub; Mul, mul; Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.abs().is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b.abs(), self.d)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else if self.b.is_negative() {
            write!(f, "{}-{surd}", self.a)
        } else {
            write!(f, "{}+{surd}", self.a)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(num_str)
        .map_err(|_| Error::Parse(format!("invalid integer `{num_str}`")))?;
    let denom = BigInt::from_str(den_str)
        .map_err(|_| Error::Parse(format!("invalid integer `{den_str}`")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Splits `head` into an optional leading rational and a trailing signed
/// rational, at the last top-level `+`/`-` that acts as a binary operator.
fn split_tail(head: &str) -> (Option<&str>, &str) {
    let bytes = head.as_bytes();
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && bytes[i - 1].is_ascii_digit() {
            return (Some(&head[..i]), &head[i..]);
        }
    }
    (None, head)
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `p/q`, `p/q+r/s*sqrt(d)` and natural variants
    /// (`sqrt(5)`, `-3*sqrt(2)`, `1/2-sqrt(7)`).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        match compact.find("sqrt(") {
            None => Ok(Scalar::rational(parse_rational(&compact)?)),
            Some(idx) => {
                let rest = &compact[idx + 5..];
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed sqrt in `{s}`")))?;
                if !rest[close + 1..].is_empty() {
                    return Err(Error::Parse(format!("trailing input in `{s}`")));
                }
                let d: u64 = rest[..close]
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid discriminant in `{s}`")))?;
                let pre = &compact[..idx];
                let (a_str, b_str) = if let Some(head) = pre.strip_suffix('*') {
                    let (a, b) = split_tail(head);
                    (a, b.to_string())
                } else {
                    // Coefficient 1 with an optional sign: ``, `-`, `a+`, `a-`.
                    match pre {
                        "" => (None, "1".to_string()),
                        "+" => (None, "1".to_string()),
                        "-" => (None, "-1".to_string()),
                        _ => {
                            let last = &pre[pre.len() - 1..];
                            if last == "+" || last == "-" {
                                (Some(&pre[..pre.len() - 1]), format!("{last}1"))
                            } else {
                                return Err(Error::Parse(format!(
                                    "missing `*` before sqrt in `{s}`"
                                )));
                            }
                        }
                    }
                };
                let a = match a_str {
                    Some(t) => parse_rational(t)?,
                    None => BigRational::zero(),
                };
                let b = parse_rational(&b_str)?;
                if d == 0 {
                    return Ok(Scalar::rational(a));
                }
                Scalar::new(a, b, d)
            }
        }
    }
}
