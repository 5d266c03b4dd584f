//! Exact ground field: rationals, optionally adjoined with one square root.
//!
//! A [`Scalar`] is `a + b·√d` with `a, b ∈ ℚ` and `d` a square-free integer
//! greater than one. Values with `b = 0` are plain rationals and are
//! compatible with every `d`; mixing two irrational values over different
//! radicands is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    /// Radicand; always 1 when `b == 0`.
    d: u32,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    /// `a + b·√d`. `d` must be square-free; `d = 1` is only accepted with `b = 0`
    /// folded into `a`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u32) -> Self {
        assert!(d >= 1, "radicand must be positive");
        if d == 1 {
            return Self::from_rational(a + b);
        }
        assert!(is_square_free(d), "radicand {d} is not square-free");
        Self::canonical(a, b, d)
    }

    /// `√d` itself.
    pub fn sqrt(d: u32) -> Self {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    fn canonical(a: BigRational, b: BigRational, d: u32) -> Self {
        if b.is_zero() {
            Scalar { a, b, d: 1 }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand of the field this value lives in (1 for rationals).
    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn join_radicand(x: u32, y: u32) -> u32 {
        match (x, y) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("cannot combine scalars over Q(sqrt {d}) and Q(sqrt {e})"),
        }
    }

    /// Field norm `a² − d·b²`.
    fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Self::from_rational(self.a.recip()));
        }
        let n = self.norm();
        Some(Self::canonical(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with d·b².
        let lhs = &self.a * &self.a;
        let rhs = BigRational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * f64::from(self.d).sqrt()
    }

    /// Integer value if this is a rational with denominator one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }
}

fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

fn is_square_free(d: u32) -> bool {
    let mut p = 2u32;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if rhs.b.is_zero() && self.b.is_zero() {
            return Scalar::from_rational(&self.a + &rhs.a);
        }
        let d = Scalar::join_radicand(self.d, rhs.d);
        Scalar::canonical(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if rhs.b.is_zero() && self.b.is_zero() {
            return Scalar::from_rational(&self.a - &rhs.a);
        }
        let d = Scalar::join_radicand(self.d, rhs.d);
        Scalar::canonical(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => Scalar::from_rational(&self.a * &rhs.a),
            (true, false) => Scalar::canonical(&self.a * &rhs.a, &self.a * &rhs.b, rhs.d),
            (false, true) => Scalar::canonical(&self.a * &rhs.a, &self.b * &rhs.a, self.d),
            (false, false) => {
                let d = Scalar::join_radicand(self.d, rhs.d);
                let dd = BigRational::from_integer(BigInt::from(d));
                let a = &self.a * &rhs.a + dd * &self.b * &rhs.b;
                let b = &self.a * &rhs.b + &self.b * &rhs.a;
                Scalar::canonical(a, b, d)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

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

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

/// Exact textual form: `p/q`, or `p/q+r/s*sqrt(d)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let babs = self.b.abs();
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", self.a)?;
            write!(f, "{}", if self.b.is_negative() { "-" } else { "+" })?;
        }
        if babs.is_one() {
            write!(f, "sqrt({})", self.d)
        } else {
            write!(f, "{}*sqrt({})", babs, self.d)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid exact scalar {s:?}"));
        let parse_q = |t: &str| -> Result<BigRational> { t.trim().parse::<BigRational>().map_err(|_| bad()) };
        let Some(root_at) = s.find("sqrt(") else {
            return Ok(Scalar::from_rational(parse_q(s)?));
        };
        let d: u32 = s[root_at + 5..]
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if d < 2 || !is_square_free(d) {
            return Err(bad());
        }
        let head = s[..root_at].strip_suffix('*').unwrap_or(&s[..root_at]);
        // `head` is "", "-", "B", "-B", "A+B", "A-B", "A+", "A-".
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_txt, b_txt) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_txt.is_empty() {
            BigRational::zero()
        } else {
            parse_q(a_txt)?
        };
        let b = match b_txt {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_q(t.strip_prefix('+').unwrap_or(t))?,
        };
        Ok(Scalar::quadratic(a, b, d))
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
