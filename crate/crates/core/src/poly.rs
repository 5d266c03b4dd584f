//! Sparse multivariate polynomials over [`Scalar`], graded-lex ordered.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then the exponent of `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
        if slots == 1 {
            prefix.push(left);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(prefix, left - e, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), d, nvars, &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables; zero for negative `d`.
pub fn count_monomials(nvars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return usize::from(d == 0);
    }
    // C(d + n - 1, n - 1)
    let (n, d) = (nvars as u128, d as u128);
    let mut acc: u128 = 1;
    for i in 1..n {
        acc = acc * (d + i) / i;
    }
    acc as usize
}

/// Largest `k` with `α^k | p`. The zero polynomial has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn at_least(self, m: u32) -> bool {
        match self {
            Order::Finite(k) => k >= m,
            Order::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(k) => ser.serialize_u32(*k),
            Order::Infinite => ser.serialize_str("inf"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Order {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(u32),
            Text(String),
        }
        match Repr::deserialize(de)? {
            Repr::Finite(k) => Ok(Order::Finite(k)),
            Repr::Text(t) if t == "inf" => Ok(Order::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("bad order '{t}'"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Scalar::one())
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Constant value if this polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.degree() {
            None => Some(Scalar::zero()),
            Some(0) => Some(self.terms.values().next().unwrap().clone()),
            _ => None,
        }
    }

    /// Coefficients of a homogeneous linear form, or `None`.
    pub fn linear_coefficients(&self) -> Option<Vec<Scalar>> {
        if self.is_zero() || self.degree() != Some(1) || !self.is_homogeneous() {
            return None;
        }
        Some(
            (0..self.nvars)
                .map(|i| self.coefficient(&Monomial::var(self.nvars, i)))
                .collect(),
        )
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// `self += c · m · other`, in place.
    pub fn add_scaled_shifted(&mut self, c: &Scalar, m: &Monomial, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (m2, c2) in &other.terms {
            self.add_term(m.mul(m2), &(c * c2));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in the zero-based coordinate `i`.
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, &(c * &Scalar::from_int(i64::from(e))));
        }
        Ok(out)
    }

    /// Gradient in coordinates, `(∂p/∂x_1, …, ∂p/∂x_ℓ)`.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial(i).unwrap()).collect()
    }

    /// Substitute `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, Polynomial::nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::Dimension("substitution images disagree on arity".into()));
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(p.nvars), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor`, or [`Error::NotDivisible`] with the
    /// partially reduced dividend as witness.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_arity(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.inv().unwrap());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let Some(t) = m.div(&lm) else {
                return Err(Error::NotDivisible {
                    remainder: Box::new(rem),
                });
            };
            let coef = c * &lc_inv;
            rem.add_scaled_shifted(&(-&coef), &t, divisor);
            quot.add_term(t, &coef);
        }
        Ok(quot)
    }

    /// Full multivariate division by a single polynomial: `self = q·divisor + r`
    /// with no term of `r` divisible by the leading monomial of `divisor`.
    /// The remainder is the normal form modulo the principal ideal, so it is
    /// linear in `self`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check_arity(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let (lm, lc_inv) = (lm.clone(), lc.inv().unwrap());
        let mut work = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        let mut rem = Polynomial::zero(self.nvars);
        while let Some((m, c)) = work.terms.pop_last() {
            match m.div(&lm) {
                Some(t) => {
                    let coef = &c * &lc_inv;
                    // Leading term cancels by construction; reduce the rest.
                    for (m2, c2) in divisor.terms.iter().rev().skip(1) {
                        work.add_term(t.mul(m2), &(-(&coef * c2)));
                    }
                    quot.add_term(t, &coef);
                }
                None => rem.add_term(m, &c),
            }
        }
        Ok((quot, rem))
    }

    /// Contact order of `self` along the hyperplane `alpha = 0`: the largest
    /// `k` with `alpha^k | self`, found by repeated exact division.
    pub fn linear_form_order(&self, alpha: &Polynomial) -> Result<Order> {
        if alpha.nvars != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, alpha.nvars));
        }
        if alpha.linear_coefficients().is_none() {
            return Err(Error::NotLinear);
        }
        if self.is_zero() {
            return Ok(Order::Infinite);
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            match cur.exact_div(alpha) {
                Ok(q) => {
                    k += 1;
                    cur = q;
                }
                Err(Error::NotDivisible { .. }) => return Ok(Order::Finite(k)),
                Err(e) => return Err(e),
            }
        }
    }

    /// Coefficient vector over the given monomial list; `None` if some term
    /// falls outside it.
    pub fn coords_in(&self, basis_index: &BTreeMap<Monomial, usize>, len: usize) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); len];
        for (m, c) in &self.terms {
            v[*basis_index.get(m)?] = c.clone();
        }
        Some(v)
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn to_f64_eval(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.to_f64(), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PolyRepr {
    nvars: usize,
    /// `[exponents, coefficient]`, descending monomial order.
    terms: Vec<(Vec<u32>, Scalar)>,
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.0.to_vec(), c.clone()))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(de)?;
        if repr.terms.iter().any(|(e, _)| e.len() != repr.nvars) {
            return Err(serde::de::Error::custom("exponent vector length differs from nvars"));
        }
        Ok(Polynomial::from_terms(
            repr.nvars,
            repr.terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)),
        ))
    }
}

pub fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_rational() && c.signum() < 0;
            let mag = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let is_unit = m.degree() == 0;
            if !mag.is_one() || is_unit {
                if mag.is_rational() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
                if !is_unit {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", var_name(self.nvars, i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operators panic on arity mismatch; use the `try_*` forms at API boundaries.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arity")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(&-rhs).expect("polynomial arity")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arity")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    pub fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(2, Scalar::from_int(n))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&(&x() + &y()) * &(&x() - &y()), &(&x() * &x()) - &(&y() * &y()));
        let p = &(&x() * &x()) + &c(3);
        assert_eq!(&p + &Polynomial::zero(2), p);
        let a = &(&x() * &x()) * &y();
        let b = &x() * &(&y() * &y());
        assert_eq!(&a * &b, &x().pow(3) * &y().pow(3));
        assert!(x().try_add(&Polynomial::var(3, 0)).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let p = &(&x() * &x()) + &(&y() * &y());
        assert_eq!(p.partial(0).unwrap(), x().scale(&Scalar::from_int(2)));
        let q = &x().pow(2) * &y().pow(2);
        assert_eq!(q.partial(1).unwrap(), (&x().pow(2) * &y()).scale(&Scalar::from_int(2)));
        assert!(c(5).partial(0).unwrap().is_zero());
        assert!(matches!(p.partial(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn exact_division_examples() {
        let p = &x().pow(2) - &y().pow(2);
        assert_eq!(p.exact_div(&(&x() - &y())).unwrap(), &x() + &y());

        // B2 Jacobian 4x^3y - 4xy^3 over Q = xy(x-y)(x+y).
        let jac = &(&x().pow(3) * &y()).scale(&Scalar::from_int(4)) - &(&x() * &y().pow(3)).scale(&Scalar::from_int(4));
        let q = &(&x() * &y()) * &(&(&x() - &y()) * &(&x() + &y()));
        assert_eq!(jac.exact_div(&q).unwrap(), c(4));

        let s = &x().pow(2) + &y().pow(2);
        match s.exact_div(&x()) {
            Err(Error::NotDivisible { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        assert!(matches!(s.exact_div(&Polynomial::zero(2)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn contact_order_examples() {
        assert_eq!(x().pow(2).linear_form_order(&x()).unwrap(), Order::Finite(2));
        let p = &(&x().pow(2) * &y()) - &y().pow(3);
        assert_eq!(p.linear_form_order(&(&x() - &y())).unwrap(), Order::Finite(1));
        assert_eq!(Polynomial::zero(2).linear_form_order(&x()).unwrap(), Order::Infinite);
        assert!(matches!(p.linear_form_order(&x().pow(2)), Err(Error::NotLinear)));
        assert!(matches!(p.linear_form_order(&(&x() + &c(1))), Err(Error::NotLinear)));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = &(&x().pow(3) + &(&x() * &y())) + &c(7);
        let d = &x().pow(2) - &y();
        let (q, r) = p.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        for (m, _) in r.terms() {
            assert!(!Monomial::from_exponents(&[2, 0]).divides(m));
        }
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(count_monomials(3, 2), 6);
        assert_eq!(count_monomials(2, -1), 0);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ms[0].exponents(), &[2, 0, 0]);
    }

    #[test]
    fn display() {
        let p = &(&x().pow(2).scale(&Scalar::from_frac(1, 2)) - &(&x() * &y())) + &c(-3);
        assert_eq!(p.to_string(), "1/2*x^2 - x*y - 3");
    }

    pub fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (proptest::collection::vec(0..=max_deg, nvars), -5i64..=5),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                nvars,
                ts.into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), Scalar::from_int(c))),
            )
        })
    }

    fn arb_linear(nvars: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(-3i64..=3, nvars)
            .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
            .prop_map(|v| Polynomial::linear(&v.into_iter().map(Scalar::from_int).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(3, 2, 4), q in arb_poly(3, 2, 4), r in arb_poly(3, 2, 4)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
        }

        #[test]
        fn exact_division_inverts_multiplication(p in arb_poly(3, 3, 5), q in arb_poly(3, 2, 4)) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
        }

        #[test]
        fn order_of_power_times_cofactor(alpha in arb_linear(3), r in arb_poly(3, 2, 4), k in 0u32..4) {
            prop_assume!(!r.is_zero());
            prop_assume!(r.exact_div(&alpha).is_err());
            let p = &alpha.pow(k) * &r;
            prop_assert_eq!(p.linear_form_order(&alpha).unwrap(), Order::Finite(k));
        }
    }
}
