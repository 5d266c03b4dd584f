//! Polynomial vector fields and the flat connection `∇`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ReflectionGroup, ScalarMatrix};
use crate::poly::{var_name, Polynomial};
use crate::scalar::Scalar;

/// `Σ f_i ∂/∂x_i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|p| p.nvars() != n) {
            return Err(Error::VariableMismatch(n, bad.nvars()));
        }
        Ok(Derivation { coeffs })
    }

    pub fn zero(nvars: usize) -> Self {
        Derivation {
            coeffs: vec![Polynomial::zero(nvars); nvars],
        }
    }

    /// `∂/∂x_i`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut d = Self::zero(nvars);
        d.coeffs[i] = Polynomial::one(nvars);
        d
    }

    /// Euler field `Σ x_i ∂/∂x_i`.
    pub fn euler(nvars: usize) -> Self {
        Derivation {
            coeffs: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Common polynomial degree of the coefficients. `None` for the zero
    /// field or when the coefficients are not all homogeneous of one degree.
    pub fn degree(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.degree();
            if deg.is_some() && deg != d {
                return None;
            }
            deg = d;
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// `δ(p) = Σ f_i ∂p/∂x_i`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.nvars() != self.nvars() {
            return Err(Error::VariableMismatch(self.nvars(), p.nvars()));
        }
        let mut acc = Polynomial::zero(p.nvars());
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let dp = p.partial(i)?;
            if !dp.is_zero() {
                acc = &acc + &(f * &dp);
            }
        }
        Ok(acc)
    }

    /// `δ(α)` for a linear form given by coefficients: `Σ a_i f_i`.
    pub fn apply_linear(&self, form: &[Scalar]) -> Polynomial {
        self.coeffs
            .iter()
            .zip(form)
            .fold(Polynomial::zero(self.nvars()), |acc, (f, a)| &acc + &f.scale(a))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Derivation {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// `g·δ` for a polynomial `g`.
    pub fn mul_poly(&self, g: &Polynomial) -> Self {
        Derivation {
            coeffs: self.coeffs.iter().map(|f| g * f).collect(),
        }
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableMismatch(self.nvars(), other.nvars()));
        }
        Ok(Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Derivation) -> Self {
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// Map each coefficient through `f`.
    pub fn try_map(&self, mut f: impl FnMut(&Polynomial) -> Result<Polynomial>) -> Result<Self> {
        Ok(Derivation {
            coeffs: self.coeffs.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }

    /// `w·δ = w ∘ δ ∘ w⁻¹`. Its value on `x_j` is `w·(δ(w⁻¹·x_j))`; for an
    /// involution this is `Σ_k B_kj w·f_k`.
    pub fn act_involution(&self, w: &ScalarMatrix) -> Result<Self> {
        let n = self.nvars();
        let moved: Vec<Polynomial> = self
            .coeffs
            .iter()
            .map(|f| ReflectionGroup::act(w, f))
            .collect::<Result<_>>()?;
        let coeffs = (0..n)
            .map(|j| (0..n).fold(Polynomial::zero(n), |acc, k| &acc + &moved[k].scale(&w[k][j])))
            .collect();
        Ok(Derivation { coeffs })
    }

    /// Invariance under every simple reflection (hence under the group).
    pub fn is_invariant(&self, group: &ReflectionGroup) -> Result<bool> {
        for s in group.simple_reflections() {
            if &self.act_involution(s)? != self {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `∇_{δ₁} δ₂ = Σ (δ₁ f_i) ∂/∂x_i` where `δ₂ = Σ f_i ∂/∂x_i`.
pub fn nabla(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    if d1.nvars() != d2.nvars() {
        return Err(Error::VariableMismatch(d1.nvars(), d2.nvars()));
    }
    d2.try_map(|f| d1.apply(f))
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let name = var_name(n, i);
                if c.num_terms() == 1 {
                    format!("{c}*d/d{name}")
                } else {
                    format!("({c})*d/d{name}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::arb_poly;
    use proptest::prelude::*;

    fn x1() -> Polynomial {
        Polynomial::var(1, 0)
    }

    #[test]
    fn rank_one_connection() {
        let d1 = Derivation::new(vec![x1().scale(&Scalar::from_int(2))]).unwrap();
        let d2 = Derivation::new(vec![x1().pow(3).scale(&Scalar::from_frac(2, 3))]).unwrap();
        let out = nabla(&d1, &d2).unwrap();
        assert_eq!(
            out,
            Derivation::new(vec![x1().pow(3).scale(&Scalar::from_int(4))]).unwrap()
        );
    }

    #[test]
    fn euler_basics() {
        let e = Derivation::euler(1);
        assert_eq!(e.coeffs()[0], x1());
        assert_eq!(e.degree(), Some(1));
        assert_eq!(nabla(&e, &e).unwrap(), e);
        assert_eq!(Derivation::coordinate(2, 0).degree(), Some(0));
        assert_eq!(Derivation::zero(2).degree(), None);
        assert!(Derivation::zero(2).is_homogeneous());
    }

    fn arb_field(n: usize) -> impl Strategy<Value = Derivation> {
        proptest::collection::vec(arb_poly(n, 3, 4), n).prop_map(|c| Derivation::new(c).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        /// `(∇_{δ₁}δ₂)α = δ₁(δ₂α)` for linear `α`.
        #[test]
        fn connection_on_linear_forms(d1 in arb_field(3), d2 in arb_field(3), a in proptest::collection::vec(-3i64..=3, 3)) {
            let form: Vec<Scalar> = a.into_iter().map(Scalar::from_int).collect();
            let alpha = Polynomial::linear(&form);
            let lhs = nabla(&d1, &d2).unwrap().apply(&alpha).unwrap();
            let rhs = d1.apply(&d2.apply(&alpha).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(d2.apply_linear(&form), d2.apply(&alpha).unwrap());
        }

        /// `∇_{gδ₁}δ₂ = g·∇_{δ₁}δ₂`.
        #[test]
        fn connection_is_function_linear_in_direction(d1 in arb_field(2), d2 in arb_field(2), g in arb_poly(2, 2, 3)) {
            let lhs = nabla(&d1.mul_poly(&g), &d2).unwrap();
            let rhs = nabla(&d1, &d2).unwrap().mul_poly(&g);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
