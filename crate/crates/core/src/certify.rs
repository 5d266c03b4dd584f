//! Independent checks on candidate bases of `D(𝒜, m)`: contact orders,
//! the degree-sum criterion, the determinant factorization, a brute-force
//! graded dimension count and the Hodge-filtration comparison.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::connection::{field_from_vector, field_to_row, invariance_rows, nabla_d_inverse, CoxeterSystem};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::group::{Arrangement, Hyperplane, Multiplicity};
use crate::invariants::InvariantSystem;
use crate::linalg::{Echelon, PolyMatrix, SparseRow};
use crate::poly::{count_monomials, monomials_of_degree, Monomial, Order, Polynomial};
use crate::scalar::Scalar;

/// `max { k : α_H^k | δ(α_H) }`.
pub fn contact_order(delta: &Derivation, h: &Hyperplane) -> Order {
    delta
        .apply_linear(&h.form)
        .linear_form_order(&h.alpha)
        .expect("hyperplane forms are linear")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    FreeWithBasis,
    NotMember {
        member: usize,
        hyperplane: usize,
        order: Order,
        required: u32,
    },
    NotHomogeneous {
        member: usize,
    },
    Dependent,
    DegreeMismatch {
        degree_sum: u32,
        expected: u32,
    },
    /// Membership and degree count passed but the determinant is not a
    /// scalar multiple of `Π α_H^{m(H)}`; this cannot happen for correct input.
    FactorizationMismatch,
}

impl Verdict {
    pub fn is_free(&self) -> bool {
        matches!(self, Verdict::FreeWithBasis)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::FreeWithBasis => "Free-with-basis",
            Verdict::NotMember { .. } => "NotMember",
            Verdict::NotHomogeneous { .. } => "NotHomogeneous",
            Verdict::Dependent => "Dependent",
            Verdict::DegreeMismatch { .. } => "DegreeMismatch",
            Verdict::FactorizationMismatch => "FactorizationMismatch",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub multiplicity: Vec<u32>,
    /// `contact_orders[i][h]` for member `i` and hyperplane `h`.
    pub contact_orders: Vec<Vec<Order>>,
    pub membership: bool,
    pub degrees: Vec<Option<u32>>,
    pub degree_sum: Option<u32>,
    pub multiplicity_total: u32,
    pub determinant: Polynomial,
    /// `c` with `det = c·Π α_H^{m(H)}`, when that factorization holds.
    pub determinant_scalar: Option<Scalar>,
    pub verdict: Verdict,
}

/// Certify `members` as a basis of `D(𝒜, m)`.
///
/// Three checks run independently: membership at every hyperplane, the
/// degree sum against `Σ m(H)`, and `det(coefficient matrix) = c·Π α_H^{m(H)}`
/// with `c ≠ 0`.
pub fn ziegler_certify(members: &[Derivation], m: &Multiplicity, arrangement: &Arrangement) -> Result<Certificate> {
    let n = arrangement.nvars();
    if members.len() != n {
        return Err(Error::Dimension(format!("{} members for rank {n}", members.len())));
    }
    if m.len() != arrangement.len() {
        return Err(Error::Multiplicity(format!(
            "{} values for {} hyperplanes",
            m.len(),
            arrangement.len()
        )));
    }
    if let Some(bad) = members.iter().find(|d| d.nvars() != n) {
        return Err(Error::VariableMismatch(n, bad.nvars()));
    }

    let contact_orders: Vec<Vec<Order>> = members
        .iter()
        .map(|d| arrangement.hyperplanes().iter().map(|h| contact_order(d, h)).collect())
        .collect();
    let mut first_miss = None;
    'outer: for (i, row) in contact_orders.iter().enumerate() {
        for (hi, o) in row.iter().enumerate() {
            if !o.at_least(m.get(hi)) {
                first_miss = Some(Verdict::NotMember {
                    member: i,
                    hyperplane: hi,
                    order: *o,
                    required: m.get(hi),
                });
                break 'outer;
            }
        }
    }

    let membership = first_miss.is_none();
    let degrees: Vec<Option<u32>> = members.iter().map(Derivation::degree).collect();
    let degree_sum = degrees.iter().try_fold(0u32, |acc, d| d.map(|d| acc + d));

    let columns: Vec<Vec<Polynomial>> = members.iter().map(|d| d.coeffs().to_vec()).collect();
    let determinant = PolyMatrix::from_columns(&columns)?.determinant()?;
    let target = arrangement.power_product(m);
    let determinant_scalar = determinant
        .exact_div(&target)
        .ok()
        .and_then(|q| q.as_constant())
        .filter(|c| !c.is_zero());

    let verdict = if let Some(v) = first_miss {
        v
    } else if let Some(i) = members.iter().position(|d| !d.is_zero() && d.degree().is_none()) {
        Verdict::NotHomogeneous { member: i }
    } else if determinant.is_zero() {
        Verdict::Dependent
    } else if degree_sum != Some(m.total()) {
        Verdict::DegreeMismatch {
            degree_sum: degree_sum.unwrap_or(0),
            expected: m.total(),
        }
    } else if determinant_scalar.is_none() {
        Verdict::FactorizationMismatch
    } else {
        Verdict::FreeWithBasis
    };

    Ok(Certificate {
        multiplicity: m.values().to_vec(),
        contact_orders,
        membership,
        degrees,
        degree_sum,
        multiplicity_total: m.total(),
        determinant,
        determinant_scalar,
        verdict,
    })
}

/// Divisibility constraints `α_H^{m(H)} | δ(α_H)` on degree-`d` fields, as
/// rows over the unknowns `component · #monomials + monomial index`.
///
/// Each condition is "the remainder of `δ(α_H)` modulo `α_H^{m(H)}` vanishes";
/// that remainder is linear in the coefficients of `δ`.
pub fn divisibility_rows(m: &Multiplicity, d: u32, arrangement: &Arrangement) -> Result<Vec<SparseRow>> {
    let n = arrangement.nvars();
    let monos = monomials_of_degree(n, d);
    let width = monos.len();
    let mut rows = Vec::new();
    for (hi, h) in arrangement.hyperplanes().iter().enumerate() {
        let k = m.get(hi);
        if k == 0 {
            continue;
        }
        let modulus = h.alpha.pow(k);
        // δ(α_H) = Σ a_k f_k, so each unknown contributes a_k·NF(monomial).
        let mut eqs: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
        for (mi, mono) in monos.iter().enumerate() {
            let (_, rem) = Polynomial::monomial(mono.clone(), Scalar::one()).div_rem(&modulus)?;
            for (comp, a) in h.form.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (nu, c) in rem.terms() {
                    let e = eqs.entry(nu.clone()).or_default();
                    let slot = e.entry(comp * width + mi).or_default();
                    *slot += &(a * c);
                    if slot.is_zero() {
                        e.remove(&(comp * width + mi));
                    }
                }
            }
        }
        rows.extend(eqs.into_values().filter(|r| !r.is_empty()));
    }
    Ok(rows)
}

/// Basis of `{δ homogeneous of degree d : α_H^{m(H)} | δα_H ∀H}`.
pub fn graded_kernel(m: &Multiplicity, d: u32, arrangement: &Arrangement) -> Result<Vec<Derivation>> {
    let n = arrangement.nvars();
    let unknowns = n * monomials_of_degree(n, d).len();
    let mut ech = Echelon::new(unknowns);
    for row in divisibility_rows(m, d, arrangement)? {
        ech.insert(row);
    }
    Ok(ech.kernel().iter().map(|v| field_from_vector(n, d, v)).collect())
}

/// Dimension of the degree-`d` piece of `D(𝒜, m)`, by brute-force linear algebra.
pub fn graded_dimension(m: &Multiplicity, d: u32, arrangement: &Arrangement) -> Result<usize> {
    let n = arrangement.nvars();
    let unknowns = n * monomials_of_degree(n, d).len();
    let mut ech = Echelon::new(unknowns);
    for row in divisibility_rows(m, d, arrangement)? {
        ech.insert(row);
    }
    Ok(unknowns - ech.rank())
}

/// Hilbert function of a free module with generators in the given degrees.
pub fn free_module_dimension(nvars: usize, generator_degrees: &[u32], d: u32) -> usize {
    generator_degrees
        .iter()
        .map(|&g| count_monomials(nvars, i64::from(d) - i64::from(g)))
        .sum()
}

/// `∇_{∂/∂P_i} δ`, divided out exactly; [`Error::NotPolynomial`] if it has poles.
pub fn nabla_partial_p(delta: &Derivation, i: usize, inv: &InvariantSystem) -> Result<Derivation> {
    let field = inv.partial_p_field(i)?;
    delta.try_map(|f| field.apply_exact(f))
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeRow {
    pub degree: u32,
    /// Dimension of `∇_D^{-k}` applied to the invariant fields of degree `d − kh`.
    pub image_dim: usize,
    /// Dimension of the invariant fields of degree `d` with contact order ≥ 2k+1 everywhere.
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeReport {
    pub k: u32,
    pub rows: Vec<HodgeRow>,
    pub agree: bool,
}

/// Compare `∇_D^{-k}(Der^W)` with `D^{2k+1}(𝒜)^W` degree by degree.
pub fn hodge_equality_check(
    k: u32,
    degrees: impl IntoIterator<Item = u32>,
    sys: &CoxeterSystem,
) -> Result<HodgeReport> {
    let n = sys.rank();
    let h = sys.coxeter_number();
    let mult = Multiplicity::constant(&sys.arrangement, 2 * k + 1);
    let mut rows = Vec::new();
    for d in degrees {
        let image_dim = if d < k * h {
            0
        } else {
            let base = sys.invariant_fields(d - k * h);
            let mut ech = Echelon::new(n * monomials_of_degree(n, d).len());
            for b in base.iter() {
                let mut cur = b.clone();
                for _ in 0..k {
                    cur = nabla_d_inverse(&cur, sys)?;
                }
                ech.insert(field_to_row(&cur, d));
            }
            ech.rank()
        };
        let unknowns = n * monomials_of_degree(n, d).len();
        let mut ech = Echelon::new(unknowns);
        for row in divisibility_rows(&mult, d, &sys.arrangement)?
            .into_iter()
            .chain(invariance_rows(&sys.group, d))
        {
            ech.insert(row);
        }
        rows.push(HodgeRow {
            degree: d,
            image_dim,
            kernel_dim: unknowns - ech.rank(),
        });
    }
    let agree = rows.iter().all(|r| r.image_dim == r.kernel_dim);
    Ok(HodgeReport { k, rows, agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CoxeterType;

    fn sys(t: &str) -> CoxeterSystem {
        CoxeterSystem::new(t.parse::<CoxeterType>().unwrap()).unwrap()
    }

    fn x1() -> Polynomial {
        Polynomial::var(1, 0)
    }

    #[test]
    fn contact_order_examples() {
        let a1 = sys("A1");
        let h = &a1.arrangement.hyperplanes()[0];
        assert_eq!(contact_order(&Derivation::euler(1), h), Order::Finite(1));
        let f = Derivation::new(vec![x1().pow(2).scale(&Scalar::from_int(2))]).unwrap();
        assert_eq!(contact_order(&f, h), Order::Finite(2));
        assert_eq!(contact_order(&Derivation::coordinate(1, 0), h), Order::Finite(0));
    }

    #[test]
    fn certify_examples() {
        let b2 = sys("B2");
        let arr = &b2.arrangement;
        let one = Multiplicity::constant(arr, 1);
        let cert = ziegler_certify(&b2.gradient_basis(), &one, arr).unwrap();
        assert_eq!(cert.verdict, Verdict::FreeWithBasis);
        assert!(cert.determinant_scalar.is_some());

        let coords = vec![Derivation::coordinate(2, 0), Derivation::coordinate(2, 1)];
        let cert = ziegler_certify(&coords, &one, arr).unwrap();
        assert!(matches!(
            cert.verdict,
            Verdict::NotMember {
                order: Order::Finite(0),
                ..
            }
        ));

        let a1 = sys("A1");
        let m2 = Multiplicity::constant(&a1.arrangement, 2);
        let f = Derivation::new(vec![x1().pow(2).scale(&Scalar::from_int(2))]).unwrap();
        let cert = ziegler_certify(&[f], &m2, &a1.arrangement).unwrap();
        assert_eq!(cert.verdict, Verdict::FreeWithBasis);
        assert_eq!(cert.determinant_scalar, Some(Scalar::from_int(2)));
    }

    #[test]
    fn certify_detects_dependence_and_degree_excess() {
        let b2 = sys("B2");
        let arr = &b2.arrangement;
        let one = Multiplicity::constant(arr, 1);
        let e = Derivation::euler(2);
        let cert = ziegler_certify(&[e.clone(), e.scale(&Scalar::from_int(3))], &one, arr).unwrap();
        assert_eq!(cert.verdict, Verdict::Dependent);
        // E and P₁·grad P₂ are independent but too large.
        let g = b2.gradient_basis();
        let big = g[1].mul_poly(&b2.invariants.generators()[0]);
        let cert = ziegler_certify(&[e, big], &one, arr).unwrap();
        assert!(matches!(
            cert.verdict,
            Verdict::DegreeMismatch {
                degree_sum: 6,
                expected: 4
            }
        ));
    }

    #[test]
    fn graded_dimension_examples() {
        let a1 = sys("A1");
        let m3 = Multiplicity::constant(&a1.arrangement, 3);
        assert_eq!(graded_dimension(&m3, 2, &a1.arrangement).unwrap(), 0);
        assert_eq!(graded_dimension(&m3, 3, &a1.arrangement).unwrap(), 1);

        let b2 = sys("B2");
        let zero = Multiplicity::constant(&b2.arrangement, 0);
        for d in 0..4 {
            assert_eq!(
                graded_dimension(&zero, d, &b2.arrangement).unwrap(),
                2 * (d as usize + 1)
            );
        }
        let one = Multiplicity::constant(&b2.arrangement, 1);
        for d in 0..=6 {
            assert_eq!(
                graded_dimension(&one, d, &b2.arrangement).unwrap(),
                free_module_dimension(2, &[1, 3], d),
                "degree {d}"
            );
        }
    }

    #[test]
    fn graded_kernel_members_pass_contact_checks() {
        let b2 = sys("B2");
        let m = Multiplicity::per_orbit(&b2.arrangement, &[2, 1]).unwrap();
        for d in 0..4 {
            for f in graded_kernel(&m, d, &b2.arrangement).unwrap() {
                for (hi, h) in b2.arrangement.hyperplanes().iter().enumerate() {
                    assert!(contact_order(&f, h).at_least(m.get(hi)));
                }
            }
        }
    }

    #[test]
    fn partial_p_of_universal_field_gives_euler() {
        let a2 = sys("A2");
        let u = nabla_d_inverse(&Derivation::euler(2), &a2).unwrap();
        let back = nabla_partial_p(&u, 1, &a2.invariants).unwrap();
        assert_eq!(back, Derivation::euler(2));
        assert!(matches!(
            nabla_partial_p(&Derivation::euler(2), 1, &a2.invariants),
            Err(Error::NotPolynomial)
        ));
    }

    #[test]
    fn hodge_rank_one() {
        let a1 = sys("A1");
        let rep = hodge_equality_check(1, 0..=5, &a1).unwrap();
        assert!(rep.agree);
        let dims: Vec<usize> = rep.rows.iter().map(|r| r.kernel_dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 0, 1]);
        let rep0 = hodge_equality_check(0, 0..=4, &a1).unwrap();
        assert!(rep0.agree);
    }
}
