//! The primitive derivation `D = ∂/∂P_ℓ`, the operator `∇_D` and its
//! inverse on invariant vector fields.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::group::{build_group_bounded, Arrangement, CoxeterDatum, CoxeterType, ReflectionGroup, DEFAULT_ORDER_BOUND};
use crate::invariants::{compute_invariants, InvariantCache, InvariantSystem};
use crate::linalg::{solve_echelon, Echelon, SparseRow};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// A realized group with its arrangement and basic invariants.
#[derive(Debug)]
pub struct CoxeterSystem {
    pub group: ReflectionGroup,
    pub arrangement: Arrangement,
    pub invariants: InvariantSystem,
    invariant_fields: Mutex<HashMap<u32, Arc<Vec<Derivation>>>>,
}

impl CoxeterSystem {
    pub fn new(kind: CoxeterType) -> Result<Self> {
        Self::build(kind, None, DEFAULT_ORDER_BOUND)
    }

    pub fn build(kind: CoxeterType, cache: Option<&InvariantCache>, order_bound: usize) -> Result<Self> {
        let datum = CoxeterDatum::new(kind)?;
        let (group, arrangement) = build_group_bounded(&datum, order_bound)?;
        let invariants = match cache {
            Some(c) => c.get_or_compute(&group, &arrangement)?,
            None => compute_invariants(&group, &arrangement)?,
        };
        Ok(Self::from_parts(group, arrangement, invariants))
    }

    pub fn from_parts(group: ReflectionGroup, arrangement: Arrangement, invariants: InvariantSystem) -> Self {
        CoxeterSystem {
            group,
            arrangement,
            invariants,
            invariant_fields: Mutex::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn kind(&self) -> CoxeterType {
        self.group.kind()
    }

    pub fn coxeter_number(&self) -> u32 {
        self.invariants.coxeter_number()
    }

    pub fn gradient_basis(&self) -> Vec<Derivation> {
        self.invariants.gradient_basis(self.group.datum())
    }

    /// Basis of the W-invariant vector fields with coefficients of degree `d`.
    pub fn invariant_fields(&self, d: u32) -> Arc<Vec<Derivation>> {
        if let Some(v) = self.invariant_fields.lock().unwrap().get(&d) {
            return Arc::clone(v);
        }
        let basis = Arc::new(invariant_field_basis(&self.group, d));
        self.invariant_fields.lock().unwrap().insert(d, Arc::clone(&basis));
        basis
    }
}

/// Linear constraints `Σ_k B_kj f_k − s·f_j = 0` for each simple reflection
/// `s`, one row per (component, monomial), over unknowns indexed by
/// `component · #monomials + monomial index`.
pub fn invariance_rows(group: &ReflectionGroup, d: u32) -> Vec<SparseRow> {
    let n = group.rank();
    let monos = monomials_of_degree(n, d);
    let m = monos.len();
    let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, mm)| (mm, i)).collect();
    let mut rows = Vec::new();
    for s in group.simple_reflections() {
        let moved: Vec<Polynomial> = monos
            .iter()
            .map(|mono| ReflectionGroup::act(s, &Polynomial::monomial(mono.clone(), Scalar::one())).unwrap())
            .collect();
        let mut eqs: BTreeMap<(usize, usize), SparseRow> = BTreeMap::new();
        for k in 0..n {
            for (mi, mono) in monos.iter().enumerate() {
                let col = k * m + mi;
                let row_of = index[mono];
                for (j, b) in s[k].iter().enumerate() {
                    if !b.is_zero() {
                        add_entry(eqs.entry((j, row_of)).or_default(), col, b);
                    }
                }
                for (nu, c) in moved[mi].terms() {
                    add_entry(eqs.entry((k, index[nu])).or_default(), col, &-c);
                }
            }
        }
        rows.extend(eqs.into_values().filter(|r| !r.is_empty()));
    }
    rows
}

fn add_entry(row: &mut SparseRow, col: usize, v: &Scalar) {
    let e = row.entry(col).or_default();
    *e += v;
    if e.is_zero() {
        row.remove(&col);
    }
}

/// Unflatten a coefficient vector produced over `invariance_rows` unknowns.
pub fn field_from_vector(n: usize, d: u32, v: &[Scalar]) -> Derivation {
    let monos = monomials_of_degree(n, d);
    let m = monos.len();
    let coeffs = (0..n)
        .map(|k| {
            Polynomial::from_terms(
                n,
                monos
                    .iter()
                    .enumerate()
                    .map(|(i, mm)| (mm.clone(), v[k * m + i].clone())),
            )
        })
        .collect();
    Derivation::new(coeffs).expect("arity")
}

/// Flatten a homogeneous degree-`d` field into the `invariance_rows` unknowns.
pub fn field_to_row(field: &Derivation, d: u32) -> SparseRow {
    let n = field.nvars();
    let monos = monomials_of_degree(n, d);
    let m = monos.len();
    let index: BTreeMap<Monomial, usize> = monos.into_iter().enumerate().map(|(i, mm)| (mm, i)).collect();
    let mut row = SparseRow::new();
    for (k, f) in field.coeffs().iter().enumerate() {
        for (mono, c) in f.terms() {
            row.insert(k * m + index[mono], c.clone());
        }
    }
    row
}

pub fn invariant_field_basis(group: &ReflectionGroup, d: u32) -> Vec<Derivation> {
    let n = group.rank();
    let unknowns = n * monomials_of_degree(n, d).len();
    let mut ech = Echelon::new(unknowns);
    for row in invariance_rows(group, d) {
        ech.insert(row);
    }
    ech.kernel().iter().map(|v| field_from_vector(n, d, v)).collect()
}

/// `J·(∇_D δ)`, coefficientwise; always polynomial.
pub fn nabla_d_numerator(delta: &Derivation, inv: &InvariantSystem) -> Result<Derivation> {
    delta.try_map(|f| inv.primitive_numerator_expanded(f))
}

/// `∇_D δ = Σ (D f_i) ∂/∂x_i`; [`Error::NotPolynomial`] if some `D f_i` has a pole.
pub fn nabla_d(delta: &Derivation, inv: &InvariantSystem) -> Result<Derivation> {
    let j = inv.jacobian();
    delta.try_map(|f| {
        inv.primitive_numerator_expanded(f)?.exact_div(j).map_err(|e| match e {
            Error::NotDivisible { .. } => Error::NotPolynomial,
            e => e,
        })
    })
}

/// The unique invariant `δ'` of degree `deg δ + h` with `∇_D δ' = δ`.
///
/// Unknowns range over the invariant fields of the target degree; the
/// equations are `J·∇_D δ' = J·δ`. A positive-dimensional solution space is
/// reported as [`Error::NonUnique`] rather than resolved.
pub fn nabla_d_inverse(delta: &Derivation, sys: &CoxeterSystem) -> Result<Derivation> {
    let n = sys.rank();
    if delta.nvars() != n {
        return Err(Error::VariableMismatch(n, delta.nvars()));
    }
    if delta.is_zero() {
        return Ok(Derivation::zero(n));
    }
    let deg = delta.degree().ok_or(Error::NotHomogeneous)?;
    if !delta.is_invariant(&sys.group)? {
        return Err(Error::NotInvariant);
    }
    let inv = &sys.invariants;
    let target = deg + inv.coxeter_number();
    let basis = sys.invariant_fields(target);
    let numerators: Vec<Derivation> = basis.iter().map(|b| nabla_d_numerator(b, inv)).collect::<Result<_>>()?;
    let rhs = delta.mul_poly(inv.jacobian());

    // Rows: (component, monomial) → coefficients over the basis, rhs last.
    let t = basis.len();
    let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    for (ti, num) in numerators.iter().enumerate() {
        for (k, f) in num.coeffs().iter().enumerate() {
            for (mono, c) in f.terms() {
                rows.entry((k, mono.clone())).or_default().insert(ti, c.clone());
            }
        }
    }
    for (k, f) in rhs.coeffs().iter().enumerate() {
        for (mono, c) in f.terms() {
            rows.entry((k, mono.clone())).or_default().insert(t, c.clone());
        }
    }
    let mut ech = Echelon::new(t + 1);
    for row in rows.into_values() {
        ech.insert(row);
    }
    let sol = solve_echelon(&mut ech)?;
    if !sol.kernel.is_empty() {
        return Err(Error::NonUnique(sol.kernel.len()));
    }
    let mut out = Derivation::zero(n);
    for (c, b) in sol.particular.iter().zip(basis.iter()) {
        if !c.is_zero() {
            out = out.try_add(&b.scale(c))?;
        }
    }
    if &nabla_d(&out, inv)? != delta {
        return Err(Error::NoSolution);
    }
    Ok(out)
}
