//! Bases of `D(𝒜, m̃ + 2k)` of the form `∇_{δᵢ} ∇_D^{-k} E`.

use serde::Serialize;

use crate::certify::{graded_kernel, ziegler_certify, Certificate, Verdict};
use crate::connection::{field_to_row, nabla_d_inverse, CoxeterSystem};
use crate::derivation::{nabla, Derivation};
use crate::error::{Error, Result};
use crate::group::Multiplicity;
use crate::linalg::Echelon;
use crate::poly::{monomials_of_degree, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum BaseSource {
    /// `∂/∂x_i`, for `m̃ ≡ 0`.
    Coordinate,
    /// `grad P_i`, for `m̃ ≡ 1`.
    Gradient,
    User(Vec<Derivation>),
    /// Lowest-degree generators found by a graded sweep.
    OracleSearch,
}

impl BaseSource {
    pub fn label(&self) -> &'static str {
        match self {
            BaseSource::Coordinate => "coordinate",
            BaseSource::Gradient => "gradient",
            BaseSource::User(_) => "user",
            BaseSource::OracleSearch => "oracle-search",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BasisRequest {
    pub base_multiplicity: Multiplicity,
    pub k: u32,
    pub source: BaseSource,
}

impl BasisRequest {
    pub fn new(sys: &CoxeterSystem, base_multiplicity: Multiplicity, k: u32, source: BaseSource) -> Result<Self> {
        if base_multiplicity.len() != sys.arrangement.len() {
            return Err(Error::Multiplicity(format!(
                "{} values for {} hyperplanes",
                base_multiplicity.len(),
                sys.arrangement.len()
            )));
        }
        if base_multiplicity.values().iter().any(|&v| v > 1) {
            return Err(Error::Multiplicity("base multiplicity values must be 0 or 1".into()));
        }
        let constant = base_multiplicity.is_constant();
        match &source {
            BaseSource::Coordinate if constant != Some(0) => {
                return Err(Error::Multiplicity("coordinate fields need m ≡ 0".into()))
            }
            BaseSource::Gradient if constant != Some(1) => {
                return Err(Error::Multiplicity("gradient fields need m ≡ 1".into()))
            }
            BaseSource::User(list) if list.len() != sys.rank() => {
                return Err(Error::Dimension(format!(
                    "{} base fields for rank {}",
                    list.len(),
                    sys.rank()
                )))
            }
            _ => {}
        }
        Ok(BasisRequest {
            base_multiplicity,
            k,
            source,
        })
    }

    /// Coordinate fields for `m̃ ≡ 0`, gradients for `m̃ ≡ 1`, search otherwise.
    pub fn automatic(sys: &CoxeterSystem, base_multiplicity: Multiplicity, k: u32) -> Result<Self> {
        let source = match base_multiplicity.is_constant() {
            Some(0) => BaseSource::Coordinate,
            Some(1) => BaseSource::Gradient,
            _ => BaseSource::OracleSearch,
        };
        Self::new(sys, base_multiplicity, k, source)
    }

    pub fn target_multiplicity(&self) -> Multiplicity {
        self.base_multiplicity.shifted(2 * self.k)
    }
}

/// `∇_D^{-k} E`.
pub fn universal_field(k: u32, sys: &CoxeterSystem) -> Result<Derivation> {
    Ok(universal_fields(k, sys)?.pop().expect("k+1 entries"))
}

/// `E, ∇_D^{-1}E, …, ∇_D^{-k}E`.
pub fn universal_fields(k: u32, sys: &CoxeterSystem) -> Result<Vec<Derivation>> {
    let mut out = vec![Derivation::euler(sys.rank())];
    for _ in 0..k {
        let next = nabla_d_inverse(out.last().unwrap(), sys)?;
        out.push(next);
    }
    Ok(out)
}

pub fn base_basis(sys: &CoxeterSystem, req: &BasisRequest) -> Result<Vec<Derivation>> {
    let n = sys.rank();
    let candidate = match &req.source {
        BaseSource::Coordinate => (0..n).map(|i| Derivation::coordinate(n, i)).collect(),
        BaseSource::Gradient => sys.gradient_basis(),
        BaseSource::User(list) => list.clone(),
        BaseSource::OracleSearch => oracle_search(sys, &req.base_multiplicity)?,
    };
    let cert = ziegler_certify(&candidate, &req.base_multiplicity, &sys.arrangement)?;
    if !cert.verdict.is_free() {
        return Err(Error::NotABasis(describe_failure(&cert.verdict)));
    }
    Ok(candidate)
}

fn describe_failure(v: &Verdict) -> String {
    match v {
        Verdict::NotMember {
            member,
            hyperplane,
            order,
            required,
        } => format!("member {member} has contact order {order} < {required} at hyperplane {hyperplane}"),
        Verdict::NotHomogeneous { member } => format!("member {member} is not homogeneous"),
        Verdict::Dependent => "members are linearly dependent".into(),
        Verdict::DegreeMismatch { degree_sum, expected } => {
            format!("degree sum {degree_sum} differs from multiplicity total {expected}")
        }
        Verdict::FactorizationMismatch => "determinant does not factor as c·Π α_H^m".into(),
        Verdict::FreeWithBasis => "free".into(),
    }
}

/// Minimal homogeneous generators of `D(𝒜, m)` up to degree `Σm`.
///
/// Degree by degree, kernel vectors outside the span of multiples of the
/// generators already chosen become new generators. A free module has
/// exactly `ℓ` of them with degree sum `Σm`.
pub fn oracle_search(sys: &CoxeterSystem, m: &Multiplicity) -> Result<Vec<Derivation>> {
    let n = sys.rank();
    let arr = &sys.arrangement;
    let mut gens: Vec<Derivation> = Vec::new();
    for d in 0..=m.total() {
        let kernel = graded_kernel(m, d, arr)?;
        if kernel.is_empty() {
            continue;
        }
        let mut span = Echelon::new(n * monomials_of_degree(n, d).len());
        for g in &gens {
            let gd = g.degree().expect("generators are homogeneous");
            for mono in monomials_of_degree(n, d - gd) {
                let shifted = g.mul_poly(&Polynomial::monomial(mono, Scalar::one()));
                span.insert(field_to_row(&shifted, d));
            }
        }
        for f in kernel {
            if span.insert(field_to_row(&f, d)) {
                gens.push(f);
                if gens.len() > n {
                    return Err(Error::NotABasis(format!(
                        "more than {n} generators needed by degree {d}"
                    )));
                }
            }
        }
        if gens.len() == n {
            break;
        }
    }
    if gens.len() < n {
        return Err(Error::NotABasis(format!(
            "only {} generators up to degree {}",
            gens.len(),
            m.total()
        )));
    }
    Ok(gens)
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisResult {
    pub k: u32,
    pub universal_field: Derivation,
    pub base: Vec<Derivation>,
    pub members: Vec<Derivation>,
    pub degrees: Vec<Option<u32>>,
    pub degree_sum: Option<u32>,
    /// `2k|𝒜| + Σm̃`.
    pub expected_degree_sum: u32,
    /// Every member has degree `kh + deg δᵢ`.
    pub degree_law: bool,
    pub certificate: Certificate,
}

impl BasisResult {
    pub fn is_free(&self) -> bool {
        self.certificate.verdict.is_free() && self.degree_law && self.degree_sum == Some(self.expected_degree_sum)
    }
}

#[cfg(not(target_arch = "wasm32"))]
fn apply_to_each(base: &[Derivation], universal: &Derivation) -> Result<Vec<Derivation>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = base.iter().map(|d| s.spawn(|| nabla(d, universal))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(target_arch = "wasm32")]
fn apply_to_each(base: &[Derivation], universal: &Derivation) -> Result<Vec<Derivation>> {
    base.iter().map(|d| nabla(d, universal)).collect()
}

/// Build and certify, returning the result whatever the verdict.
pub fn build_basis_report(sys: &CoxeterSystem, req: &BasisRequest) -> Result<BasisResult> {
    let base = base_basis(sys, req)?;
    let universal = universal_field(req.k, sys)?;
    let members = apply_to_each(&base, &universal)?;

    let kh = req.k * sys.coxeter_number();
    let degrees: Vec<Option<u32>> = members.iter().map(Derivation::degree).collect();
    let degree_law = base
        .iter()
        .zip(&degrees)
        .all(|(b, d)| b.degree().map(|bd| bd + kh) == *d);
    let degree_sum = degrees.iter().try_fold(0u32, |acc, d| d.map(|d| acc + d));
    let expected_degree_sum = 2 * req.k * sys.arrangement.len() as u32 + req.base_multiplicity.total();
    let certificate = ziegler_certify(&members, &req.target_multiplicity(), &sys.arrangement)?;
    Ok(BasisResult {
        k: req.k,
        universal_field: universal,
        base,
        members,
        degrees,
        degree_sum,
        expected_degree_sum,
        degree_law,
        certificate,
    })
}

/// As [`build_basis_report`], failing with [`Error::CertificateFailed`]
/// unless the members certify as a basis.
pub fn build_basis(sys: &CoxeterSystem, req: &BasisRequest) -> Result<BasisResult> {
    let res = build_basis_report(sys, req)?;
    if !res.certificate.verdict.is_free() {
        return Err(Error::CertificateFailed(describe_failure(&res.certificate.verdict)));
    }
    if !res.degree_law || res.degree_sum != Some(res.expected_degree_sum) {
        return Err(Error::CertificateFailed(format!(
            "degrees {:?} break the expected law (sum {})",
            res.degrees, res.expected_degree_sum
        )));
    }
    Ok(res)
}
