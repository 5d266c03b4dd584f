//! Basic invariants, the Jacobian criterion and the fields `∂/∂P_i`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::group::{Arrangement, CoxeterDatum, CoxeterType, ReflectionGroup};
use crate::linalg::{Echelon, PolyMatrix, SparseRow};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::Scalar;

/// Basic invariants `P_1..P_ℓ` together with their Jacobian data.
#[derive(Clone, Debug)]
pub struct InvariantSystem {
    kind: CoxeterType,
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
    /// `jac.get(i, j) = ∂P_j/∂x_i`.
    jac: PolyMatrix,
    jacobian: Polynomial,
    /// `J = c·Q`.
    jacobian_scalar: Scalar,
    adjugate: PolyMatrix,
}

/// A rational vector field `numerator / denominator`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalField {
    pub numerator: Derivation,
    pub denominator: Polynomial,
}

impl RationalField {
    /// Apply to a polynomial; the result is `numerator(f) / denominator`,
    /// returned as (numerator, denominator) without cancelling.
    pub fn apply_fraction(&self, f: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        Ok((self.numerator.apply(f)?, self.denominator.clone()))
    }

    /// Apply and divide exactly; [`Error::NotPolynomial`] if the quotient is not polynomial.
    pub fn apply_exact(&self, f: &Polynomial) -> Result<Polynomial> {
        let num = self.numerator.apply(f)?;
        num.exact_div(&self.denominator).map_err(|e| match e {
            Error::NotDivisible { .. } => Error::NotPolynomial,
            e => e,
        })
    }
}

impl InvariantSystem {
    /// Validate a proposed generator set: homogeneous, invariant, degrees as
    /// tabulated, Jacobian a nonzero multiple of `Q`.
    pub fn from_generators(
        group: &ReflectionGroup,
        arrangement: &Arrangement,
        generators: Vec<Polynomial>,
    ) -> Result<Self> {
        let kind = group.kind();
        let n = group.rank();
        let expected = kind.degrees();
        if generators.len() != n {
            return Err(Error::JacobianDegenerate(format!(
                "{} generators for rank {n}",
                generators.len()
            )));
        }
        let mut degrees = Vec::with_capacity(n);
        for p in &generators {
            if p.nvars() != n || !p.is_homogeneous() || p.is_zero() {
                return Err(Error::JacobianDegenerate(
                    "generator not a nonzero homogeneous polynomial".into(),
                ));
            }
            if !group.is_invariant(p)? {
                return Err(Error::NotInvariant);
            }
            degrees.push(p.degree().unwrap());
        }
        if degrees != expected {
            return Err(Error::JacobianDegenerate(format!(
                "degrees {degrees:?} differ from the tabulated {expected:?}"
            )));
        }
        let columns: Vec<Vec<Polynomial>> = generators.iter().map(Polynomial::gradient).collect();
        let jac = PolyMatrix::from_columns(&columns)?;
        let jacobian = jac.determinant()?;
        if jacobian.is_zero() {
            return Err(Error::JacobianDegenerate("Jacobian vanishes".into()));
        }
        let q = arrangement.defining_polynomial();
        let jacobian_scalar = jacobian
            .exact_div(q)
            .ok()
            .and_then(|c| c.as_constant())
            .ok_or_else(|| Error::JacobianDegenerate("Jacobian is not a scalar multiple of Q".into()))?;
        let adjugate = jac.adjugate()?;
        Ok(InvariantSystem {
            kind,
            generators,
            degrees,
            jac,
            jacobian,
            jacobian_scalar,
            adjugate,
        })
    }

    pub fn kind(&self) -> CoxeterType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Coxeter number: the top degree.
    pub fn coxeter_number(&self) -> u32 {
        *self.degrees.last().unwrap()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.degrees.iter().map(|d| d - 1).collect()
    }

    pub fn jacobian_matrix(&self) -> &PolyMatrix {
        &self.jac
    }

    pub fn jacobian(&self) -> &Polynomial {
        &self.jacobian
    }

    /// The nonzero `c` with `J = c·Q`.
    pub fn jacobian_scalar(&self) -> &Scalar {
        &self.jacobian_scalar
    }

    /// `∂/∂P_i` (zero-based `i`) as `Σ_j adj(M)_ij / J · ∂/∂x_j`.
    pub fn partial_p_field(&self, i: usize) -> Result<RationalField> {
        let n = self.rank();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, nvars: n });
        }
        let coeffs = (0..n).map(|j| self.adjugate.get(i, j).clone()).collect();
        Ok(RationalField {
            numerator: Derivation::new(coeffs)?,
            denominator: self.jacobian.clone(),
        })
    }

    /// `det(∂P_1 … ∂P_{ℓ−1} | ∂f)`, so that `D f = primitive_numerator(f) / J`.
    pub fn primitive_numerator(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.rank();
        let mut columns: Vec<Vec<Polynomial>> = self.generators[..n - 1].iter().map(Polynomial::gradient).collect();
        columns.push(f.gradient());
        PolyMatrix::from_columns(&columns)?.determinant()
    }

    /// Same value as [`Self::primitive_numerator`], by expansion along the
    /// last column with precomputed cofactors.
    pub fn primitive_numerator_expanded(&self, f: &Polynomial) -> Result<Polynomial> {
        let n = self.rank();
        let mut acc = Polynomial::zero(n);
        for j in 0..n {
            let d = f.partial(j)?;
            if !d.is_zero() {
                acc = &acc + &(self.adjugate.get(n - 1, j) * &d);
            }
        }
        Ok(acc)
    }

    /// Gradient fields `grad P_j = Σ_i (Σ_k G_ik ∂P_j/∂x_k) ∂/∂x_i`, with `G`
    /// the Gram matrix of the coordinate forms.
    pub fn gradient_basis(&self, datum: &CoxeterDatum) -> Vec<Derivation> {
        let n = self.rank();
        self.generators
            .iter()
            .map(|p| {
                let grad = p.gradient();
                let coeffs = (0..n)
                    .map(|i| (0..n).fold(Polynomial::zero(n), |acc, k| &acc + &grad[k].scale(&datum.gram[i][k])))
                    .collect();
                Derivation::new(coeffs).expect("arity")
            })
            .collect()
    }
}

/// All exponent vectors `e` with `Σ e_j·deg_j = target`.
fn weighted_compositions(degs: &[u32], target: u32) -> Vec<Vec<u32>> {
    fn rec(degs: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&d, rest)) = degs.split_first() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        for e in 0..=left / d {
            cur.push(e);
            rec(rest, left - e * d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degs, target, &mut Vec::new(), &mut out);
    out
}

/// Products `Π P_j^{e_j}` of the given invariants with total degree `d`.
pub fn invariant_products(gens: &[Polynomial], degs: &[u32], d: u32, nvars: usize) -> Vec<Polynomial> {
    weighted_compositions(degs, d)
        .into_iter()
        .map(|e| {
            gens.iter()
                .zip(&e)
                .fold(Polynomial::one(nvars), |acc, (p, &k)| &acc * &p.pow(k))
        })
        .collect()
}

fn sparse_coords(p: &Polynomial, index: &BTreeMap<Monomial, usize>) -> SparseRow {
    p.terms().map(|(m, c)| (index[m], c.clone())).collect()
}

/// Reynolds-average monomials degree by degree and keep the first average
/// not already generated by the invariants chosen so far.
pub fn compute_invariants(group: &ReflectionGroup, arrangement: &Arrangement) -> Result<InvariantSystem> {
    let n = group.rank();
    let table = group.kind().degrees();
    let mut chosen: Vec<Polynomial> = Vec::with_capacity(n);
    let mut chosen_degs: Vec<u32> = Vec::with_capacity(n);
    for &d in &table {
        let monos = monomials_of_degree(n, d);
        let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Echelon::new(monos.len());
        for prod in invariant_products(&chosen, &chosen_degs, d, n) {
            span.insert(sparse_coords(&prod, &index));
        }
        let mut found = None;
        for m in &monos {
            let avg = group.reynolds(&Polynomial::monomial(m.clone(), Scalar::one()))?;
            if avg.is_zero() {
                continue;
            }
            if !span.contains(sparse_coords(&avg, &index)) {
                found = Some(avg.monic());
                break;
            }
        }
        let p = found.ok_or_else(|| Error::JacobianDegenerate(format!("no new invariant in degree {d}")))?;
        chosen.push(p);
        chosen_degs.push(d);
    }
    InvariantSystem::from_generators(group, arrangement, chosen)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(rename = "type")]
    kind: CoxeterType,
    rank: usize,
    field: u32,
    generators: Vec<Polynomial>,
}

/// On-disk store of invariant systems keyed by (type, rank, field).
#[derive(Clone, Debug)]
pub struct InvariantCache {
    dir: PathBuf,
}

pub const CACHE_ENV: &str = "MULTICOX_CACHE_DIR";

impl InvariantCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        InvariantCache { dir: dir.into() }
    }

    /// Directory from `MULTICOX_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, kind: CoxeterType) -> PathBuf {
        let name = kind.to_string().replace(['(', ')'], "_");
        self.dir
            .join(format!("{name}-rank{}-field{}.json", kind.rank(), kind.radicand()))
    }

    /// Load and re-verify a cached system; `Ok(None)` when absent.
    pub fn load(&self, group: &ReflectionGroup, arrangement: &Arrangement) -> Result<Option<InvariantSystem>> {
        let path = self.path(group.kind());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let file: CacheFile = serde_json::from_str(&text)?;
        if file.kind != group.kind() || file.rank != group.rank() || file.field != group.kind().radicand() {
            return Ok(None);
        }
        InvariantSystem::from_generators(group, arrangement, file.generators).map(Some)
    }

    /// Write via a temporary file and rename, so readers never see a torn file.
    pub fn store(&self, system: &InvariantSystem) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            kind: system.kind(),
            rank: system.rank(),
            field: system.kind().radicand(),
            generators: system.generators().to_vec(),
        };
        let path = self.path(system.kind());
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(&file)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn get_or_compute(&self, group: &ReflectionGroup, arrangement: &Arrangement) -> Result<InvariantSystem> {
        if let Some(sys) = self.load(group, arrangement)? {
            return Ok(sys);
        }
        let sys = compute_invariants(group, arrangement)?;
        self.store(&sys)?;
        Ok(sys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_type;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_one() {
        let (g, a) = build_type(CoxeterType::A(1)).unwrap();
        let sys = compute_invariants(&g, &a).unwrap();
        let x = Polynomial::var(1, 0);
        assert_eq!(sys.generators(), &[x.pow(2)]);
        assert_eq!(sys.jacobian(), &x.scale(&s(2)));
        assert_eq!(sys.jacobian_scalar(), &s(2));
        let grad = sys.gradient_basis(g.datum());
        assert_eq!(grad[0].coeffs()[0], x.scale(&s(2)));
        let dp = sys.partial_p_field(0).unwrap();
        assert_eq!(dp.numerator, Derivation::coordinate(1, 0));
        assert_eq!(dp.denominator, x.scale(&s(2)));
    }

    #[test]
    fn b2_with_classical_generators() {
        let (g, a) = build_type(CoxeterType::B(2)).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p1 = &x.pow(2) + &y.pow(2);
        let p2 = &x.pow(2) * &y.pow(2);
        let sys = InvariantSystem::from_generators(&g, &a, vec![p1.clone(), p2.clone()]).unwrap();
        // J = 4x^3y - 4xy^3 = 4·Q with Q = xy(x-y)(x+y)
        assert_eq!(sys.jacobian_scalar(), &s(4));
        let grad = sys.gradient_basis(g.datum());
        let on_diag = grad[1].apply(&(&x - &y)).unwrap();
        assert_eq!(on_diag, (&(&x * &y) * &(&x - &y)).scale(&s(-2)));
        for i in 0..2 {
            let f = sys.partial_p_field(i).unwrap();
            for (j, p) in [&p1, &p2].into_iter().enumerate() {
                let v = f.apply_exact(p).unwrap();
                assert_eq!(v, Polynomial::constant(2, s(i64::from(i == j))));
            }
        }
    }

    #[test]
    fn rejects_bad_generators() {
        let (g, a) = build_type(CoxeterType::B(2)).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p1 = &x.pow(2) + &y.pow(2);
        assert!(matches!(
            InvariantSystem::from_generators(&g, &a, vec![p1.clone(), p1.pow(2)]),
            Err(Error::JacobianDegenerate(_))
        ));
        assert!(matches!(
            InvariantSystem::from_generators(&g, &a, vec![p1.clone(), x.pow(4)]),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn computed_systems_satisfy_the_jacobian_criterion() {
        for t in ["A2", "A3", "B2", "B3", "G2", "I2(5)", "I2(8)"] {
            let kind: CoxeterType = t.parse().unwrap();
            let (g, a) = build_type(kind).unwrap();
            let sys = compute_invariants(&g, &a).unwrap();
            assert_eq!(sys.degrees(), kind.degrees().as_slice(), "{t}");
            let h = sys.coxeter_number();
            let n = sys.rank();
            assert!(sys.degrees()[n - 2] < h, "{t}");
            assert_eq!(2 * a.len() as u32, h * n as u32, "{t}");
            assert_eq!(sys.exponents().iter().sum::<u32>(), a.len() as u32, "{t}");
            for p in sys.generators() {
                for w in g.elements() {
                    assert_eq!(&ReflectionGroup::act(w, p).unwrap(), p, "{t}");
                }
            }
            for f in [sys.generators()[0].clone(), Polynomial::var(n, 0).pow(3)] {
                assert_eq!(
                    sys.primitive_numerator(&f).unwrap(),
                    sys.primitive_numerator_expanded(&f).unwrap()
                );
            }
            for d in sys.gradient_basis(g.datum()) {
                assert!(d.is_invariant(&g).unwrap(), "{t}");
                for hp in a.hyperplanes() {
                    let o = d.apply(&hp.alpha).unwrap().linear_form_order(&hp.alpha).unwrap();
                    assert!(o.at_least(1), "{t}");
                }
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = InvariantCache::new(dir.path());
        let (g, a) = build_type(CoxeterType::G2).unwrap();
        assert!(cache.load(&g, &a).unwrap().is_none());
        let sys = cache.get_or_compute(&g, &a).unwrap();
        let again = cache.load(&g, &a).unwrap().unwrap();
        assert_eq!(sys.generators(), again.generators());
        let text = fs::read_to_string(cache.path(CoxeterType::G2)).unwrap();
        assert!(!text.contains('.'), "cache must not contain floats");
    }
}
