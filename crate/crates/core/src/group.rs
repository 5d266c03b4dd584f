//! Finite reflection groups, their Coxeter arrangements and the Reynolds
//! operator.
//!
//! Coordinates `x_1..x_ℓ` are a basis of the dual space `V*`. The Gram matrix
//! of a datum is the inner product of these coordinate forms. Group elements
//! are stored as matrices `B` acting on coefficient columns of linear forms,
//! so `w·x_j = Σ_k B_kj x_k` and `(w·p)(x) = p(Bᵀx)`, which is `p ∘ w⁻¹` on
//! points.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, scalar_determinant, transpose, Echelon};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub type ScalarMatrix = Vec<Vec<Scalar>>;

pub const DEFAULT_ORDER_BOUND: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    A(usize),
    B(usize),
    D(usize),
    G2,
    /// Dihedral group of order `2m`.
    I2(u32),
    H3,
}

impl CoxeterType {
    pub fn rank(&self) -> usize {
        match *self {
            CoxeterType::A(n) | CoxeterType::B(n) | CoxeterType::D(n) => n,
            CoxeterType::G2 | CoxeterType::I2(_) => 2,
            CoxeterType::H3 => 3,
        }
    }

    /// Degrees of the basic invariants, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = match *self {
            CoxeterType::A(n) => (2..=n as u32 + 1).collect(),
            CoxeterType::B(n) => (1..=n as u32).map(|i| 2 * i).collect(),
            CoxeterType::D(n) => (1..n as u32).map(|i| 2 * i).chain([n as u32]).collect(),
            CoxeterType::G2 => vec![2, 6],
            CoxeterType::I2(m) => vec![2, m],
            CoxeterType::H3 => vec![2, 6, 10],
        };
        d.sort_unstable();
        d
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().last().unwrap()
    }

    /// Classical group order, the product of the degrees.
    pub fn expected_order(&self) -> usize {
        self.degrees().iter().map(|&d| d as usize).product()
    }

    /// Radicand of the coordinate field (1 for ℚ).
    pub fn radicand(&self) -> u32 {
        match *self {
            CoxeterType::I2(5) | CoxeterType::H3 => 5,
            CoxeterType::I2(8) => 2,
            _ => 1,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CoxeterType::A(n) => n >= 1,
            CoxeterType::B(n) => n >= 2,
            CoxeterType::D(n) => n >= 4,
            CoxeterType::G2 | CoxeterType::H3 => true,
            CoxeterType::I2(m) => matches!(m, 3 | 4 | 5 | 6 | 8),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported(self.to_string()))
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterType::A(n) => write!(f, "A{n}"),
            CoxeterType::B(n) => write!(f, "B{n}"),
            CoxeterType::D(n) => write!(f, "D{n}"),
            CoxeterType::G2 => write!(f, "G2"),
            CoxeterType::I2(m) => write!(f, "I2({m})"),
            CoxeterType::H3 => write!(f, "H3"),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Accepts `A2`, `B3`, `D4`, `G2`, `H3`, `I2(5)` (also `I2-5`, `I2_5`),
    /// case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || Error::Unsupported(s.to_string());
        if let Some(rest) = t.strip_prefix("I2") {
            let m = rest
                .trim_start_matches(['(', '-', '_'])
                .trim_end_matches(')')
                .parse()
                .map_err(|_| bad())?;
            let ty = CoxeterType::I2(m);
            ty.validate()?;
            return Ok(ty);
        }
        let (head, num) = t.split_at(1.min(t.len()));
        let n: usize = num.parse().map_err(|_| bad())?;
        let ty = match (head, n) {
            ("A", n) => CoxeterType::A(n),
            ("B", n) => CoxeterType::B(n),
            ("D", n) => CoxeterType::D(n),
            ("G", 2) => CoxeterType::G2,
            ("H", 3) => CoxeterType::H3,
            _ => return Err(bad()),
        };
        ty.validate()?;
        Ok(ty)
    }
}

impl Serialize for CoxeterType {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoxeterType {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Coordinate realization of a Coxeter type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoxeterDatum {
    pub kind: CoxeterType,
    /// Gram matrix of the coordinate forms `x_1..x_ℓ`.
    pub gram: ScalarMatrix,
    /// Simple roots as coefficient vectors of linear forms.
    pub simple_roots: Vec<Vec<Scalar>>,
}

fn golden() -> Scalar {
    let half = BigRational::new(1.into(), 2.into());
    Scalar::quadratic(half.clone(), half, 5)
}

fn unit_roots(n: usize) -> Vec<Vec<Scalar>> {
    identity(n)
}

fn rank2_gram(a: Scalar, c: Scalar, b: Scalar) -> ScalarMatrix {
    vec![vec![a, -c.clone()], vec![-c, b]]
}

impl CoxeterDatum {
    pub fn new(kind: CoxeterType) -> Result<Self> {
        kind.validate()?;
        let s = Scalar::from_int;
        let (gram, simple_roots) = match kind {
            CoxeterType::A(1) => (identity(1), unit_roots(1)),
            // Simple-root coordinates with the Cartan form.
            CoxeterType::A(n) => {
                let gram = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| match i.abs_diff(j) {
                                0 => s(2),
                                1 => s(-1),
                                _ => s(0),
                            })
                            .collect()
                    })
                    .collect();
                (gram, unit_roots(n))
            }
            CoxeterType::B(n) | CoxeterType::D(n) => {
                let mut roots: Vec<Vec<Scalar>> = (0..n - 1)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if j == i {
                                    s(1)
                                } else if j == i + 1 {
                                    s(-1)
                                } else {
                                    s(0)
                                }
                            })
                            .collect()
                    })
                    .collect();
                let last = (0..n)
                    .map(|j| {
                        if j == n - 1 || (matches!(kind, CoxeterType::D(_)) && j == n - 2) {
                            s(1)
                        } else {
                            s(0)
                        }
                    })
                    .collect();
                roots.push(last);
                (identity(n), roots)
            }
            CoxeterType::G2 | CoxeterType::I2(6) => (rank2_gram(s(2), s(3), s(6)), unit_roots(2)),
            CoxeterType::I2(3) => (rank2_gram(s(2), s(1), s(2)), unit_roots(2)),
            CoxeterType::I2(4) => (rank2_gram(s(2), s(2), s(4)), unit_roots(2)),
            CoxeterType::I2(5) => (rank2_gram(s(2), golden(), s(2)), unit_roots(2)),
            CoxeterType::I2(8) => {
                // Unequal root lengths keep cos(π/8) out of the field.
                let c = Scalar::quadratic(BigRational::from_integer(2.into()), BigRational::one(), 2);
                let b = &c * &s(2);
                (rank2_gram(s(2), c, b), unit_roots(2))
            }
            CoxeterType::H3 => {
                let t = golden();
                let gram = vec![
                    vec![s(2), -t.clone(), s(0)],
                    vec![-t, s(2), s(-1)],
                    vec![s(0), s(-1), s(2)],
                ];
                (gram, unit_roots(3))
            }
            CoxeterType::I2(_) => return Err(Error::Unsupported(kind.to_string())),
        };
        Ok(CoxeterDatum {
            kind,
            gram,
            simple_roots,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    acc += &(&(ui * &self.gram[i][j]) * vj);
                }
            }
        }
        acc
    }

    /// Orthogonal reflection of `V*` in the root `r`: `a ↦ a − 2(a,r)/(r,r)·r`.
    pub fn reflection_matrix(&self, r: &[Scalar]) -> ScalarMatrix {
        let n = self.rank();
        let rr = self.inner(r, r);
        let scale = &Scalar::from_int(2) / &rr;
        // column j is the image of e_j
        let mut m = identity(n);
        for j in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            let coeff = &scale * &self.inner(&e, r);
            for i in 0..n {
                let t = &coeff * &r[i];
                m[i][j] -= &t;
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    datum: CoxeterDatum,
    elements: Vec<ScalarMatrix>,
    /// Indices into `elements` of the simple reflections.
    simple: Vec<usize>,
    /// Indices into `elements` of all reflections.
    reflections: Vec<usize>,
}

impl ReflectionGroup {
    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn kind(&self) -> CoxeterType {
        self.datum.kind
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ScalarMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ScalarMatrix {
        &self.elements[i]
    }

    pub fn simple_reflections(&self) -> impl Iterator<Item = &ScalarMatrix> + '_ {
        self.simple.iter().map(move |&i| &self.elements[i])
    }

    pub fn reflection_indices(&self) -> &[usize] {
        &self.reflections
    }

    /// Images of the coordinate functions under `w`: `w·x_i = Σ_k B_ki x_k`.
    pub fn coordinate_images(w: &ScalarMatrix) -> Vec<Polynomial> {
        let n = w.len();
        (0..n)
            .map(|i| Polynomial::linear(&(0..n).map(|k| w[k][i].clone()).collect::<Vec<_>>()))
            .collect()
    }

    /// `w·p = p ∘ w⁻¹`, by linear substitution.
    pub fn act(w: &ScalarMatrix, p: &Polynomial) -> Result<Polynomial> {
        if w.len() != p.nvars() {
            return Err(Error::VariableMismatch(p.nvars(), w.len()));
        }
        p.substitute(&Self::coordinate_images(w))
    }

    /// Average of `w·p` over the whole group.
    pub fn reynolds(&self, p: &Polynomial) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(p.nvars());
        for w in &self.elements {
            acc = &acc + &Self::act(w, p)?;
        }
        Ok(acc.scale(&Scalar::from_frac(1, self.order() as i64)))
    }

    /// True if `p` is fixed by every simple reflection (hence by the group).
    pub fn is_invariant(&self, p: &Polynomial) -> Result<bool> {
        for s in self.simple_reflections() {
            if &Self::act(s, p)? != p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn determinant(w: &ScalarMatrix) -> Scalar {
        scalar_determinant(w)
    }
}

/// One reflecting hyperplane with its chosen defining form.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    /// Coefficients of `α_H`, first nonzero entry equal to one.
    pub form: Vec<Scalar>,
    pub alpha: Polynomial,
    /// Index of the reflection in the group's element list.
    pub reflection: usize,
    pub orbit: usize,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    hyperplanes: Vec<Hyperplane>,
    orbits: Vec<Vec<usize>>,
    defining: Polynomial,
}

impl Arrangement {
    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.defining.nvars()
    }

    /// `Q = Π α_H`.
    pub fn defining_polynomial(&self) -> &Polynomial {
        &self.defining
    }

    /// W-orbits of hyperplanes, as index lists in canonical order.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// `Π α_H^{m(H)}`.
    pub fn power_product(&self, m: &Multiplicity) -> Polynomial {
        self.hyperplanes
            .iter()
            .zip(m.values())
            .fold(Polynomial::one(self.nvars()), |acc, (h, &k)| &acc * &h.alpha.pow(k))
    }

    /// Copy with each `α_H` replaced by `scales[i]·α_H`.
    pub fn rescaled(&self, scales: &[Scalar]) -> Arrangement {
        let mut out = self.clone();
        for (h, c) in out.hyperplanes.iter_mut().zip(scales) {
            h.alpha = h.alpha.scale(c);
            h.form = h.form.iter().map(|a| a * c).collect();
        }
        out.defining = out
            .hyperplanes
            .iter()
            .fold(Polynomial::one(self.nvars()), |acc, h| &acc * &h.alpha);
        out
    }

    pub fn describe(&self, group: &ReflectionGroup) -> GroupDescription {
        GroupDescription {
            kind: group.kind(),
            rank: group.rank(),
            order: group.order(),
            gram: group.datum().gram.clone(),
            simple_roots: group.datum().simple_roots.clone(),
            forms: self.hyperplanes.iter().map(|h| h.form.clone()).collect(),
            orbits: self.orbits.clone(),
        }
    }
}

/// Serializable summary of a group and its arrangement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDescription {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub rank: usize,
    pub order: usize,
    pub gram: ScalarMatrix,
    pub simple_roots: Vec<Vec<Scalar>>,
    pub forms: Vec<Vec<Scalar>>,
    pub orbits: Vec<Vec<usize>>,
}

/// Assignment of a nonnegative integer to each hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Multiplicity {
    values: Vec<u32>,
    total: u32,
}

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Self {
        let total = values.iter().sum();
        Multiplicity { values, total }
    }

    pub fn constant(arr: &Arrangement, m: u32) -> Self {
        Self::new(vec![m; arr.len()])
    }

    /// One value per orbit, in the arrangement's orbit order.
    pub fn per_orbit(arr: &Arrangement, values: &[u32]) -> Result<Self> {
        if values.len() != arr.orbits().len() {
            return Err(Error::Multiplicity(format!(
                "{} orbit values given, arrangement has {} orbits",
                values.len(),
                arr.orbits().len()
            )));
        }
        let v = arr.hyperplanes().iter().map(|h| values[h.orbit]).collect();
        Ok(Self::new(v))
    }

    /// Values addressed by orbit index and canonical position within the orbit.
    pub fn from_orbit_lists(arr: &Arrangement, lists: &[Vec<u32>]) -> Result<Self> {
        if lists.len() != arr.orbits().len() {
            return Err(Error::Multiplicity(format!(
                "{} orbit lists given, arrangement has {} orbits",
                lists.len(),
                arr.orbits().len()
            )));
        }
        let mut v = vec![0; arr.len()];
        for (orbit, list) in arr.orbits().iter().zip(lists) {
            if orbit.len() != list.len() {
                return Err(Error::Multiplicity(format!(
                    "orbit of size {} given {} values",
                    orbit.len(),
                    list.len()
                )));
            }
            for (&h, &m) in orbit.iter().zip(list) {
                v[h] = m;
            }
        }
        Ok(Self::new(v))
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, h: usize) -> u32 {
        self.values[h]
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `m + c` on every hyperplane.
    pub fn shifted(&self, c: u32) -> Self {
        Self::new(self.values.iter().map(|v| v + c).collect())
    }

    pub fn is_constant(&self) -> Option<u32> {
        let first = *self.values.first()?;
        self.values.iter().all(|&v| v == first).then_some(first)
    }
}

fn normalize_form(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv().unwrap();
    Some(v.iter().map(|c| c * &inv).collect())
}

fn apply(m: &ScalarMatrix, v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

fn is_reflection(w: &ScalarMatrix) -> Option<Vec<Scalar>> {
    let n = w.len();
    let id = identity(n);
    if mat_mul(w, w) != id {
        return None;
    }
    let diff: ScalarMatrix = (0..n).map(|i| (0..n).map(|j| &id[i][j] - &w[i][j]).collect()).collect();
    let mut ech = Echelon::new(n);
    for row in &diff {
        ech.insert_dense(row);
    }
    if ech.rank() != 1 {
        return None;
    }
    // The root spans the column space of (1 − w).
    let cols = transpose(&diff);
    cols.iter().find_map(|c| normalize_form(c))
}

/// Enumerate `W` by closure of its simple reflections and assemble the arrangement.
pub fn build_group(datum: &CoxeterDatum) -> Result<(ReflectionGroup, Arrangement)> {
    build_group_bounded(datum, DEFAULT_ORDER_BOUND)
}

pub fn build_group_bounded(datum: &CoxeterDatum, bound: usize) -> Result<(ReflectionGroup, Arrangement)> {
    let n = datum.rank();
    let gens: Vec<ScalarMatrix> = datum.simple_roots.iter().map(|r| datum.reflection_matrix(r)).collect();

    let mut index: HashMap<ScalarMatrix, usize> = HashMap::new();
    let mut elements = vec![identity(n)];
    index.insert(identity(n), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let next = mat_mul(g, &elements[i]);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= bound {
                return Err(Error::OrderBoundExceeded(bound));
            }
            index.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
        }
    }
    let simple = gens.iter().map(|g| index[g]).collect();

    // Reflections and their normalized roots.
    let mut roots: Vec<(Vec<Scalar>, usize)> = Vec::new();
    for (i, w) in elements.iter().enumerate() {
        if let Some(root) = is_reflection(w) {
            roots.push((root, i));
        }
    }
    let mut reflections: Vec<usize> = roots.iter().map(|r| r.1).collect();
    reflections.sort_unstable();

    // Orbits under the generators.
    let position: HashMap<Vec<Scalar>, usize> = roots.iter().enumerate().map(|(k, r)| (r.0.clone(), k)).collect();
    let mut orbit_of = vec![usize::MAX; roots.len()];
    let mut raw_orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..roots.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = raw_orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for g in &gens {
                let image = normalize_form(&apply(g, &roots[k].0)).unwrap();
                let j = *position
                    .get(&image)
                    .ok_or_else(|| Error::Dimension("reflection root set not W-stable".into()))?;
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        raw_orbits.push(members);
    }

    // Canonical order: forms descending within an orbit, orbits by their first form.
    for orbit in &mut raw_orbits {
        orbit.sort_by(|&a, &b| roots[b].0.cmp(&roots[a].0));
    }
    raw_orbits.sort_by(|a, b| roots[b[0]].0.cmp(&roots[a[0]].0));

    let mut hyperplanes = Vec::with_capacity(roots.len());
    let mut orbits = Vec::with_capacity(raw_orbits.len());
    for (oi, orbit) in raw_orbits.iter().enumerate() {
        let mut ids = Vec::new();
        for &k in orbit {
            ids.push(hyperplanes.len());
            let (form, refl) = &roots[k];
            hyperplanes.push(Hyperplane {
                form: form.clone(),
                alpha: Polynomial::linear(form),
                reflection: *refl,
                orbit: oi,
            });
        }
        orbits.push(ids);
    }
    let defining = hyperplanes.iter().fold(Polynomial::one(n), |acc, h| &acc * &h.alpha);

    let group = ReflectionGroup {
        datum: datum.clone(),
        elements,
        simple,
        reflections,
    };
    let arrangement = Arrangement {
        hyperplanes,
        orbits,
        defining,
    };
    Ok((group, arrangement))
}

/// Convenience: realize and enumerate a Coxeter type.
pub fn build_type(kind: CoxeterType) -> Result<(ReflectionGroup, Arrangement)> {
    build_group(&CoxeterDatum::new(kind)?)
}

/// Set of hyperplane forms, for stability checks.
pub fn form_set(arr: &Arrangement) -> HashSet<Vec<Scalar>> {
    arr.hyperplanes().iter().map(|h| h.form.clone()).collect()
}

/// Image of a normalized form under a group element, renormalized.
pub fn transform_form(w: &ScalarMatrix, form: &[Scalar]) -> Vec<Scalar> {
    normalize_form(&apply(w, form)).expect("group elements are invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn parse_types() {
        assert_eq!("A2".parse::<CoxeterType>().unwrap(), CoxeterType::A(2));
        assert_eq!("b3".parse::<CoxeterType>().unwrap(), CoxeterType::B(3));
        assert_eq!("I2(5)".parse::<CoxeterType>().unwrap(), CoxeterType::I2(5));
        assert_eq!("I2-8".parse::<CoxeterType>().unwrap(), CoxeterType::I2(8));
        assert!("E8".parse::<CoxeterType>().is_err());
        assert!("I2(7)".parse::<CoxeterType>().is_err());
        assert!("D3".parse::<CoxeterType>().is_err());
    }

    #[test]
    fn small_groups() {
        let (g, a) = build_type(CoxeterType::A(1)).unwrap();
        assert_eq!((g.order(), a.len()), (2, 1));
        assert_eq!(a.defining_polynomial(), &x(1, 0));

        let (g, a) = build_type(CoxeterType::A(2)).unwrap();
        assert_eq!((g.order(), a.len()), (6, 3));
        assert_eq!(a.orbits().len(), 1);

        let (g, a) = build_type(CoxeterType::B(2)).unwrap();
        assert_eq!((g.order(), a.len()), (8, 4));
        let sizes: Vec<usize> = a.orbits().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 2]);
        let q = &(&x(2, 0) * &x(2, 1)) * &(&(&x(2, 0) - &x(2, 1)) * &(&x(2, 0) + &x(2, 1)));
        assert_eq!(a.defining_polynomial(), &q);
    }

    #[test]
    fn orders_match_degree_products() {
        for t in ["A3", "B3", "G2", "I2(5)", "I2(8)", "D4", "H3"] {
            let kind: CoxeterType = t.parse().unwrap();
            let (g, a) = build_type(kind).unwrap();
            assert_eq!(g.order(), kind.expected_order(), "{t}");
            let exps: u32 = kind.degrees().iter().map(|d| d - 1).sum();
            assert_eq!(a.len() as u32, exps, "{t}");
            assert_eq!(2 * a.len() as u32, kind.coxeter_number() * kind.rank() as u32, "{t}");
        }
    }

    #[test]
    fn order_bound() {
        let d = CoxeterDatum::new(CoxeterType::B(3)).unwrap();
        assert!(matches!(
            build_group_bounded(&d, 10),
            Err(Error::OrderBoundExceeded(10))
        ));
    }

    #[test]
    fn action_examples() {
        let (g, _) = build_type(CoxeterType::A(1)).unwrap();
        let s = g.element(1);
        let p2 = x(1, 0).pow(2);
        let p3 = x(1, 0).pow(3);
        assert_eq!(ReflectionGroup::act(g.element(0), &p3).unwrap(), p3);
        assert_eq!(ReflectionGroup::act(s, &p2).unwrap(), p2);
        assert_eq!(ReflectionGroup::act(s, &p3).unwrap(), -p3.clone());
        assert_eq!(g.reynolds(&p2).unwrap(), p2);
        assert!(g.reynolds(&x(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn reynolds_b2() {
        let (g, _) = build_type(CoxeterType::B(2)).unwrap();
        let r = g.reynolds(&x(2, 0).pow(2)).unwrap();
        let expect = (&x(2, 0).pow(2) + &x(2, 1).pow(2)).scale(&Scalar::from_frac(1, 2));
        assert_eq!(r, expect);
    }

    #[test]
    fn gram_preserved_and_q_anti_invariant() {
        for t in ["A2", "B3", "G2", "I2(5)", "I2(8)", "H3"] {
            let kind: CoxeterType = t.parse().unwrap();
            let (g, a) = build_type(kind).unwrap();
            let gram = &g.datum().gram;
            for w in g.elements() {
                assert_eq!(&mat_mul(&mat_mul(&transpose(w), gram), w), gram, "{t}");
            }
            let forms = form_set(&a);
            for &ri in g.reflection_indices() {
                let s = g.element(ri);
                let image = ReflectionGroup::act(s, a.defining_polynomial()).unwrap();
                assert_eq!(image, -a.defining_polynomial().clone(), "{t}");
                assert_eq!(ReflectionGroup::determinant(s), Scalar::from_int(-1));
                for f in &forms {
                    assert!(forms.contains(&transform_form(s, f)));
                }
            }
        }
    }

    #[test]
    fn per_orbit_multiplicity() {
        let (_, a) = build_type(CoxeterType::B(2)).unwrap();
        let m = Multiplicity::per_orbit(&a, &[1, 0]).unwrap();
        assert_eq!(m.total(), 2);
        assert!(Multiplicity::per_orbit(&a, &[1]).is_err());
        let m2 = Multiplicity::from_orbit_lists(&a, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(m, m2);
        assert_eq!(m.shifted(2).total(), 10);
    }
}
