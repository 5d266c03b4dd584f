//! JSON reports. Every number that is not a count is an exact string.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::basis::{BasisRequest, BasisResult};
use crate::certify::{Certificate, Verdict};
use crate::connection::CoxeterSystem;
use crate::derivation::Derivation;
use crate::group::{CoxeterType, Multiplicity};
use crate::poly::{Order, Polynomial};
use crate::scalar::Scalar;

pub const BASIS_SCHEMA: &str = "multicox/basis-report/1";
pub const INFO_SCHEMA: &str = "multicox/info-report/1";
pub const CERTIFY_SCHEMA: &str = "multicox/certify-report/1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HyperplaneEntry {
    pub index: usize,
    pub orbit: usize,
    /// Coefficients of the normalized root form `α_H`.
    pub alpha: Vec<Scalar>,
    pub text: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InvariantEntry {
    pub degrees: Vec<u32>,
    pub generators: Vec<String>,
    pub jacobian_scalar: Scalar,
    /// SHA-256 of the generators in canonical text form.
    pub fingerprint: String,
}

impl InvariantEntry {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let generators: Vec<String> = sys.invariants.generators().iter().map(Polynomial::to_string).collect();
        let mut hasher = Sha256::new();
        hasher.update(sys.kind().to_string().as_bytes());
        for g in &generators {
            hasher.update(b"\n");
            hasher.update(g.as_bytes());
        }
        let fingerprint = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        InvariantEntry {
            degrees: sys.invariants.degrees().to_vec(),
            generators,
            jacobian_scalar: sys.invariants.jacobian_scalar().clone(),
            fingerprint,
        }
    }
}

pub fn hyperplane_entries(sys: &CoxeterSystem) -> Vec<HyperplaneEntry> {
    sys.arrangement
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(index, h)| HyperplaneEntry {
            index,
            orbit: h.orbit,
            alpha: h.form.clone(),
            text: h.alpha.to_string(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldEntry {
    pub degree: Option<u32>,
    pub text: String,
    pub field: Derivation,
}

impl From<&Derivation> for FieldEntry {
    fn from(d: &Derivation) -> Self {
        FieldEntry {
            degree: d.degree(),
            text: d.to_string(),
            field: d.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateEntry {
    pub multiplicity: Vec<u32>,
    pub contact_orders: Vec<Vec<Order>>,
    pub membership: bool,
    pub degrees: Vec<Option<u32>>,
    pub degree_sum: Option<u32>,
    pub multiplicity_total: u32,
    pub determinant: String,
    pub determinant_scalar: Option<Scalar>,
    pub verdict: String,
    pub verdict_detail: serde_json::Value,
}

impl From<&Certificate> for CertificateEntry {
    fn from(c: &Certificate) -> Self {
        CertificateEntry {
            multiplicity: c.multiplicity.clone(),
            contact_orders: c.contact_orders.clone(),
            membership: c.membership,
            degrees: c.degrees.clone(),
            degree_sum: c.degree_sum,
            multiplicity_total: c.multiplicity_total,
            determinant: c.determinant.to_string(),
            determinant_scalar: c.determinant_scalar.clone(),
            verdict: c.verdict.label().to_string(),
            verdict_detail: serde_json::to_value(&c.verdict).expect("verdict serializes"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisInput {
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub rank: usize,
    pub k: u32,
    pub base_multiplicity: Vec<u32>,
    pub base_source: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisReport {
    pub schema: String,
    pub input: BasisInput,
    pub coxeter_number: u32,
    pub invariants: InvariantEntry,
    pub hyperplanes: Vec<HyperplaneEntry>,
    pub universal_field: FieldEntry,
    pub base: Vec<FieldEntry>,
    pub members: Vec<FieldEntry>,
    pub expected_degree_sum: u32,
    pub degree_law: bool,
    pub certificate: CertificateEntry,
}

impl BasisReport {
    pub fn new(sys: &CoxeterSystem, req: &BasisRequest, res: &BasisResult) -> Self {
        BasisReport {
            schema: BASIS_SCHEMA.into(),
            input: BasisInput {
                kind: sys.kind(),
                rank: sys.rank(),
                k: req.k,
                base_multiplicity: req.base_multiplicity.values().to_vec(),
                base_source: req.source.label().into(),
            },
            coxeter_number: sys.coxeter_number(),
            invariants: InvariantEntry::new(sys),
            hyperplanes: hyperplane_entries(sys),
            universal_field: (&res.universal_field).into(),
            base: res.base.iter().map(FieldEntry::from).collect(),
            members: res.members.iter().map(FieldEntry::from).collect(),
            expected_degree_sum: res.expected_degree_sum,
            degree_law: res.degree_law,
            certificate: (&res.certificate).into(),
        }
    }

    pub fn member_fields(&self) -> Vec<Derivation> {
        self.members.iter().map(|m| m.field.clone()).collect()
    }

    pub fn is_free(&self) -> bool {
        self.certificate.verdict == Verdict::FreeWithBasis.label()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertifyReport {
    pub schema: String,
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub members: Vec<FieldEntry>,
    pub certificate: CertificateEntry,
}

impl CertifyReport {
    pub fn new(sys: &CoxeterSystem, members: &[Derivation], cert: &Certificate) -> Self {
        CertifyReport {
            schema: CERTIFY_SCHEMA.into(),
            kind: sys.kind(),
            members: members.iter().map(FieldEntry::from).collect(),
            certificate: cert.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OrbitEntry {
    pub size: usize,
    pub hyperplanes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureChecks {
    /// `|𝒜| = hℓ/2`.
    pub hyperplane_count: bool,
    /// `d_{ℓ−1} < h`.
    pub degree_gap: bool,
    /// `J = c·Q` with `c ≠ 0`.
    pub jacobian: bool,
    pub group_order: bool,
}

impl StructureChecks {
    pub fn all(&self) -> bool {
        self.hyperplane_count && self.degree_gap && self.jacobian && self.group_order
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InfoReport {
    pub schema: String,
    #[serde(rename = "type")]
    pub kind: CoxeterType,
    pub rank: usize,
    pub order: usize,
    pub hyperplane_count: usize,
    pub coxeter_number: u32,
    pub degrees: Vec<u32>,
    pub exponents: Vec<u32>,
    pub orbits: Vec<OrbitEntry>,
    pub gram: Vec<Vec<Scalar>>,
    pub hyperplanes: Vec<HyperplaneEntry>,
    pub invariants: InvariantEntry,
    pub checks: StructureChecks,
}

impl InfoReport {
    pub fn new(sys: &CoxeterSystem) -> Self {
        let n = sys.rank();
        let h = sys.coxeter_number();
        let degrees = sys.invariants.degrees().to_vec();
        let q = sys.arrangement.defining_polynomial();
        let jacobian_ok = {
            let c = sys.invariants.jacobian_scalar();
            !c.is_zero() && *sys.invariants.jacobian() == q.scale(c)
        };
        let checks = StructureChecks {
            hyperplane_count: 2 * sys.arrangement.len() == h as usize * n,
            degree_gap: n < 2 || degrees[n - 2] < h,
            jacobian: jacobian_ok,
            group_order: sys.group.order() == sys.kind().expected_order(),
        };
        InfoReport {
            schema: INFO_SCHEMA.into(),
            kind: sys.kind(),
            rank: n,
            order: sys.group.order(),
            hyperplane_count: sys.arrangement.len(),
            coxeter_number: h,
            exponents: sys.invariants.exponents(),
            degrees,
            orbits: sys
                .arrangement
                .orbits()
                .iter()
                .map(|o| OrbitEntry {
                    size: o.len(),
                    hyperplanes: o.clone(),
                })
                .collect(),
            gram: sys.group.datum().gram.clone(),
            hyperplanes: hyperplane_entries(sys),
            invariants: InvariantEntry::new(sys),
            checks,
        }
    }

    pub fn render_text(&self) -> String {
        let sizes: Vec<String> = self.orbits.iter().map(|o| o.size.to_string()).collect();
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let mut out = format!(
            "type {}\n|W|={}\n|A|={}\nh={}\ndegrees {}\nexponents {}\norbits: {}\n",
            self.kind,
            self.order,
            self.hyperplane_count,
            self.coxeter_number,
            join(&self.degrees),
            join(&self.exponents),
            sizes.join("x"),
        );
        for h in &self.hyperplanes {
            out.push_str(&format!("  H{} orbit {}: {}\n", h.index, h.orbit, h.text));
        }
        for (i, g) in self.invariants.generators.iter().enumerate() {
            out.push_str(&format!("P{} = {}\n", i + 1, g));
        }
        out.push_str(&format!("J = c*Q, c = {}\n", self.invariants.jacobian_scalar));
        out.push_str(&format!(
            "checks: |A|=hl/2 {}, d_(l-1)<h {}, J=cQ {}, |W| {}\n",
            ok(self.checks.hyperplane_count),
            ok(self.checks.degree_gap),
            ok(self.checks.jacobian),
            ok(self.checks.group_order)
        ));
        out
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

impl BasisReport {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "type {} k={} base={} m~={:?}\n",
            self.input.kind, self.input.k, self.input.base_source, self.input.base_multiplicity
        );
        out.push_str(&format!("universal field: {}\n", self.universal_field.text));
        for (i, m) in self.members.iter().enumerate() {
            out.push_str(&format!("member {} (degree {}): {}\n", i, fmt_deg(m.degree), m.text));
        }
        out.push_str("contact orders:\n");
        for (i, row) in self.certificate.contact_orders.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(Order::to_string).collect();
            out.push_str(&format!("  member {}: {}\n", i, cells.join(" ")));
        }
        out.push_str(&format!(
            "degree sum {} expected {}\n",
            fmt_deg(self.certificate.degree_sum),
            self.expected_degree_sum
        ));
        if let Some(c) = &self.certificate.determinant_scalar {
            out.push_str(&format!("det = {c} * prod alpha_H^m(H)\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.certificate.verdict));
        out
    }
}

fn fmt_deg(d: Option<u32>) -> String {
    d.map_or_else(|| "-".into(), |d| d.to_string())
}

/// Multiplicity file contents: one entry per orbit, either a single value for
/// the whole orbit or a list in canonical within-orbit order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MultiplicityFile {
    pub orbits: Vec<OrbitValues>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OrbitValues {
    Uniform(u32),
    PerHyperplane(Vec<u32>),
}

impl MultiplicityFile {
    pub fn resolve(&self, sys: &CoxeterSystem) -> crate::Result<Multiplicity> {
        let arr = &sys.arrangement;
        if self.orbits.len() != arr.orbits().len() {
            return Err(crate::Error::Multiplicity(format!(
                "{} orbit entries given, arrangement has {} orbits",
                self.orbits.len(),
                arr.orbits().len()
            )));
        }
        let lists: Vec<Vec<u32>> = self
            .orbits
            .iter()
            .zip(arr.orbits())
            .map(|(v, o)| match v {
                OrbitValues::Uniform(m) => vec![*m; o.len()],
                OrbitValues::PerHyperplane(l) => l.clone(),
            })
            .collect();
        Multiplicity::from_orbit_lists(arr, &lists)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;

    #[test]
    fn basis_report_round_trips() {
        let sys = CoxeterSystem::new("B2".parse().unwrap()).unwrap();
        let m = Multiplicity::constant(&sys.arrangement, 1);
        let req = BasisRequest::automatic(&sys, m, 1).unwrap();
        let res = build_basis(&sys, &req).unwrap();
        let rep = BasisReport::new(&sys, &req, &res);
        let text = serde_json::to_string_pretty(&rep).unwrap();
        assert!(!text.contains('.'), "no floats in the report");
        let back: BasisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(back.member_fields(), res.members);
        assert!(back.is_free());
    }

    #[test]
    fn info_examples() {
        let a2 = InfoReport::new(&CoxeterSystem::new("A2".parse().unwrap()).unwrap());
        assert_eq!((a2.order, a2.hyperplane_count, a2.coxeter_number), (6, 3, 3));
        assert_eq!(a2.exponents, vec![1, 2]);
        assert!(a2.checks.all());
        let b2 = InfoReport::new(&CoxeterSystem::new("B2".parse().unwrap()).unwrap());
        assert_eq!(b2.orbits.iter().map(|o| o.size).collect::<Vec<_>>(), vec![2, 2]);
        assert!(b2.render_text().contains("orbits: 2x2"));
    }

    #[test]
    fn multiplicity_file_forms() {
        let sys = CoxeterSystem::new("B2".parse().unwrap()).unwrap();
        let f: MultiplicityFile = serde_json::from_str(r#"{"orbits": [[1, 1], 0]}"#).unwrap();
        let m = f.resolve(&sys).unwrap();
        assert_eq!(m.total(), 2);
        let bad: MultiplicityFile = serde_json::from_str(r#"{"orbits": [1]}"#).unwrap();
        assert!(bad.resolve(&sys).is_err());
    }
}
