//! Scenario files: one quotient case per JSON document, with validation.
//!
//! Intersection numbers may be written as JSON integers or as `"p/q"`
//! strings. Every numeric block carries a `cite` string pointing at the
//! statement it was transcribed from.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize};

use crate::cyclotomic::{diag_roots, group_closure, CycNum, FiniteMatrixGroup, DEFAULT_BOUND};
use crate::engine::{albanese_fiber_genus, euler_from_strata};
use crate::hj::{sing_from_eigenvalues, CyclicSing};
use crate::linalg::Matrix;
use crate::scalar::{fmt_rat, parse_rat, Rat};
use crate::CycMatrix;

pub const SCHEMA_VERSION: u32 = 1;

/// Fixed invariants of the Fano surface `S`.
pub const K_S_SQUARED: i64 = 45;
pub const EULER_S: i64 = 27;
pub const DIM_H0_OMEGA: usize = 5;

/// A rational written as a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq)]
pub struct RatValue(pub Rat);

impl<'de> Deserialize<'de> for RatValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(RatValue(crate::scalar::rat(n))),
            Raw::Str(s) => parse_rat(&s)
                .map(RatValue)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid rational {s:?}"))),
        }
    }
}

impl Serialize for RatValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(&self.0))
    }
}

/// Matrix entry: an integer or the coefficient list of a polynomial in `ζ_n`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Int(i64),
    Poly(Vec<i64>),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub conductor: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag_powers: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<EntrySpec>>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub order: u64,
    pub euler: i64,
    pub description: String,
    pub cite: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RamificationSpec {
    pub name: String,
    pub index: u64,
    pub self_intersection: RatValue,
    pub k_degree: RatValue,
    pub cite: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionSpec {
    pub a: String,
    pub b: String,
    pub value: RatValue,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TangentSpec {
    pub order: u64,
    pub exponents: [i64; 2],
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SingularitySpec {
    pub n: u64,
    pub q: u64,
    pub count: u64,
    #[serde(default)]
    pub tangent: Vec<TangentSpec>,
    pub cite: String,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationSpec {
    pub fiber_genus: u64,
    pub degree: u64,
    pub ramification: u64,
    pub cite: String,
}

/// Catalog assertions carried through unverified.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Annotations {
    pub minimal: bool,
    pub kodaira: String,
    pub cite: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RationalityCase {
    Klein,
    Xv,
}

/// Raw scenario document.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: u32,
    pub label: String,
    pub name: String,
    #[serde(default)]
    pub table: Option<u32>,
    #[serde(default)]
    pub row: Option<u32>,
    #[serde(default)]
    pub order_column: Option<String>,
    pub group_order: u64,
    pub citation: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub strata: Vec<StratumSpec>,
    #[serde(default)]
    pub ramification: Vec<RamificationSpec>,
    #[serde(default)]
    pub ramification_intersections: Vec<IntersectionSpec>,
    #[serde(default)]
    pub singularities: Vec<SingularitySpec>,
    #[serde(default)]
    pub fibration: Option<FibrationSpec>,
    #[serde(default)]
    pub annotations: Option<Annotations>,
    #[serde(default)]
    pub rationality_case: Option<RationalityCase>,
}

/// One validation problem, located by a JSON field path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stratum {
    pub order: u64,
    pub euler: i64,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamificationCurve {
    pub name: String,
    pub index: u64,
    pub self_intersection: Rat,
    pub k_degree: Rat,
}

/// Validated scenario.
#[derive(Clone, Debug)]
pub struct QuotientScenario {
    pub label: String,
    pub name: String,
    pub table: Option<u32>,
    pub row: Option<u32>,
    pub order_column: Option<String>,
    pub citation: String,
    pub group: FiniteMatrixGroup,
    pub strata: Vec<Stratum>,
    pub ramification: Vec<RamificationCurve>,
    /// Cross intersections keyed by the ordered pair of indices `(i, j)`, `i < j`.
    pub ramification_pairs: BTreeMap<(usize, usize), Rat>,
    pub singularities: Vec<(CyclicSing, u64)>,
    pub fibration: Option<FibrationSpec>,
    pub annotations: Option<Annotations>,
    pub rationality_case: Option<RationalityCase>,
}

impl QuotientScenario {
    pub fn group_order(&self) -> usize {
        self.group.order()
    }
}

fn diag(path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        path: path.into(),
        message: message.into(),
    }
}

/// Parse and validate a scenario document.
pub fn parse_scenario(text: &str) -> Result<QuotientScenario, Vec<Diagnostic>> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| vec![diag("$", format!("schema: {e}"))])?;
    validate_scenario(&file)
}

fn build_generator(g: &GeneratorSpec, path: &str, out: &mut Vec<Diagnostic>) -> Option<CycMatrix> {
    if g.conductor == 0 {
        out.push(diag(
            format!("{path}.conductor"),
            "conductor must be positive",
        ));
        return None;
    }
    match (&g.diag_powers, &g.rows) {
        (Some(p), None) => {
            if p.len() != DIM_H0_OMEGA {
                out.push(diag(
                    format!("{path}.diag_powers"),
                    format!("expected {DIM_H0_OMEGA} exponents"),
                ));
                return None;
            }
            Some(diag_roots(g.conductor, p))
        }
        (None, Some(rows)) => {
            if rows.len() != DIM_H0_OMEGA || rows.iter().any(|r| r.len() != DIM_H0_OMEGA) {
                out.push(diag(
                    format!("{path}.rows"),
                    format!("expected a {DIM_H0_OMEGA}x{DIM_H0_OMEGA} matrix"),
                ));
                return None;
            }
            let entries = rows
                .iter()
                .flatten()
                .map(|e| match e {
                    EntrySpec::Int(k) => CycNum::integer(*k),
                    EntrySpec::Poly(c) => CycNum::from_poly(
                        g.conductor,
                        c.iter().map(|&x| crate::scalar::rat(x)).collect(),
                    ),
                })
                .collect();
            Matrix::new(DIM_H0_OMEGA, DIM_H0_OMEGA, entries).ok()
        }
        _ => {
            out.push(diag(
                path,
                "exactly one of diag_powers and rows is required",
            ));
            None
        }
    }
}

/// Schema and semantic checks; returns every problem found.
pub fn validate_scenario(file: &ScenarioFile) -> Result<QuotientScenario, Vec<Diagnostic>> {
    let mut out = Vec::new();
    if file.schema != SCHEMA_VERSION {
        out.push(diag(
            "schema",
            format!("unsupported schema version {}", file.schema),
        ));
    }
    if file.label.trim().is_empty() {
        out.push(diag("label", "empty label"));
    }
    let order = file.group_order;
    if order == 0 {
        out.push(diag("group_order", "group order must be positive"));
    }
    if file.generators.is_empty() {
        out.push(diag("generators", "at least one generator is required"));
    }

    let mut gens = Vec::new();
    for (i, g) in file.generators.iter().enumerate() {
        if let Some(m) = build_generator(g, &format!("generators[{i}]"), &mut out) {
            gens.push(m);
        }
    }
    let group = if gens.len() == file.generators.len() && !gens.is_empty() {
        match group_closure(&gens, DEFAULT_BOUND) {
            Ok(g) => {
                if g.order() as u64 != order {
                    out.push(diag(
                        "generators",
                        format!("generated group has order {}, expected {order}", g.order()),
                    ));
                }
                Some(g)
            }
            Err(e) => {
                out.push(diag("generators", e.to_string()));
                None
            }
        }
    } else {
        None
    };

    let mut strata = Vec::new();
    for (i, s) in file.strata.iter().enumerate() {
        let p = format!("strata[{i}]");
        if s.order < 2 {
            out.push(diag(
                format!("{p}.order"),
                "stabilizer order must be at least 2",
            ));
        } else if order > 0 && order % s.order != 0 {
            out.push(diag(
                format!("{p}.order"),
                format!("{} does not divide |G| = {order}", s.order),
            ));
        }
        if s.cite.trim().is_empty() {
            out.push(diag(format!("{p}.cite"), "missing citation"));
        }
        strata.push(Stratum {
            order: s.order,
            euler: s.euler,
            description: s.description.clone(),
        });
    }
    if order > 0 {
        if let Err(e) = euler_from_strata(order, &strata) {
            out.push(diag("strata", format!("NonIntegralEuler: {e}")));
        }
    }

    let mut ramification = Vec::new();
    let mut names = BTreeSet::new();
    for (i, r) in file.ramification.iter().enumerate() {
        let p = format!("ramification[{i}]");
        if !names.insert(r.name.clone()) {
            out.push(diag(
                format!("{p}.name"),
                format!("duplicate curve {}", r.name),
            ));
        }
        if r.index < 2 {
            out.push(diag(
                format!("{p}.index"),
                "ramification index must be at least 2",
            ));
        } else if order > 0 && order % r.index != 0 {
            out.push(diag(
                format!("{p}.index"),
                format!("{} does not divide |G| = {order}", r.index),
            ));
        }
        if r.cite.trim().is_empty() {
            out.push(diag(format!("{p}.cite"), "missing citation"));
        }
        ramification.push(RamificationCurve {
            name: r.name.clone(),
            index: r.index,
            self_intersection: r.self_intersection.0.clone(),
            k_degree: r.k_degree.0.clone(),
        });
    }
    let mut pairs = BTreeMap::new();
    for (i, x) in file.ramification_intersections.iter().enumerate() {
        let p = format!("ramification_intersections[{i}]");
        let ia = ramification.iter().position(|r| r.name == x.a);
        let ib = ramification.iter().position(|r| r.name == x.b);
        match (ia, ib) {
            (Some(a), Some(b)) if a != b => {
                let key = (a.min(b), a.max(b));
                if let Some(prev) = pairs.insert(key, x.value.0.clone()) {
                    if prev != x.value.0 {
                        out.push(diag(p, format!("asymmetric value for ({}, {})", x.a, x.b)));
                    }
                }
            }
            (Some(_), Some(_)) => out.push(diag(
                p,
                "self-intersections belong in ramification[].self_intersection",
            )),
            _ => out.push(diag(p, format!("unknown curve in pair ({}, {})", x.a, x.b))),
        }
    }

    let mut singularities = Vec::new();
    for (i, s) in file.singularities.iter().enumerate() {
        let p = format!("singularities[{i}]");
        if s.count == 0 {
            out.push(diag(format!("{p}.count"), "count must be positive"));
        }
        if s.cite.trim().is_empty() {
            out.push(diag(format!("{p}.cite"), "missing citation"));
        }
        match CyclicSing::new(s.n, s.q) {
            Ok(sing) => {
                if order > 0 && order % s.n != 0 {
                    out.push(diag(
                        format!("{p}.n"),
                        format!("{} does not divide |G| = {order}", s.n),
                    ));
                }
                for (j, t) in s.tangent.iter().enumerate() {
                    let tp = format!("{p}.tangent[{j}]");
                    match sing_from_eigenvalues(t.order, (t.exponents[0], t.exponents[1])) {
                        Ok(Some(found)) if found == sing => {}
                        Ok(Some(found)) => out.push(diag(
                            tp,
                            format!("tangent action gives {found}, not {sing}"),
                        )),
                        Ok(None) => out.push(diag(tp, "tangent action gives a smooth point")),
                        Err(e) => out.push(diag(tp, e.to_string())),
                    }
                }
                singularities.push((sing, s.count));
            }
            Err(e) => out.push(diag(p, e.to_string())),
        }
    }

    if let Some(f) = &file.fibration {
        if let Err(e) = albanese_fiber_genus(f.fiber_genus, f.degree, f.ramification) {
            out.push(diag("fibration", e.to_string()));
        }
    }
    if let Some(a) = &file.annotations {
        if !["2", "1", "0", "-inf"].contains(&a.kodaira.as_str()) {
            out.push(diag(
                "annotations.kodaira",
                format!("unknown Kodaira dimension {:?}", a.kodaira),
            ));
        }
    }

    match group {
        Some(group) if out.is_empty() => Ok(QuotientScenario {
            label: file.label.clone(),
            name: file.name.clone(),
            table: file.table,
            row: file.row,
            order_column: file.order_column.clone(),
            citation: file.citation.clone(),
            group,
            strata,
            ramification,
            ramification_pairs: pairs,
            singularities,
            fibration: file.fibration.clone(),
            annotations: file.annotations.clone(),
            rationality_case: file.rationality_case,
        }),
        _ => Err(out),
    }
}
