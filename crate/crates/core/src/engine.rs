//! Invariants of the minimal resolution of `S/G`.
//!
//! `c₁²` comes from the ramification formula plus the discrepancy
//! corrections, `c₂` from the stratified Euler number plus the exceptional
//! components, and `q`, `p_g` from Burnside averages on `V` and `Λ²V`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclotomic::{exterior_square_trace, invariant_dimension, trace_character};
use crate::error::{Error, Result};
use crate::hj::{k2_correction, CyclicSing};
use crate::linalg::Matrix;
use crate::scalar::{as_i64, fmt_rat, rat, Rat};
use crate::scenario::{Annotations, QuotientScenario, Stratum, EULER_S, K_S_SQUARED};

/// `(e(S) + Σ (n−1) e(S_n)) / |G|`, required to be an integer.
pub fn euler_from_strata(group_order: u64, strata: &[Stratum]) -> Result<i64> {
    let total = strata.iter().fold(rat(EULER_S), |acc, s| {
        acc + rat((s.order as i64 - 1) * s.euler)
    });
    let e = total / rat(group_order as i64);
    as_i64(&e).ok_or_else(|| Error::NonIntegralEuler(fmt_rat(&e)))
}

pub fn euler_quotient(s: &QuotientScenario) -> Result<i64> {
    euler_from_strata(s.group_order() as u64, &s.strata)
}

/// Total length of the resolution chains.
pub fn exceptional_component_count(sings: &[(CyclicSing, u64)]) -> u64 {
    sings.iter().map(|(s, c)| s.chain().len() as u64 * c).sum()
}

/// `K²_{S/G} = (K_S − Σ (|H_R|−1) R)² / |G|`.
pub fn k2_quotient(s: &QuotientScenario) -> Result<Rat> {
    let r = &s.ramification;
    let n = r.len() + 1;
    let mut gram = Matrix::<Rat>::zeros(n, n);
    gram[(0, 0)] = rat(K_S_SQUARED);
    for (i, c) in r.iter().enumerate() {
        gram[(0, i + 1)] = c.k_degree.clone();
        gram[(i + 1, 0)] = c.k_degree.clone();
        gram[(i + 1, i + 1)] = c.self_intersection.clone();
        for j in i + 1..r.len() {
            let v = s
                .ramification_pairs
                .get(&(i, j))
                .ok_or_else(|| Error::MissingIntersection(format!("{}·{}", c.name, r[j].name)))?;
            gram[(i + 1, j + 1)] = v.clone();
            gram[(j + 1, i + 1)] = v.clone();
        }
    }
    let mut v = vec![rat(1)];
    v.extend(r.iter().map(|c| -rat(c.index as i64 - 1)));
    Ok(gram.quadratic_form(&v)? / rat(s.group_order() as i64))
}

/// `dim H⁰(Ω_S)^G`.
pub fn irregularity(s: &QuotientScenario) -> Result<u64> {
    invariant_dimension(&s.group, trace_character)
}

/// `dim H⁰(ω_S)^G`, using `H⁰(ω_S) ≅ Λ²H⁰(Ω_S)`.
pub fn geometric_genus(s: &QuotientScenario) -> Result<u64> {
    invariant_dimension(&s.group, exterior_square_trace)
}

/// Genus `g'` with `2g_F − 2 = d(2g' − 2) + r`.
pub fn albanese_fiber_genus(fiber_genus: u64, degree: u64, ramification: u64) -> Result<u64> {
    let lhs = 2 * fiber_genus as i64 - 2 - ramification as i64;
    let g = (rat(lhs) / rat(degree as i64) + rat(2)) / rat(2);
    match as_i64(&g) {
        Some(v) if v >= 0 => Ok(v as u64),
        _ => Err(Error::NonIntegralGenus(fmt_rat(&g))),
    }
}

/// One computed row, plus the intermediate quantities it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub label: String,
    pub name: String,
    pub group_order: usize,
    pub c1_squared: i64,
    pub c2: i64,
    pub q: u64,
    pub pg: u64,
    pub chi: i64,
    pub h11: i64,
    pub fiber_genus: Option<u64>,
    pub singularities: Vec<(CyclicSing, u64)>,
    pub noether_ok: bool,
    pub flags: Vec<String>,
    pub k2_quotient: Rat,
    pub k2_corrections: Rat,
    pub euler_quotient: i64,
    pub exceptional_components: u64,
    pub citation: String,
    pub annotations: Option<Annotations>,
}

/// Merge equal types and sort by `(n, q)`.
pub fn normalize_singularities(sings: &[(CyclicSing, u64)]) -> Vec<(CyclicSing, u64)> {
    let mut m = BTreeMap::new();
    for (s, c) in sings {
        *m.entry((s.n(), s.q())).or_insert(0) += c;
    }
    m.into_iter()
        .map(|((n, q), c)| (CyclicSing::new(n, q).expect("valid"), c))
        .collect()
}

/// `27A_1`, `6A_1+A_3`; empty when smooth.
pub fn singularity_summary(sings: &[(CyclicSing, u64)]) -> String {
    normalize_singularities(sings)
        .iter()
        .map(|(s, c)| {
            if *c == 1 {
                s.to_string()
            } else {
                format!("{c}{s}")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn integral(name: &str, x: &Rat) -> Result<i64> {
    as_i64(x).ok_or_else(|| Error::NonIntegralInvariant {
        name: name.into(),
        value: fmt_rat(x),
    })
}

/// All invariants with the Noether cross-check.
pub fn full_report(s: &QuotientScenario) -> Result<InvariantReport> {
    let k2q = k2_quotient(s)?;
    let corrections = s.singularities.iter().fold(Rat::zero(), |acc, (sing, c)| {
        acc + k2_correction(sing) * Rat::from_integer(BigInt::from(*c))
    });
    let c1_squared = integral("c1^2", &(&k2q + &corrections))?;
    let euler = euler_quotient(s)?;
    let exceptional = exceptional_component_count(&s.singularities);
    let c2 = euler + exceptional as i64;
    let q = irregularity(s)?;
    let pg = geometric_genus(s)?;
    let chi = 1 - q as i64 + pg as i64;
    let h11 = c2 - 2 + 4 * q as i64 - 2 * pg as i64;
    let fiber_genus = match &s.fibration {
        Some(f) => Some(albanese_fiber_genus(
            f.fiber_genus,
            f.degree,
            f.ramification,
        )?),
        None => None,
    };
    let noether_ok = 12 * chi == c1_squared + c2;
    let mut flags = Vec::new();
    if !noether_ok {
        flags.push(format!(
            "Noether violated: 12χ = {} but c1^2 + c2 = {}",
            12 * chi,
            c1_squared + c2
        ));
    }
    if fiber_genus.is_some() && q != 1 {
        flags.push(format!("fibration data given but q = {q}"));
    }
    Ok(InvariantReport {
        label: s.label.clone(),
        name: s.name.clone(),
        group_order: s.group_order(),
        c1_squared,
        c2,
        q,
        pg,
        chi,
        h11,
        fiber_genus,
        singularities: normalize_singularities(&s.singularities),
        noether_ok,
        flags,
        k2_quotient: k2q,
        k2_corrections: corrections,
        euler_quotient: euler,
        exceptional_components: exceptional,
        citation: s.citation.clone(),
        annotations: s.annotations.clone(),
    })
}
