//! The two rationality arguments: the order-11 (Klein) quotient and the
//! order-15 quotient.
//!
//! For the Klein case the strict-transform coefficients of the curves `D̄_ij`
//! are pinned down by two rounds of integrality constraints; the resulting
//! configurations, and the five-curve configuration of the order-15 case, are
//! then fed to the blow-down search.

use std::fmt::Write;

use num_traits::Signed;

use crate::blowdown::{find_rationality_certificate, CurveConfig, RationalityCertificate};
use crate::error::{Error, Result};
use crate::linalg::{qmatrix, Matrix};
use crate::mumford::ResolutionModel;
use crate::scalar::{as_i64, fmt_rat, frac, rat, Rat};

/// Klein chain matrix: `A² = −3`, `B² = −4`, `A·B = 1`.
pub fn klein_m() -> Matrix<Rat> {
    qmatrix(&[&[-3, 1], &[1, -4]])
}

/// `−(a, b)·M / 11` when it is a nonnegative integer pair.
fn lattice_image(a: i64, b: i64) -> Option<(i64, i64)> {
    let (x, y) = (-(-3 * a + b), -(a - 4 * b));
    (x % 11 == 0 && y % 11 == 0 && x >= 0 && y >= 0).then_some((x / 11, y / 11))
}

/// Inverse of [`lattice_image`]: `(a, b) = (4u₁ + u₂, u₁ + 3u₂)`.
fn lattice_preimage((u1, u2): (i64, i64)) -> (i64, i64) {
    (4 * u1 + u2, u1 + 3 * u2)
}

/// Search bound for every coordinate, ten times the budget.
pub const STAGE_BUDGET: i64 = 5;

/// All `(a₁₄, b₁₄, u₁, u₂)` with `a₁₄u₁ + b₁₄u₂ = budget`, where `(a₁₄, b₁₄)`
/// and `(a₂₃, b₂₃) = (4u₁+u₂, u₁+3u₂)` are positive lattice points.
pub fn klein_stage1_with_budget(budget: i64) -> Vec<(i64, i64, i64, i64)> {
    let bound = 10 * budget.max(1);
    let mut out = Vec::new();
    for a in 1..=bound {
        for b in 1..=bound {
            if lattice_image(a, b).is_none() {
                continue;
            }
            for u1 in 0..=bound {
                for u2 in 0..=bound {
                    let (a23, b23) = lattice_preimage((u1, u2));
                    if a23 > 0 && b23 > 0 && a * u1 + b * u2 == budget {
                        out.push((a, b, u1, u2));
                    }
                }
            }
        }
    }
    assert!(
        out.iter()
            .all(|&(a, b, u1, u2)| a < bound && b < bound && u1 < bound && u2 < bound),
        "stage 1 solution on the search boundary"
    );
    out
}

pub fn klein_stage1() -> Vec<(i64, i64, i64, i64)> {
    klein_stage1_with_budget(STAGE_BUDGET)
}

/// Outcome of the second round of constraints.
#[derive(Clone, Debug, PartialEq)]
pub struct KleinStage2 {
    /// Candidate `(a₁₄, b₁₄, a₂₃, b₂₃)` from stage 1.
    pub options: Vec<(i64, i64, i64, i64)>,
    /// Distinct `(w₁, w₂)` with `(a₁₄+a₂₃, b₁₄+b₂₃)M = −11(w₁, w₂)`.
    pub w_candidates: Vec<(i64, i64)>,
    /// For each `w`, the nonnegative `(a₁₃, b₁₃)` with `a₁₃w₁ + b₁₃w₂ = 5`.
    pub budget_solutions: Vec<((i64, i64), Vec<(i64, i64)>)>,
    pub a13_b13: (i64, i64),
    pub w: (i64, i64),
    pub survivors: Vec<(i64, i64, i64, i64)>,
}

pub fn klein_stage2(stage1: &[(i64, i64, i64, i64)]) -> Result<KleinStage2> {
    let options: Vec<_> = stage1
        .iter()
        .map(|&(a14, b14, u1, u2)| {
            let (a23, b23) = lattice_preimage((u1, u2));
            (a14, b14, a23, b23)
        })
        .collect();
    let w_of = |&(a14, b14, a23, b23): &(i64, i64, i64, i64)| lattice_image(a14 + a23, b14 + b23);
    let mut w_candidates = Vec::new();
    for o in &options {
        let w = w_of(o).ok_or(Error::IntegralityViolation(format!(
            "D̄13·D̄14 for option {o:?}"
        )))?;
        if !w_candidates.contains(&w) {
            w_candidates.push(w);
        }
    }
    let mut budget_solutions = Vec::new();
    let mut found = Vec::new();
    for &w in &w_candidates {
        let mut sols = Vec::new();
        for a in 0..=STAGE_BUDGET {
            for b in 0..=STAGE_BUDGET {
                if a * w.0 + b * w.1 == STAGE_BUDGET {
                    sols.push((a, b));
                }
            }
        }
        for &(a, b) in &sols {
            // D̄13·A13 and D̄13·B13 must be nonnegative integers.
            if a > 0 && b > 0 && lattice_image(a, b).is_some() {
                found.push(((a, b), w));
            }
        }
        budget_solutions.push((w, sols));
    }
    let &[(a13_b13, w)] = found.as_slice() else {
        return Err(Error::NoSolution);
    };
    let survivors = options
        .iter()
        .copied()
        .filter(|o| w_of(o) == Some(w))
        .collect();
    Ok(KleinStage2 {
        options,
        w_candidates,
        budget_solutions,
        a13_b13,
        w,
        survivors,
    })
}

/// The two surviving coefficient choices `(a₁₄, b₁₄, a₂₃, b₂₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KleinOption {
    /// `(4, 1, 5, 4)`.
    One,
    /// `(5, 4, 4, 1)`.
    Two,
}

impl KleinOption {
    pub fn coefficients(self) -> (i64, i64, i64, i64) {
        match self {
            KleinOption::One => (4, 1, 5, 4),
            KleinOption::Two => (5, 4, 4, 1),
        }
    }
}

/// The stable lines, in the order used for every Klein vector.
pub const KLEIN_PAIRS: [&str; 5] = ["13", "25", "14", "23", "45"];

/// `τ = (1,2,4,3,5)` on an index pair.
fn tau_pair(p: &str) -> String {
    let t = |c: char| match c {
        '1' => 2,
        '2' => 4,
        '4' => 3,
        '3' => 5,
        '5' => 1,
        _ => unreachable!("index outside 1..5"),
    };
    let mut v: Vec<u32> = p.chars().map(t).collect();
    v.sort();
    format!("{}{}", v[0], v[1])
}

/// For each `D_ij`, the three chains it passes through with the coefficient
/// slot used: 0 = `(a₁₃,b₁₃)`, 1 = `(a₂₃,b₂₃)`, 2 = `(a₁₄,b₁₄)`.
pub fn klein_slots() -> Vec<(String, [(String, usize); 3])> {
    let mut out = Vec::new();
    let mut cur = (
        "13".to_string(),
        [
            ("13".to_string(), 0),
            ("23".to_string(), 1),
            ("14".to_string(), 2),
        ],
    );
    for _ in 0..5 {
        out.push(cur.clone());
        let d = tau_pair(&cur.0);
        let s = cur.1.clone().map(|(c, k)| (tau_pair(&c), k));
        cur = (d, s);
    }
    out.sort_by_key(|(d, _)| KLEIN_PAIRS.iter().position(|p| p == d));
    out
}

fn d(p: &str) -> String {
    format!("D{p}")
}
fn a(p: &str) -> String {
    format!("A{p}")
}
fn b(p: &str) -> String {
    format!("B{p}")
}

/// Curve names of the Klein configuration in search order.
pub fn klein_curve_names() -> Vec<String> {
    let mut v: Vec<String> = KLEIN_PAIRS.iter().map(|p| d(p)).collect();
    for p in KLEIN_PAIRS {
        v.push(a(p));
        v.push(b(p));
    }
    v
}

/// Resolution model of `S/σ` for one coefficient choice.
pub fn klein_model(option: KleinOption) -> Result<ResolutionModel> {
    let (a14, b14, a23, b23) = option.coefficients();
    let coeffs = [(1, 3), (a23, b23), (a14, b14)];
    let mut m = ResolutionModel::new(frac(45, 11));
    for p in KLEIN_PAIRS {
        m.add_chain(p, &[3, 4], &[&a(p), &b(p)])?;
    }
    for p in KLEIN_PAIRS {
        m.add_curve(&d(p), frac(15, 11));
    }
    for p in KLEIN_PAIRS {
        for q in KLEIN_PAIRS {
            m.set_pair(&d(p), &d(q), frac(5, 11))?;
        }
    }
    for (dij, slots) in klein_slots() {
        for (chain, k) in slots {
            let (x, y) = coeffs[k];
            let (u1, u2) = lattice_image(x, y).ok_or_else(|| {
                Error::IntegralityViolation(format!("coefficients ({x},{y}) on chain {chain}"))
            })?;
            m.set_incidence(&d(&dij), &a(&chain), u1 as u64)?;
            m.set_incidence(&d(&dij), &b(&chain), u2 as u64)?;
        }
    }
    Ok(m)
}

fn expect_eq(what: &str, got: &Rat, want: i64) -> Result<()> {
    if *got != rat(want) {
        return Err(Error::MatrixMismatch(format!(
            "{what} = {}, expected {want}",
            fmt_rat(got)
        )));
    }
    Ok(())
}

fn check_distinct_integrality(c: &CurveConfig) -> Result<()> {
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            let v = &c.matrix()[(i, j)];
            if !v.is_integer() || v.is_negative() {
                return Err(Error::IntegralityViolation(format!(
                    "{}·{} = {}",
                    c.names()[i],
                    c.names()[j],
                    fmt_rat(v)
                )));
            }
        }
    }
    Ok(())
}

/// The 15-curve Klein configuration on `Z`, with every printed value checked.
pub fn build_klein_config(option: KleinOption, q: u64) -> Result<CurveConfig> {
    let model = klein_model(option)?;
    let names = klein_curve_names();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let c = model.curve_config(&refs, q)?;
    check_distinct_integrality(&c)?;
    for p in KLEIN_PAIRS {
        expect_eq(&format!("D̄{p}²"), &c.self_intersection(&d(p))?, -1)?;
        expect_eq(&format!("K·D̄{p}"), &c.k_degree(&d(p))?, -1)?;
        for q in KLEIN_PAIRS.iter().filter(|&&q| q != p) {
            expect_eq(&format!("D̄{p}·D̄{q}"), &c.dot(&d(p), &d(q))?, 0)?;
        }
    }
    if option == KleinOption::Two {
        for (curve, want) in [("A13", [0, 0, 1, 1, 0]), ("B13", [1, 0, 0, 1, 0])] {
            for (p, w) in KLEIN_PAIRS.iter().zip(want) {
                expect_eq(&format!("{curve}·D̄{p}"), &c.dot(curve, &d(p))?, w)?;
            }
        }
        for (x, y) in [
            ("D14", "A13"),
            ("D14", "A45"),
            ("D23", "A13"),
            ("D23", "A25"),
        ] {
            expect_eq(&format!("{x}·{y}"), &c.dot(x, y)?, 1)?;
        }
    }
    Ok(c)
}

/// Ten elliptic curves `E_ij`: `1` on disjoint index pairs, `0` on pairs
/// sharing one index, `−3` on the diagonal.
pub fn elliptic_lattice() -> (Vec<(u32, u32)>, Matrix<Rat>) {
    let mut idx = Vec::new();
    for i in 1..=5 {
        for j in i + 1..=5 {
            idx.push((i, j));
        }
    }
    let mut m = Matrix::zeros(10, 10);
    for (x, &(i, j)) in idx.iter().enumerate() {
        for (y, &(s, t)) in idx.iter().enumerate() {
            let mut set = vec![i, j, s, t];
            set.sort();
            set.dedup();
            m[(x, y)] = rat(match set.len() {
                4 => 1,
                3 => 0,
                _ => -3,
            });
        }
    }
    (idx, m)
}

/// Orbit sums `E₁ = E₁₂+E₂₃+E₃₄+E₄₅+E₁₅` and `E₂ = E₁₃+E₂₄+E₃₅+E₁₄+E₂₅`.
pub fn elliptic_orbits() -> (Rat, Rat, Rat) {
    let (idx, m) = elliptic_lattice();
    let vec_of = |pairs: &[(u32, u32)]| -> Vec<Rat> {
        idx.iter().map(|p| rat(pairs.contains(p) as i64)).collect()
    };
    let e1 = vec_of(&[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]);
    let e2 = vec_of(&[(1, 3), (2, 4), (3, 5), (1, 4), (2, 5)]);
    let q = |u: &[Rat], v: &[Rat]| m.bilinear(u, v).expect("10x10");
    (q(&e1, &e1), q(&e2, &e2), q(&e1, &e2))
}

/// The printed matrix on `(Ā, B̄, T_m, H̄, L̄)`.
pub fn xv_printed_matrix() -> Matrix<Rat> {
    qmatrix(&[
        &[-1, 0, 1, 0, 0],
        &[0, -1, 1, 0, 0],
        &[1, 1, -3, 1, 1],
        &[0, 0, 1, -2, 0],
        &[0, 0, 1, 0, -2],
    ])
}

pub const XV_CURVES: [&str; 5] = ["A", "B", "T_m", "H", "L"];

/// Resolution model of the order-15 quotient restricted to `A, B, H, L`.
pub fn xv_model() -> Result<ResolutionModel> {
    let (e1, e2, e12) = elliptic_orbits();
    expect_eq("E1²", &e1, -5)?;
    expect_eq("E2²", &e2, -5)?;
    expect_eq("E1·E2", &e12, 5)?;
    let order = rat(15);
    let (h2, l2, hl) = (&e1 / &order, &e2 / &order, &e12 / &order);
    // C² = 5 and C·E = 1 for an incidence divisor C and elliptic curve E.
    let c2 = rat(5) / &order;
    let ce = rat(5) / &order;
    let mut m = ResolutionModel::new(rat(45) / &order);
    m.add_chain("a", &[4, 4], &["T_a", "U_a"])?;
    m.add_chain("b", &[4, 4], &["T_b", "U_b"])?;
    for p in ["f", "g", "m", "n", "p"] {
        m.add_chain(p, &[3], &[&format!("T_{p}")])?;
    }
    // K_S = 3C, K_S·E = 3.
    m.add_curve("A", rat(15) / &order);
    m.add_curve("B", rat(15) / &order);
    m.add_curve("H", rat(15) / &order);
    m.add_curve("L", rat(15) / &order);
    m.set_pair("H", "H", h2)?;
    m.set_pair("L", "L", l2)?;
    m.set_pair("H", "L", hl)?;
    for (x, y) in [("A", "A"), ("B", "B"), ("A", "B")] {
        m.set_pair(x, y, c2.clone())?;
    }
    for x in ["A", "B"] {
        for y in ["H", "L"] {
            m.set_pair(x, y, ce.clone())?;
        }
    }
    for (curve, comp, mult) in [
        ("A", "T_a", 1),
        ("A", "U_a", 1),
        ("A", "T_g", 1),
        ("A", "T_m", 1),
        ("B", "T_b", 1),
        ("B", "U_b", 1),
        ("B", "T_f", 1),
        ("B", "T_m", 1),
        ("H", "T_m", 1),
        ("H", "T_n", 2),
        ("L", "T_m", 1),
        ("L", "T_p", 2),
    ] {
        m.set_incidence(curve, comp, mult)?;
    }
    Ok(m)
}

/// The five-curve configuration, checked against the printed matrix.
pub fn build_xv_config(q: u64) -> Result<CurveConfig> {
    let model = xv_model()?;
    let h = model.strict_transform_coeffs("H")?;
    let b = model.strict_transform_coeffs("B")?;
    if h[4] != vec![frac(1, 3)] || h[5] != vec![frac(2, 3)] || b[1] != vec![frac(1, 3), frac(1, 3)]
    {
        return Err(Error::MatrixMismatch(
            "strict transform coefficients".into(),
        ));
    }
    let c = model.curve_config(&XV_CURVES, q)?;
    if *c.matrix() != xv_printed_matrix() {
        return Err(Error::MatrixMismatch(format!("computed {:?}", c.matrix())));
    }
    for (name, k) in XV_CURVES.iter().zip([-1, -1, 1, 0, 0]) {
        expect_eq(&format!("K·{name}"), &c.k_degree(name)?, k)?;
        if c.genus(name)? != 0 {
            return Err(Error::MatrixMismatch(format!("{name} is not rational")));
        }
    }
    Ok(c)
}

/// `D̄₁₃·D̄₂₅ = (55 + (a₂₃, b₂₃) M (a₁₄, b₁₄)ᵀ) / 121`.
pub fn d13_d25(a14: i64, b14: i64, a23: i64, b23: i64) -> Rat {
    let m = klein_m();
    let v = m
        .bilinear(&[rat(a23), rat(b23)], &[rat(a14), rat(b14)])
        .expect("2x2");
    (rat(55) + v) / rat(121)
}

/// Which rationality argument to replay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalityTarget {
    Klein(KleinOption),
    Xv,
}

/// Certificates for every configuration of a catalog rationality case.
pub fn certify_case(
    case: crate::scenario::RationalityCase,
    q: u64,
) -> Result<Vec<RationalityCertificate>> {
    use crate::scenario::RationalityCase;
    match case {
        RationalityCase::Klein => [KleinOption::One, KleinOption::Two]
            .into_iter()
            .map(|o| certify_config(&build_klein_config(o, q)?))
            .collect(),
        RationalityCase::Xv => Ok(vec![certify_config(&build_xv_config(q)?)?]),
    }
}

/// Irregularity of the underlying quotient, from the built-in catalog.
pub fn catalog_irregularity(label: &str) -> Result<u64> {
    let s = crate::catalog::Catalog::builtin().get(label)?;
    crate::engine::irregularity(s)
}

pub fn build_config(target: RationalityTarget) -> Result<CurveConfig> {
    match target {
        RationalityTarget::Klein(o) => build_klein_config(o, catalog_irregularity("XI")?),
        RationalityTarget::Xv => build_xv_config(catalog_irregularity("XV")?),
    }
}

pub fn certify_rationality(target: RationalityTarget) -> Result<RationalityCertificate> {
    certify_config(&build_config(target)?)
}

/// Certificate for an arbitrary configuration, or `NoCertificate`.
pub fn certify_config(config: &CurveConfig) -> Result<RationalityCertificate> {
    let cert = find_rationality_certificate(config).ok_or(Error::NoCertificate)?;
    cert.verify(config)?;
    Ok(cert)
}

/// First state along a certificate where `A13` and `A45` are both (−1)-curves,
/// as (steps taken, A13·A45).
pub fn klein_a13_a45_state(
    start: &CurveConfig,
    cert: &RationalityCertificate,
) -> Result<Option<(usize, Rat)>> {
    let mut c = start.clone();
    for step in 0..=cert.contractions.len() {
        if step > 0 {
            c = c.contract(&cert.contractions[step - 1])?;
        }
        let minus = c.minus_one_curves();
        if minus.contains(&"A13") && minus.contains(&"A45") {
            return Ok(Some((step, c.dot("A13", "A45")?)));
        }
    }
    Ok(None)
}

fn fmt_tuple(v: &[i64]) -> String {
    format!(
        "({})",
        v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    )
}

fn minus_one_line(c: &CurveConfig) -> String {
    let v = c.minus_one_curves();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

fn write_contractions(
    out: &mut String,
    start: &CurveConfig,
    cert: &RationalityCertificate,
) -> Result<()> {
    let mut c = start.clone();
    writeln!(out, "  (-1)-curves at start: {}", minus_one_line(&c)).unwrap();
    for (i, name) in cert.contractions.iter().enumerate() {
        c = c.contract(name)?;
        writeln!(
            out,
            "  step {}: contract {name}; (-1)-curves now: {}",
            i + 1,
            minus_one_line(&c)
        )
        .unwrap();
    }
    writeln!(
        out,
        "  final curve {}: self-intersection {}, genus {}",
        cert.final_curve,
        fmt_rat(&cert.final_self_intersection),
        c.genus(&cert.final_curve)?
    )
    .unwrap();
    Ok(())
}

fn strict_transform_line(model: &ResolutionModel, curve: &str) -> Result<String> {
    let coeffs = model.strict_transform_coeffs(curve)?;
    let mut terms = Vec::new();
    for (k, chain) in coeffs.iter().enumerate() {
        for (i, x) in chain.iter().enumerate() {
            if *x != rat(0) {
                terms.push((k, i, x.clone()));
            }
        }
    }
    let names = model.component_names();
    let body: Vec<String> = terms
        .iter()
        .map(|(k, i, x)| format!("{} {}", fmt_rat(x), names[*k][*i]))
        .collect();
    Ok(format!("{curve}bar = g*{curve} - ({})", body.join(" + ")))
}

/// Human-readable replay of the Klein argument.
pub fn klein_transcript() -> Result<String> {
    let mut out = String::new();
    let q = catalog_irregularity("XI")?;
    writeln!(out, "Rationality of the order-11 quotient (Klein cubic)").unwrap();
    writeln!(
        out,
        "q = {q} (Burnside average over the cyclic group of order 11)"
    )
    .unwrap();
    writeln!(out).unwrap();
    writeln!(out, "Stage 1: (a14,b14,u1,u2) with a14*u1 + b14*u2 = 5").unwrap();
    let s1 = klein_stage1();
    for &(a, b, u1, u2) in &s1 {
        let (a23, b23) = lattice_preimage((u1, u2));
        writeln!(
            out,
            "  {} -> (a14,b14,a23,b23) = {}",
            fmt_tuple(&[a, b, u1, u2]),
            fmt_tuple(&[a, b, a23, b23])
        )
        .unwrap();
    }
    writeln!(out, "  {} solutions", s1.len()).unwrap();
    let dd: Vec<Rat> = s1
        .iter()
        .map(|&(a, b, u1, u2)| {
            let (a23, b23) = lattice_preimage((u1, u2));
            d13_d25(a, b, a23, b23)
        })
        .collect();
    if dd.iter().all(|x| *x == rat(0)) {
        writeln!(out, "  D13bar.D25bar = 0 for every solution").unwrap();
    } else {
        let v: Vec<String> = dd.iter().map(fmt_rat).collect();
        writeln!(out, "  D13bar.D25bar values: {}", v.join(", ")).unwrap();
    }
    writeln!(out).unwrap();
    let s2 = klein_stage2(&s1)?;
    writeln!(
        out,
        "Stage 2: (w1,w2) from (a14+a23, b14+b23)M = -11(w1,w2)"
    )
    .unwrap();
    for (w, sols) in &s2.budget_solutions {
        let sols: Vec<String> = sols.iter().map(|&(x, y)| fmt_tuple(&[x, y])).collect();
        let shown = if sols.is_empty() {
            "none".to_string()
        } else {
            sols.join(", ")
        };
        writeln!(
            out,
            "  w = {}: a13*w1 + b13*w2 = 5 gives {shown}",
            fmt_tuple(&[w.0, w.1])
        )
        .unwrap();
    }
    writeln!(
        out,
        "  integrality of D13bar.A13, D13bar.B13 leaves (a13,b13) = {}, w = {}",
        fmt_tuple(&[s2.a13_b13.0, s2.a13_b13.1]),
        fmt_tuple(&[s2.w.0, s2.w.1])
    )
    .unwrap();
    let surv: Vec<String> = s2
        .survivors
        .iter()
        .map(|&(a, b, c, d)| fmt_tuple(&[a, b, c, d]))
        .collect();
    writeln!(out, "  surviving (a14,b14,a23,b23): {}", surv.join(", ")).unwrap();
    writeln!(
        out,
        "  note: the printed D12bar.D25bar is read as D13bar.D25bar"
    )
    .unwrap();
    for (label, option) in [
        ("option 1", KleinOption::One),
        ("option 2", KleinOption::Two),
    ] {
        writeln!(out).unwrap();
        let (a14, b14, a23, b23) = option.coefficients();
        writeln!(
            out,
            "Configuration, {label}: (a14,b14,a23,b23) = {}",
            fmt_tuple(&[a14, b14, a23, b23])
        )
        .unwrap();
        let model = klein_model(option)?;
        for p in KLEIN_PAIRS {
            writeln!(out, "  {}", strict_transform_line(&model, &d(p))?).unwrap();
        }
        let c = build_klein_config(option, q)?;
        writeln!(
            out,
            "  Dbar^2 = -1, K.Dbar = -1, Dbar pairwise disjoint: checked"
        )
        .unwrap();
        for curve in ["A13", "B13"] {
            let v: Vec<i64> = KLEIN_PAIRS
                .iter()
                .map(|p| as_i64(&c.dot(curve, &d(p)).expect("curve present")).expect("integral"))
                .collect();
            writeln!(
                out,
                "  {curve}.Dbar over (D13,D25,D14,D23,D45) = {}",
                fmt_tuple(&v)
            )
            .unwrap();
        }
        let cert = certify_config(&c)?;
        write_contractions(&mut out, &c, &cert)?;
        match klein_a13_a45_state(&c, &cert)? {
            Some((step, dot)) => {
                writeln!(
                    out,
                    "  after step {step}: A13, A45 both (-1), A13.A45 = {}",
                    fmt_rat(&dot)
                )
                .unwrap();
                let mut after = c.clone();
                for name in &cert.contractions {
                    after = after.contract(name)?;
                }
                if let Ok(x) = after.self_intersection("A45") {
                    writeln!(
                        out,
                        "  A45 after contracting A13: self-intersection {}",
                        fmt_rat(&x)
                    )
                    .unwrap();
                }
            }
            None => writeln!(out, "  A13, A45 never both (-1)").unwrap(),
        }
    }
    Ok(out)
}

/// Human-readable replay of the order-15 argument.
pub fn xv_transcript() -> Result<String> {
    let mut out = String::new();
    let q = catalog_irregularity("XV")?;
    writeln!(out, "Rationality of the order-15 quotient").unwrap();
    writeln!(
        out,
        "q = {q} (Burnside average over the cyclic group of order 15)"
    )
    .unwrap();
    writeln!(out).unwrap();
    let (e1, e2, e12) = elliptic_orbits();
    writeln!(
        out,
        "Elliptic curves: E1^2 = {}, E2^2 = {}, E1.E2 = {}",
        fmt_rat(&e1),
        fmt_rat(&e2),
        fmt_rat(&e12)
    )
    .unwrap();
    let o = rat(15);
    writeln!(
        out,
        "  H^2 = {}, L^2 = {}, H.L = {}",
        fmt_rat(&(&e1 / &o)),
        fmt_rat(&(&e2 / &o)),
        fmt_rat(&(&e12 / &o))
    )
    .unwrap();
    let model = xv_model()?;
    for curve in ["A", "B", "H", "L"] {
        writeln!(out, "  {}", strict_transform_line(&model, curve)?).unwrap();
    }
    writeln!(
        out,
        "  note: the printed coefficient 1/4 on (T_b+U_b) is read as 1/3"
    )
    .unwrap();
    let c = build_xv_config(q)?;
    writeln!(out).unwrap();
    writeln!(
        out,
        "Intersection matrix on (A, B, T_m, H, L), equal to the printed one:"
    )
    .unwrap();
    for i in 0..c.len() {
        let row: Vec<String> = c
            .matrix()
            .row(i)
            .iter()
            .map(|x| format!("{:>3}", fmt_rat(x)))
            .collect();
        writeln!(out, "  {:<4}{}", c.names()[i], row.join(" ")).unwrap();
    }
    let k: Vec<String> = c.k_degrees().iter().map(fmt_rat).collect();
    writeln!(out, "  K-degrees: {}", k.join(", ")).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "Blow-downs:").unwrap();
    let cert = certify_config(&c)?;
    write_contractions(&mut out, &c, &cert)?;
    Ok(out)
}
