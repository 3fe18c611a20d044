use fano_quotients::catalog::Catalog;
use fano_quotients::cyclotomic::{
    exterior_square_trace, group_closure, integer_matrix, invariant_dimension, trace_character,
    DEFAULT_BOUND,
};
use fano_quotients::engine::{full_report, geometric_genus, irregularity};
use fano_quotients::rationality::{
    elliptic_lattice, elliptic_orbits, klein_model, KleinOption, KLEIN_PAIRS,
};
use fano_quotients::scalar::{frac, rat};
use fano_quotients::scenario::{parse_scenario, QuotientScenario};
use fano_quotients::{CycMatrix, CycNum};
use num_traits::Zero;

fn case(label: &str) -> &'static QuotientScenario {
    Catalog::builtin().get(label).unwrap()
}

#[test]
fn every_shipped_scenario_validates() {
    for (name, text) in fano_quotients::catalog::BUILTIN_FILES {
        assert!(parse_scenario(text).is_ok(), "{name}");
    }
    assert_eq!(Catalog::builtin().scenarios().len(), 19);
}

#[test]
fn group_orders() {
    let want = [
        ("I", 2),
        ("II", 2),
        ("III(1)", 3),
        ("III(2)", 3),
        ("III(3)", 3),
        ("III(4)", 3),
        ("IV(1)", 4),
        ("IV(2)", 4),
        ("V", 5),
        ("XI", 11),
        ("XV", 15),
        ("Z2xZ2", 4),
        ("S3", 6),
        ("Z3xZ3", 9),
        ("D2", 4),
        ("D3", 6),
        ("D5", 10),
        ("S3xZ3", 18),
        ("trivial", 1),
    ];
    for (label, n) in want {
        assert_eq!(case(label).group_order(), n, "{label}");
    }
}

// Pairwise products of eigenvalues, summed.
fn e2(diag: &[CycNum]) -> CycNum {
    let mut total = CycNum::zero();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            total = total + diag[i].clone() * diag[j].clone();
        }
    }
    total
}

fn is_diagonal(m: &CycMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()))
}

#[test]
fn exterior_square_matches_eigenvalue_products_on_diagonal_elements() {
    let mut checked = 0;
    for s in Catalog::builtin().scenarios() {
        for g in s.group.elements() {
            if is_diagonal(g) {
                let d: Vec<CycNum> = (0..g.rows()).map(|i| g[(i, i)].clone()).collect();
                assert_eq!(exterior_square_trace(g), e2(&d), "{}", s.label);
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

fn with_group(s: &QuotientScenario, f: impl Fn(&CycMatrix) -> CycMatrix) -> QuotientScenario {
    let gens: Vec<CycMatrix> = s.group.elements().iter().map(f).collect();
    let mut t = s.clone();
    t.group = group_closure(&gens, DEFAULT_BOUND).unwrap();
    t
}

#[test]
fn invariant_dimensions_survive_conjugation_and_duality() {
    let p = integer_matrix(&[
        &[1, 1, 0, 0, 0],
        &[0, 1, 1, 0, 0],
        &[0, 0, 1, 0, 2],
        &[1, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1],
    ]);
    let pinv = p.inverse().unwrap();
    for label in ["S3", "XV", "D5", "Z3xZ3"] {
        let s = case(label);
        let (q, pg) = (irregularity(s).unwrap(), geometric_genus(s).unwrap());
        let conj = with_group(s, |g| p.mul(g).unwrap().mul(&pinv).unwrap());
        assert_eq!(conj.group_order(), s.group_order());
        assert_eq!(irregularity(&conj).unwrap(), q, "{label}");
        assert_eq!(geometric_genus(&conj).unwrap(), pg, "{label}");
        let dual = with_group(s, |g| g.inverse().unwrap().transpose());
        assert_eq!(irregularity(&dual).unwrap(), q, "{label}");
        assert_eq!(geometric_genus(&dual).unwrap(), pg, "{label}");
        assert_eq!(
            invariant_dimension(&dual.group, trace_character).unwrap(),
            q
        );
    }
}

#[test]
fn irregularity_and_geometric_genus_match_the_tables() {
    let want = [
        ("I", 1, 6),
        ("II", 3, 4),
        ("III(1)", 3, 4),
        ("III(2)", 1, 4),
        ("III(3)", 0, 4),
        ("III(4)", 2, 1),
        ("IV(1)", 1, 2),
        ("IV(2)", 1, 3),
        ("V", 1, 2),
        ("XI", 0, 0),
        ("XV", 0, 0),
        ("Z2xZ2", 0, 3),
        ("S3", 0, 3),
        ("Z3xZ3", 1, 2),
        ("D2", 2, 1),
        ("D3", 1, 1),
        ("D5", 1, 0),
        ("S3xZ3", 0, 1),
        ("trivial", 5, 10),
    ];
    for (label, q, pg) in want {
        let s = case(label);
        assert_eq!(
            (irregularity(s).unwrap(), geometric_genus(s).unwrap()),
            (q, pg),
            "{label}"
        );
    }
}

#[test]
fn stated_h11_values() {
    let stated = [
        ("II", 14),
        ("III(2)", 27),
        ("III(3)", 44),
        ("IV(1)", 16),
        ("V", 13),
        ("XV", 14),
        ("Z2xZ2", 35),
        ("D2", 7),
        ("Z3xZ3", 17),
        ("D3", 12),
        ("D5", 4),
    ];
    for (label, h) in stated {
        assert_eq!(full_report(case(label)).unwrap().h11, h, "{label}");
    }
    // Stated as 31 and 21; the Hodge identity b2 = h11 + 2p_g with the
    // stated c2, q, p_g forces these.
    for (label, h) in [("S3", 37), ("S3xZ3", 19)] {
        let r = full_report(case(label)).unwrap();
        assert_eq!(r.h11, h);
        let b2 = r.c2 - 2 + 4 * r.q as i64;
        assert_eq!(b2, r.h11 + 2 * r.pg as i64);
    }
}

#[test]
fn named_reports() {
    let r = full_report(case("V")).unwrap();
    assert_eq!(
        (r.c1_squared, r.c2, r.q, r.pg, r.chi, r.fiber_genus),
        (9, 15, 1, 2, 2, Some(4))
    );
    let r = full_report(case("S3")).unwrap();
    assert_eq!((r.c1_squared, r.c2, r.q, r.pg, r.chi), (3, 45, 0, 3, 4));
    let r = full_report(case("trivial")).unwrap();
    assert_eq!((r.c1_squared, r.c2, r.q, r.pg, r.chi), (45, 27, 5, 10, 6));
    assert_eq!(12 * r.chi, 72);
}

#[test]
fn etale_quotient_scales_every_invariant() {
    let r = full_report(case("III(1)")).unwrap();
    assert!(r.singularities.is_empty());
    assert_eq!(r.c1_squared * 3, 45);
    assert_eq!(r.c2 * 3, 27);
    assert_eq!(r.chi * 3, 6);
}

#[test]
fn noether_holds_everywhere() {
    for s in Catalog::builtin().scenarios() {
        let r = full_report(s).unwrap();
        assert!(r.noether_ok, "{}", s.label);
        assert_eq!(
            12 * (1 - r.q as i64 + r.pg as i64),
            r.c1_squared + r.c2,
            "{}",
            s.label
        );
    }
}

fn perturb(text: &str, from: &str, to: &str) -> String {
    assert!(text.contains(from));
    text.replacen(from, to, 1)
}

#[test]
fn validation_reports_gcd_violation() {
    let text = fano_quotients::catalog::BUILTIN_FILES
        .iter()
        .find(|(n, _)| *n == "V.json")
        .unwrap()
        .1;
    let bad = perturb(
        text,
        "\"n\": 5,\n      \"q\": 4,",
        "\"n\": 6,\n      \"q\": 2,",
    );
    let diags = parse_scenario(&bad).unwrap_err();
    assert!(
        diags.iter().any(|d| d.message.contains("gcd(n,q) ≠ 1")),
        "{diags:?}"
    );
    assert!(diags.iter().all(|d| !d.path.is_empty()));
}

#[test]
fn validation_reports_fractional_euler_number() {
    let text = fano_quotients::catalog::BUILTIN_FILES
        .iter()
        .find(|(n, _)| *n == "V.json")
        .unwrap()
        .1;
    let bad = perturb(text, "\"euler\": 2,", "\"euler\": 3,");
    let diags = parse_scenario(&bad).unwrap_err();
    // (27 + 4·3)/5 = 39/5
    assert!(
        diags.iter().any(|d| d.path == "strata"
            && d.message.contains("NonIntegralEuler")
            && d.message.contains("39/5")),
        "{diags:?}"
    );
}

#[test]
fn validation_rejects_unknown_fields_and_schema() {
    let text = fano_quotients::catalog::BUILTIN_FILES
        .iter()
        .find(|(n, _)| *n == "V.json")
        .unwrap()
        .1;
    assert!(parse_scenario(&perturb(text, "\"schema\": 1", "\"schema\": 2")).is_err());
    assert!(parse_scenario(&perturb(
        text,
        "\"schema\": 1",
        "\"schema\": 1, \"extra\": 0"
    ))
    .is_err());
}

#[test]
fn elliptic_curve_lattice() {
    let (idx, m) = elliptic_lattice();
    assert_eq!(idx.len(), 10);
    let mut pairs = 0;
    for x in 0..10 {
        assert_eq!(m[(x, x)], rat(-3));
        for y in x + 1..10 {
            let (a, b) = (idx[x], idx[y]);
            let shared = [a.0, a.1]
                .iter()
                .filter(|i| **i == b.0 || **i == b.1)
                .count();
            let want = if shared == 0 { 1 } else { 0 };
            assert_eq!(m[(x, y)], rat(want));
            assert_eq!(m[(y, x)], rat(want));
            pairs += 1;
        }
    }
    assert_eq!(pairs, 45);
    // Each orbit sum is a pentagon: 5 self terms and 5 disjoint pairs.
    assert_eq!(elliptic_orbits(), (rat(-5), rat(-5), rat(5)));
}

#[test]
fn klein_strict_transforms_pair_integrally() {
    for option in [KleinOption::One, KleinOption::Two] {
        let model = klein_model(option).unwrap();
        for p in KLEIN_PAIRS {
            let dp = format!("D{p}");
            assert_eq!(model.pair_on_resolution(&dp, &dp).unwrap(), rat(-1));
            assert_eq!(model.k_degree(&dp).unwrap(), rat(-1));
            for q in KLEIN_PAIRS {
                if p != q {
                    let v = model.pair_on_resolution(&dp, &format!("D{q}")).unwrap();
                    assert!(v.is_integer() && v >= rat(0), "{p} {q}: {v}");
                }
            }
        }
    }
}

#[test]
fn klein_self_intersection_by_hand() {
    // Chain form -3x² + 2xy - 4y² on (1,3)/11, (4,1)/11, (5,4)/11.
    let form = |x: i64, y: i64| frac(-3 * x * x + 2 * x * y - 4 * y * y, 121);
    assert_eq!(form(1, 3), frac(-3, 11));
    assert_eq!(form(4, 1), frac(-4, 11));
    assert_eq!(form(5, 4), frac(-9, 11));
    assert_eq!(frac(5, 11) + form(1, 3) + form(4, 1) + form(5, 4), rat(-1));
}
