use fano_quotients::linalg::{is_negative_definite, Matrix};
use fano_quotients::scalar::{frac, rat};
use fano_quotients::Rat;
use num_traits::Signed;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn square(n: usize) -> impl Strategy<Value = Matrix<Rat>> {
    proptest::collection::vec(small_rat(), n * n).prop_map(move |v| Matrix::new(n, n, v).unwrap())
}

fn symmetric(n: usize) -> impl Strategy<Value = Matrix<Rat>> {
    proptest::collection::vec(-6i64..=6, n * (n + 1) / 2).prop_map(move |v| {
        let mut m = Matrix::zeros(n, n);
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = rat(it.next().unwrap());
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        m
    })
}

/// Coefficients of det(tI − A), highest degree first, by expanding over
/// principal minors: c_k = (−1)^k Σ_{|S|=k} det A_S.
fn char_poly(a: &Matrix<Rat>) -> Vec<Rat> {
    let n = a.rows();
    let mut out = vec![rat(0); n + 1];
    out[0] = rat(1);
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = idx.len();
        let det = minor_det(a, &idx);
        out[k] += if k % 2 == 0 { det } else { -det };
    }
    out
}

// Permutation expansion, independent of elimination.
fn minor_det(a: &Matrix<Rat>, idx: &[usize]) -> Rat {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut total = rat(0);
    for p in perms(idx.len()) {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        let mut term = rat(if inv % 2 == 0 { 1 } else { -1 });
        for (i, &j) in p.iter().enumerate() {
            term *= &a[(idx[i], idx[j])];
        }
        total += term;
    }
    total
}

proptest! {
    #[test]
    fn solve_multiplies_back(a in (2usize..=4).prop_flat_map(square), b in proptest::collection::vec(small_rat(), 4)) {
        let n = a.rows();
        let b = &b[..n];
        match a.solve(b) {
            Ok(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b.to_vec()),
            Err(_) => prop_assert_eq!(minor_det(&a, &(0..n).collect::<Vec<_>>()), rat(0)),
        }
    }

    #[test]
    fn inverse_is_two_sided(a in (2usize..=4).prop_flat_map(square)) {
        if let Ok(inv) = a.inverse() {
            let id = Matrix::<Rat>::identity(a.rows());
            prop_assert_eq!(a.mul(&inv).unwrap(), id.clone());
            prop_assert_eq!(inv.mul(&a).unwrap(), id);
        }
    }

    // A real symmetric matrix is negative definite iff every coefficient of
    // its monic characteristic polynomial is positive.
    #[test]
    fn definiteness_matches_char_poly(a in (2usize..=3).prop_flat_map(symmetric)) {
        let oracle = char_poly(&a).iter().all(|c| c.is_positive());
        prop_assert_eq!(is_negative_definite(&a).unwrap(), oracle);
    }

    #[test]
    fn negative_definite_forms_are_negative_on_a_grid(a in (2usize..=3).prop_flat_map(symmetric)) {
        if is_negative_definite(&a).unwrap() {
            let n = a.rows();
            let range = -2i64..=2;
            let mut x = vec![-2i64; n];
            loop {
                if x.iter().any(|&v| v != 0) {
                    let v: Vec<Rat> = x.iter().map(|&t| rat(t)).collect();
                    prop_assert!(a.quadratic_form(&v).unwrap().is_negative());
                }
                let mut i = 0;
                while i < n {
                    x[i] += 1;
                    if range.contains(&x[i]) { break; }
                    x[i] = -2;
                    i += 1;
                }
                if i == n { break; }
            }
        }
    }
}
