//! Hirzebruch–Jung resolution of cyclic quotient singularities.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{rat, Rat};
use crate::QMatrix;

/// The singularity `1/n(1, q)`, stored with `q = min(q, q⁻¹ mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyclicSing {
    n: u64,
    q: u64,
}

impl CyclicSing {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSingularity(format!(
                "n = {n} must be at least 2"
            )));
        }
        if q == 0 || q >= n {
            return Err(Error::InvalidSingularity(format!(
                "q = {q} must satisfy 1 <= q < {n}"
            )));
        }
        if n.gcd(&q) != 1 {
            return Err(Error::InvalidSingularity(format!(
                "gcd(n,q) ≠ 1 for A_{{{n},{q}}}"
            )));
        }
        let q_inv = mod_inverse(q, n).expect("coprime");
        Ok(Self { n, q: q.min(q_inv) })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Du Val type `A_{n-1}`.
    pub fn is_du_val(&self) -> bool {
        self.q == self.n - 1
    }

    pub fn chain(&self) -> ExceptionalChain {
        let (selfints, t) = self.scaled_discrepancies();
        let n = self.n as i64;
        let discrepancies = t.iter().map(|&x| Rat::new(x.into(), n.into())).collect();
        ExceptionalChain {
            selfints,
            discrepancies,
        }
    }

    /// `b` and `n·a_i = n − μ_i − ν_i`, where `μ` runs down from `(n, q)` and
    /// `ν` up from `(0, 1)` under `x_{i+1} = b_i x_i − x_{i−1}`.
    fn scaled_discrepancies(&self) -> (Vec<u64>, Vec<i64>) {
        let b = hj_expand(self);
        let n = self.n as i64;
        let (mut mu, mut mu_prev) = (self.q as i64, n);
        let (mut nu, mut nu_prev) = (1i64, 0i64);
        let mut t = Vec::with_capacity(b.len());
        for &bi in &b {
            t.push(n - mu - nu);
            (mu, mu_prev) = (bi as i64 * mu - mu_prev, mu);
            (nu, nu_prev) = (bi as i64 * nu - nu_prev, nu);
        }
        (b, t)
    }
}

impl fmt::Display for CyclicSing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_du_val() {
            write!(f, "A_{}", self.n - 1)
        } else {
            write!(f, "A_{{{},{}}}", self.n, self.q)
        }
    }
}

/// `q⁻¹ mod n`, if it exists.
pub fn mod_inverse(q: u64, n: u64) -> Option<u64> {
    let e = (q as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u64)
}

/// Resolution chain: curves `C_i` with `C_i² = -b_i` and discrepancies `a_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalChain {
    pub selfints: Vec<u64>,
    #[serde(serialize_with = "crate::scalar::ser_rats")]
    pub discrepancies: Vec<Rat>,
}

impl ExceptionalChain {
    pub fn len(&self) -> usize {
        self.selfints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selfints.is_empty()
    }

    pub fn matrix(&self) -> QMatrix {
        chain_matrix(&self.selfints)
    }
}

/// `[b_1, …, b_k]` with `n/q = b_1 − 1/(b_2 − …)`.
pub fn hj_expand(s: &CyclicSing) -> Vec<u64> {
    let (mut n, mut q) = (s.n, s.q);
    let mut out = Vec::new();
    while q > 0 {
        let b = n.div_ceil(q);
        out.push(b);
        (n, q) = (q, b * q - n);
    }
    out
}

/// Evaluate `b_1 − 1/(b_2 − 1/(…))`.
pub fn eval_hj(b: &[u64]) -> Rat {
    let mut acc: Option<Rat> = None;
    for &x in b.iter().rev() {
        acc = Some(match acc {
            None => rat(x as i64),
            Some(a) => rat(x as i64) - a.recip(),
        });
    }
    acc.expect("nonempty chain")
}

/// Tridiagonal intersection matrix: `-b_i` on the diagonal, 1 beside it.
pub fn chain_matrix(b: &[u64]) -> QMatrix {
    let k = b.len();
    let mut m = Matrix::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = -rat(b[i] as i64);
        if i + 1 < k {
            m[(i, i + 1)] = Rat::one();
            m[(i + 1, i)] = Rat::one();
        }
    }
    m
}

/// Solve `M a = (2 − b_i)` for the discrepancies.
///
/// Tridiagonal elimination; a zero pivot means `M` is singular.
pub fn discrepancies(b: &[u64]) -> Result<Vec<Rat>> {
    let k = b.len();
    let mut diag: Vec<Rat> = Vec::with_capacity(k);
    let mut rhs: Vec<Rat> = Vec::with_capacity(k);
    for (i, &x) in b.iter().enumerate() {
        let mut d = -rat(x as i64);
        let mut r = rat(2 - x as i64);
        if i > 0 {
            if diag[i - 1].is_zero() {
                return Err(Error::SingularMatrix);
            }
            let f = diag[i - 1].recip();
            d -= &f;
            r -= &rhs[i - 1] * &f;
        }
        diag.push(d);
        rhs.push(r);
    }
    if diag.last().is_some_and(Zero::is_zero) {
        return Err(Error::SingularMatrix);
    }
    let mut a = vec![Rat::zero(); k];
    for i in (0..k).rev() {
        let mut r = rhs[i].clone();
        if i + 1 < k {
            r -= &a[i + 1];
        }
        a[i] = r / &diag[i];
    }
    Ok(a)
}

/// Contribution `(Σ a_i C_i)²` of one singularity to `K²`.
///
/// Since `M a = 2 − b`, this is `aᵀ M a = Σ a_i (2 − b_i)`.
pub fn k2_correction(s: &CyclicSing) -> Rat {
    let (b, t) = s.scaled_discrepancies();
    let total: i64 = b
        .iter()
        .zip(&t)
        .map(|(&bi, &ti)| ti * (2 - bi as i64))
        .sum();
    Rat::new(total.into(), (s.n as i64).into())
}

/// Singularity of a fixed point whose stabilizer of order `n` acts on the
/// tangent plane with exponents `(p, q)`.
///
/// Pseudo-reflections are divided out first; `None` means the image point is
/// smooth.
pub fn sing_from_eigenvalues(n: u64, (p, q): (i64, i64)) -> Result<Option<CyclicSing>> {
    let ni = n as i64;
    let (p, q) = (p.rem_euclid(ni) as u64, q.rem_euclid(ni) as u64);
    if p == 0 || q == 0 {
        return Err(Error::NotIsolated {
            n: ni,
            p: p as i64,
            q: q as i64,
        });
    }
    // Non-faithful part acts trivially.
    let g = n.gcd(&p).gcd(&q);
    let (n, p, q) = (n / g, p / g, q / g);
    // Reflection subgroups fixing each axis.
    let a = n.gcd(&q);
    let b = n.gcd(&p);
    let m = n / (a * b);
    if m == 1 {
        return Ok(None);
    }
    let (p, q) = (p / b % m, q / a % m);
    let p_inv = mod_inverse(p, m).expect("faithful action on the quotient");
    Ok(Some(CyclicSing::new(m, q * p_inv % m)?))
}
