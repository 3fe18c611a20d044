//! Cyclotomic numbers, finite matrix groups and Burnside averaging.
//!
//! A [`CycNum`] of conductor `n` is a polynomial in `ζ_n` reduced modulo the
//! cyclotomic polynomial `Φ_n`, so equality is coefficient equality. Values of
//! different conductors are embedded into `Q(ζ_lcm)` before any operation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{fmt_rat, Rat};
use crate::CycMatrix;

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    phi_poly(n).iter().map(|c| c.to_integer()).collect()
}

fn phi_poly(n: u64) -> Arc<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Rat>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let (q, r) = poly_divmod(&num, &phi_poly(d));
        debug_assert!(r.iter().all(Zero::is_zero));
        num = q;
    }
    let p = Arc::new(num);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Division by a monic polynomial.
fn poly_divmod(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= dm {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - dm];
    for i in (dm..r.len()).rev() {
        let c = std::mem::replace(&mut r[i], Rat::zero());
        if c.is_zero() {
            continue;
        }
        for j in 0..dm {
            if !m[j].is_zero() {
                r[i - dm + j] -= &c * &m[j];
            }
        }
        q[i - dm] = c;
    }
    r.truncate(dm);
    (q, r)
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Element of `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone)]
pub struct CycNum {
    n: u64,
    coeffs: Vec<Rat>,
}

impl CycNum {
    /// Reduce an arbitrary polynomial in `ζ_n` modulo `Φ_n`.
    pub fn from_poly(n: u64, poly: Vec<Rat>) -> Self {
        let phi = phi_poly(n);
        let deg = phi.len() - 1;
        let mut coeffs = if poly.len() > deg {
            poly_divmod(&poly, &phi).1
        } else {
            poly
        };
        coeffs.resize(deg, Rat::zero());
        Self { n, coeffs }
    }

    pub fn rational(r: Rat) -> Self {
        Self {
            n: 1,
            coeffs: vec![r],
        }
    }

    pub fn integer(k: i64) -> Self {
        Self::rational(Rat::from_integer(BigInt::from(k)))
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rat::zero(); e + 1];
        poly[e] = Rat::one();
        Self::from_poly(n, poly)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Same element in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn embed(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(
            m % self.n == 0,
            "cannot embed conductor {} into {}",
            self.n,
            m
        );
        let step = (m / self.n) as usize;
        let mut poly = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Self::from_poly(m, poly)
    }

    fn lift_pair(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (self.embed(m), other.embed(m))
    }

    /// Multiplicative inverse via the multiplication matrix over `Q`.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.coeffs.len();
        let mut cols = Vec::with_capacity(d);
        for k in 0..d {
            let basis = Self::zeta_pow(self.n, k as i64);
            cols.push((self.clone() * basis).coeffs);
        }
        let mut m = Matrix::<Rat>::zeros(d, d);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        let mut e = vec![Rat::zero(); d];
        e[0] = Rat::one();
        let x = m.solve(&e)?;
        Ok(Self {
            n: self.n,
            coeffs: x,
        })
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.lift_pair(other);
        a.coeffs == b.coeffs
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => fmt_rat(c),
                _ if c.is_one() => format!("z{}^{}", self.n, k),
                _ => format!("{}*z{}^{}", fmt_rat(c), self.n, k),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        Self::rational(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycNum {
    fn one() -> Self {
        Self::rational(Rat::one())
    }
}

impl Neg for CycNum {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycNum {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b) = if self.n == rhs.n {
            (self, rhs)
        } else {
            self.lift_pair(&rhs)
        };
        let coeffs = a
            .coeffs
            .into_iter()
            .zip(b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Self { n: a.n, coeffs }
    }
}

impl Sub for CycNum {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for CycNum {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.n == rhs.n {
            (self, rhs)
        } else {
            self.lift_pair(&rhs)
        };
        let mut poly = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Self::from_poly(a.n, poly)
    }
}

impl Div for CycNum {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs
            .inverse()
            .expect("division by zero in a cyclotomic field")
    }
}

/// Diagonal matrix `diag(ζ_n^k_1, …)`.
pub fn diag_roots(n: u64, powers: &[i64]) -> CycMatrix {
    Matrix::diagonal(powers.iter().map(|&k| CycNum::zeta_pow(n, k)).collect())
}

/// Integer matrix viewed over `Q ⊂ Q(ζ_n)`.
pub fn integer_matrix(rows: &[&[i64]]) -> CycMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| CycNum::integer(x)).collect())
            .collect(),
    )
    .expect("rectangular integer rows")
}

/// Least common conductor of a matrix's entries.
pub fn matrix_conductor(m: &CycMatrix) -> u64 {
    m.entries().iter().fold(1, |acc, x| acc.lcm(&x.conductor()))
}

/// A finite group of cyclotomic matrices, stored as an element list.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    elements: Vec<CycMatrix>,
    conductor: u64,
}

impl FiniteMatrixGroup {
    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, m: &CycMatrix) -> bool {
        let key = canonical_key(m, self.conductor);
        self.elements
            .iter()
            .any(|e| canonical_key(e, self.conductor) == key)
    }
}

fn canonical_key(m: &CycMatrix, n: u64) -> Vec<Rat> {
    m.entries().iter().flat_map(|x| x.embed(n).coeffs).collect()
}

/// Default element bound for [`group_closure`].
pub const DEFAULT_BOUND: usize = 10_000;

/// Close a generator list under multiplication.
pub fn group_closure(generators: &[CycMatrix], bound: usize) -> Result<FiniteMatrixGroup> {
    let dim = generators.first().map_or(5, Matrix::rows);
    let mut conductor = 1u64;
    for g in generators {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::DimensionMismatch(format!(
                "generator of shape {}x{} in dimension {}",
                g.rows(),
                g.cols(),
                dim
            )));
        }
        conductor = conductor.lcm(&matrix_conductor(g));
    }
    let gens: Vec<CycMatrix> = generators
        .iter()
        .map(|g| g.map(|x| x.embed(conductor)))
        .collect();
    for g in &gens {
        if g.determinant()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
    }
    let id = CycMatrix::identity(dim).map(|x| x.embed(conductor));
    let mut seen = BTreeSet::new();
    seen.insert(canonical_key(&id, conductor));
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g)?;
            if seen.insert(canonical_key(&y, conductor)) {
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded(bound));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(FiniteMatrixGroup {
        elements,
        conductor,
    })
}

/// Character of the representation itself.
pub fn trace_character(m: &CycMatrix) -> CycNum {
    m.trace()
}

/// Character of `Λ²V` at `m`: `(tr(m)² − tr(m²)) / 2`.
pub fn exterior_square_trace(m: &CycMatrix) -> CycNum {
    let t = m.trace();
    let t2 = m.mul(m).expect("square matrix").trace();
    (t.clone() * t - t2) * CycNum::rational(Rat::new(1.into(), 2.into()))
}

/// Burnside average `(1/|G|) Σ χ(g)`, required to be a nonnegative integer.
pub fn invariant_dimension(
    g: &FiniteMatrixGroup,
    character: impl Fn(&CycMatrix) -> CycNum,
) -> Result<u64> {
    let sum = g
        .elements
        .iter()
        .fold(CycNum::zero(), |acc, m| acc + character(m));
    let avg = sum * CycNum::rational(Rat::new(1.into(), BigInt::from(g.order())));
    match avg.to_rat() {
        Some(r) if r.is_integer() && !r.is_negative() => {
            Ok(r.to_integer().to_u64().expect("small dimension"))
        }
        _ => Err(Error::NonIntegralDimension(avg.to_string())),
    }
}
