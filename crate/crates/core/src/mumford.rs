//! Q-valued intersection theory on a normal surface via its resolution.
//!
//! A [`ResolutionModel`] records the downstairs pairing of named curves, the
//! resolution chains and the incidences of strict transforms with chain
//! components. Divisors on the resolution are pullbacks plus exceptional
//! parts; `g*D · C_i = 0` makes the two parts orthogonal.

use num_traits::{Signed, Zero};

use crate::blowdown::CurveConfig;
use crate::error::{Error, Result};
use crate::hj::{chain_matrix, discrepancies, k2_correction, CyclicSing};
use crate::linalg::Matrix;
use crate::scalar::{as_i64, fmt_rat, rat, Rat};
use crate::QMatrix;

#[derive(Clone, Debug)]
struct Chain {
    name: String,
    components: Vec<String>,
    matrix: QMatrix,
    discrepancies: Vec<Rat>,
}

/// Resolution `g: Z → Y` of a normal surface, restricted to finitely many
/// named curves.
#[derive(Clone, Debug)]
pub struct ResolutionModel {
    chains: Vec<Chain>,
    curves: Vec<String>,
    pairing: QMatrix,
    k_curves: Vec<Rat>,
    k_y2: Rat,
    /// `incidence[curve][chain][component]`.
    incidence: Vec<Vec<Vec<u64>>>,
}

/// `g*(Σ c_j C_j + c_K K_Y) + Σ e_i C_i` on the resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorExpr {
    pub curves: Vec<Rat>,
    pub canonical: Rat,
    pub exceptional: Vec<Vec<Rat>>,
}

impl ResolutionModel {
    pub fn new(k_y2: Rat) -> Self {
        Self {
            chains: Vec::new(),
            curves: Vec::new(),
            pairing: Matrix::zeros(0, 0),
            k_curves: Vec::new(),
            k_y2,
            incidence: Vec::new(),
        }
    }

    /// Add a resolution chain with self-intersections `-b_i`.
    pub fn add_chain(&mut self, name: &str, selfints: &[u64], components: &[&str]) -> Result<()> {
        if selfints.len() != components.len() {
            return Err(Error::DimensionMismatch(format!(
                "chain {name}: names and self-intersections differ in length"
            )));
        }
        let matrix = chain_matrix(selfints);
        if !matrix.is_negative_definite()? {
            return Err(Error::InvalidSingularity(format!(
                "chain {name} is not negative definite"
            )));
        }
        let discrepancies = discrepancies(selfints)?;
        self.chains.push(Chain {
            name: name.to_string(),
            components: components.iter().map(|s| s.to_string()).collect(),
            matrix,
            discrepancies,
        });
        for inc in &mut self.incidence {
            inc.push(vec![0; selfints.len()]);
        }
        Ok(())
    }

    /// Add a named curve with its canonical degree `K_Y·C`.
    pub fn add_curve(&mut self, name: &str, k_degree: Rat) {
        let n = self.curves.len();
        let mut p = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = self.pairing[(i, j)].clone();
            }
        }
        self.pairing = p;
        self.curves.push(name.to_string());
        self.k_curves.push(k_degree);
        self.incidence.push(
            self.chains
                .iter()
                .map(|c| vec![0; c.components.len()])
                .collect(),
        );
    }

    /// Set the downstairs intersection number `C·C'` (symmetric).
    pub fn set_pair(&mut self, a: &str, b: &str, value: Rat) -> Result<()> {
        let (i, j) = (self.curve_index(a)?, self.curve_index(b)?);
        self.pairing[(i, j)] = value.clone();
        self.pairing[(j, i)] = value;
        Ok(())
    }

    /// Set the multiplicity `C̄·C_i` of a strict transform with a chain component.
    pub fn set_incidence(&mut self, curve: &str, component: &str, mult: u64) -> Result<()> {
        let c = self.curve_index(curve)?;
        let (k, i) = self.component_index(component)?;
        self.incidence[c][k][i] = mult;
        Ok(())
    }

    pub fn curves(&self) -> &[String] {
        &self.curves
    }

    /// Component names, one list per chain.
    pub fn component_names(&self) -> Vec<Vec<String>> {
        self.chains.iter().map(|c| c.components.clone()).collect()
    }

    pub fn k_y2(&self) -> &Rat {
        &self.k_y2
    }

    pub fn curve_index(&self, name: &str) -> Result<usize> {
        self.curves
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    fn component_index(&self, name: &str) -> Result<(usize, usize)> {
        for (k, ch) in self.chains.iter().enumerate() {
            if let Some(i) = ch.components.iter().position(|c| c == name) {
                return Ok((k, i));
            }
        }
        Err(Error::UnknownCurve(name.to_string()))
    }

    /// Coefficients `x` in `C̄ = g*C − Σ x_i C_i`, one vector per chain.
    pub fn strict_transform_coeffs(&self, curve: &str) -> Result<Vec<Vec<Rat>>> {
        let c = self.curve_index(curve)?;
        let mut out = Vec::with_capacity(self.chains.len());
        for (k, ch) in self.chains.iter().enumerate() {
            let m: Vec<Rat> = self.incidence[c][k]
                .iter()
                .map(|&x| rat(x as i64))
                .collect();
            let neg_m: Vec<Rat> = m.iter().map(|x| -x.clone()).collect();
            let x = ch.matrix.solve(&neg_m)?;
            // g*C · C_i = C̄·C_i + (Mx)_i must vanish.
            let mx = ch.matrix.mul_vec(&x)?;
            assert!(
                mx.iter().zip(&m).all(|(a, b)| (a.clone() + b).is_zero()),
                "pullback not orthogonal to chain {}",
                ch.name
            );
            if x.iter().any(Signed::is_negative) {
                return Err(Error::IntegralityViolation(format!(
                    "negative strict transform coefficient for {curve}"
                )));
            }
            out.push(x);
        }
        Ok(out)
    }

    fn zero_exceptional(&self) -> Vec<Vec<Rat>> {
        self.chains
            .iter()
            .map(|c| vec![Rat::zero(); c.components.len()])
            .collect()
    }

    pub fn strict_transform(&self, curve: &str) -> Result<DivisorExpr> {
        let c = self.curve_index(curve)?;
        let mut curves = vec![Rat::zero(); self.curves.len()];
        curves[c] = rat(1);
        let exceptional = self
            .strict_transform_coeffs(curve)?
            .into_iter()
            .map(|v| v.into_iter().map(|x| -x).collect())
            .collect();
        Ok(DivisorExpr {
            curves,
            canonical: Rat::zero(),
            exceptional,
        })
    }

    /// `K_Z = g*K_Y − Σ a_i C_i`.
    pub fn canonical(&self) -> DivisorExpr {
        DivisorExpr {
            curves: vec![Rat::zero(); self.curves.len()],
            canonical: rat(1),
            exceptional: self
                .chains
                .iter()
                .map(|c| c.discrepancies.iter().map(|a| -a.clone()).collect())
                .collect(),
        }
    }

    pub fn exceptional(&self, component: &str) -> Result<DivisorExpr> {
        let (k, i) = self.component_index(component)?;
        let mut exceptional = self.zero_exceptional();
        exceptional[k][i] = rat(1);
        Ok(DivisorExpr {
            curves: vec![Rat::zero(); self.curves.len()],
            canonical: Rat::zero(),
            exceptional,
        })
    }

    /// A named curve's strict transform or a chain component.
    pub fn divisor(&self, name: &str) -> Result<DivisorExpr> {
        if self.curve_index(name).is_ok() {
            self.strict_transform(name)
        } else {
            self.exceptional(name)
        }
    }

    /// Intersection number on `Z`.
    pub fn pair(&self, d1: &DivisorExpr, d2: &DivisorExpr) -> Rat {
        let n = self.curves.len();
        let mut total = Rat::zero();
        for i in 0..n {
            if d1.curves[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !d2.curves[j].is_zero() {
                    total += &d1.curves[i] * &d2.curves[j] * &self.pairing[(i, j)];
                }
            }
            total += &d1.curves[i] * &d2.canonical * &self.k_curves[i];
        }
        for j in 0..n {
            total += &d1.canonical * &d2.curves[j] * &self.k_curves[j];
        }
        total += &d1.canonical * &d2.canonical * &self.k_y2;
        for (k, ch) in self.chains.iter().enumerate() {
            total += ch
                .matrix
                .bilinear(&d1.exceptional[k], &d2.exceptional[k])
                .expect("chain dimensions");
        }
        total
    }

    /// `C̄·C̄'` on the resolution.
    pub fn pair_on_resolution(&self, c1: &str, c2: &str) -> Result<Rat> {
        Ok(self.pair(&self.divisor(c1)?, &self.divisor(c2)?))
    }

    /// `K_Z·C̄`.
    pub fn k_degree(&self, name: &str) -> Result<Rat> {
        Ok(self.pair(&self.canonical(), &self.divisor(name)?))
    }

    /// `K_Z²` from the model's own chains.
    pub fn k_z_squared(&self) -> Rat {
        let k = self.canonical();
        self.pair(&k, &k)
    }

    /// Configuration of the listed curves on `Z`, genera from adjunction.
    pub fn curve_config(&self, names: &[&str], q: u64) -> Result<CurveConfig> {
        let divs = names
            .iter()
            .map(|n| self.divisor(n))
            .collect::<Result<Vec<_>>>()?;
        let k = self.canonical();
        let n = names.len();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.pair(&divs[i], &divs[j]);
            }
        }
        let kdeg: Vec<Rat> = divs.iter().map(|d| self.pair(&k, d)).collect();
        let genera = (0..n)
            .map(|i| adjunction_genus(&m[(i, i)], &kdeg[i]))
            .collect::<Result<Vec<_>>>()?;
        CurveConfig::new(
            names.iter().map(|s| s.to_string()).collect(),
            m,
            kdeg,
            genera,
            q,
        )
    }
}

/// `K_Z² = K_Y² + Σ (Σ a_i C_i)²`.
pub fn kz_squared(k_y2: &Rat, sings: &[(CyclicSing, u64)]) -> Rat {
    sings.iter().fold(k_y2.clone(), |acc, (s, count)| {
        acc + k2_correction(s) * rat(*count as i64)
    })
}

/// Genus `1 + (C² + K·C)/2` of a smooth curve.
pub fn adjunction_genus(c2: &Rat, kc: &Rat) -> Result<u64> {
    let g = rat(1) + (c2 + kc) / rat(2);
    match as_i64(&g) {
        Some(v) if v >= 0 => Ok(v as u64),
        _ => Err(Error::NonIntegralGenus(fmt_rat(&g))),
    }
}
