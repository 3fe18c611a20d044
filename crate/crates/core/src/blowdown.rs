//! Contraction of (−1)-curves and the search for rationality certificates.

use std::collections::HashSet;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{as_i64, fmt_rat, rat, Rat};
use crate::QMatrix;

/// Finite configuration of curves on a smooth surface.
///
/// Genera are arithmetic genera, so adjunction `2p_a − 2 = C² + K·C` holds
/// for every curve, including images that acquired singular points.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveConfig {
    names: Vec<String>,
    matrix: QMatrix,
    k: Vec<Rat>,
    genera: Vec<u64>,
    q: u64,
}

impl CurveConfig {
    pub fn new(
        names: Vec<String>,
        matrix: QMatrix,
        k: Vec<Rat>,
        genera: Vec<u64>,
        q: u64,
    ) -> Result<Self> {
        let n = names.len();
        if matrix.rows() != n || matrix.cols() != n || k.len() != n || genera.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "configuration of {n} curves"
            )));
        }
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let c = Self {
            names,
            matrix,
            k,
            genera,
            q,
        };
        c.check_adjunction()?;
        Ok(c)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn k_degrees(&self) -> &[Rat] {
        &self.k
    }

    pub fn genera(&self) -> &[u64] {
        &self.genera
    }

    pub fn irregularity(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn dot(&self, a: &str, b: &str) -> Result<Rat> {
        Ok(self.matrix[(self.index(a)?, self.index(b)?)].clone())
    }

    pub fn self_intersection(&self, name: &str) -> Result<Rat> {
        self.dot(name, name)
    }

    pub fn k_degree(&self, name: &str) -> Result<Rat> {
        Ok(self.k[self.index(name)?].clone())
    }

    pub fn genus(&self, name: &str) -> Result<u64> {
        Ok(self.genera[self.index(name)?])
    }

    fn check_adjunction(&self) -> Result<()> {
        for i in 0..self.len() {
            let lhs = rat(2 * self.genera[i] as i64 - 2);
            if lhs != &self.matrix[(i, i)] + &self.k[i] {
                return Err(Error::AdjunctionViolation(self.names[i].clone()));
            }
        }
        Ok(())
    }

    fn is_minus_one(&self, i: usize) -> bool {
        self.genera[i] == 0 && self.matrix[(i, i)] == -Rat::one() && self.k[i] == -Rat::one()
    }

    /// Names of the current (−1)-curves, in configuration order.
    pub fn minus_one_curves(&self) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| self.is_minus_one(i))
            .map(|i| self.names[i].as_str())
            .collect()
    }

    /// Blow down a (−1)-curve.
    pub fn contract(&self, name: &str) -> Result<Self> {
        let c = self.index(name)?;
        if !self.is_minus_one(c) {
            return Err(Error::NotMinusOneCurve(name.to_string()));
        }
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != c).collect();
        let mut matrix = Matrix::zeros(keep.len(), keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                matrix[(a, b)] = &self.matrix[(i, j)] + &self.matrix[(i, c)] * &self.matrix[(j, c)];
            }
        }
        let k = keep
            .iter()
            .map(|&i| &self.k[i] - &self.matrix[(i, c)])
            .collect();
        let mut genera = Vec::with_capacity(keep.len());
        for &i in &keep {
            let m = as_i64(&self.matrix[(i, c)])
                .filter(|m| *m >= 0)
                .ok_or_else(|| {
                    Error::IntegralityViolation(format!("{}·{}", self.names[i], name))
                })?;
            genera.push(self.genera[i] + (m * (m - 1) / 2) as u64);
        }
        let out = Self {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            matrix,
            k,
            genera,
            q: self.q,
        };
        out.check_adjunction()?;
        Ok(out)
    }

    /// First genus-0 curve with nonnegative self-intersection.
    fn terminal_curve(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.genera[i] == 0 && !self.matrix[(i, i)].is_negative())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = (0..self.len())
            .map(|i| self.matrix.row(i).iter().map(fmt_rat).collect())
            .collect();
        json!({
            "curves": self.names,
            "matrix": rows,
            "k_degrees": self.k.iter().map(fmt_rat).collect::<Vec<_>>(),
            "genera": self.genera,
            "q": self.q,
        })
    }
}

/// Contraction sequence ending at a smooth rational curve with `C² ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalityCertificate {
    pub contractions: Vec<String>,
    pub final_curve: String,
    pub final_self_intersection: Rat,
    pub final_config: CurveConfig,
}

impl RationalityCertificate {
    /// Re-run the contractions from `start` and confirm the conclusion.
    pub fn verify(&self, start: &CurveConfig) -> Result<()> {
        if start.q != 0 {
            return Err(Error::NoCertificate);
        }
        let mut c = start.clone();
        for name in &self.contractions {
            c = c.contract(name)?;
        }
        if c != self.final_config
            || c.genus(&self.final_curve)? != 0
            || c.self_intersection(&self.final_curve)? != self.final_self_intersection
            || self.final_self_intersection.is_negative()
        {
            return Err(Error::NoCertificate);
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "contractions": self.contractions,
            "final_curve": self.final_curve,
            "final_self_intersection": fmt_rat(&self.final_self_intersection),
            "final_config": self.final_config.to_json(),
        })
    }
}

/// Depth-first search over contraction sequences; `None` if exhausted or if
/// the surface is irregular.
pub fn find_rationality_certificate(config: &CurveConfig) -> Option<RationalityCertificate> {
    if config.q != 0 {
        return None;
    }
    let mut failed = HashSet::new();
    let mut path = Vec::new();
    search(config, &mut path, &mut failed)
}

// The final form depends only on the set of contracted curves, so failures
// are memoized by that set.
fn search(
    config: &CurveConfig,
    path: &mut Vec<String>,
    failed: &mut HashSet<Vec<String>>,
) -> Option<RationalityCertificate> {
    if let Some(i) = config.terminal_curve() {
        return Some(RationalityCertificate {
            contractions: path.clone(),
            final_curve: config.names[i].clone(),
            final_self_intersection: config.matrix[(i, i)].clone(),
            final_config: config.clone(),
        });
    }
    let mut key = path.clone();
    key.sort();
    if failed.contains(&key) {
        return None;
    }
    for name in config.minus_one_curves() {
        let next = config.contract(name).expect("(−1)-curve contracts");
        path.push(name.to_string());
        if let Some(cert) = search(&next, path, failed) {
            return Some(cert);
        }
        path.pop();
    }
    failed.insert(key);
    None
}

/// Configuration with integer data and genera from adjunction.
pub fn config_from_integers(
    names: &[&str],
    rows: &[&[i64]],
    k: &[i64],
    q: u64,
) -> Result<CurveConfig> {
    let matrix = crate::linalg::qmatrix(rows);
    let k: Vec<Rat> = k.iter().map(|&x| rat(x)).collect();
    let genera = (0..names.len())
        .map(|i| crate::mumford::adjunction_genus(&matrix[(i, i)], &k[i]))
        .collect::<Result<Vec<_>>>()?;
    CurveConfig::new(
        names.iter().map(|s| s.to_string()).collect(),
        matrix,
        k,
        genera,
        q,
    )
}
