//! Finite-dimensional Rota-Baxter algebras and bimodules given by structure
//! constants, with their JSON form.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{fmt_rational, parse_rational, Rational};

/// A vector in coordinates.
pub type Vector = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DataError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse {0:?} as a rational number")]
    Number(String),
    #[error("malformed input: {0}")]
    Json(String),
    #[error("no bimodule given")]
    MissingBimodule,
}

/// Actions and operator of a bimodule `M` over `A`.
///
/// `left[a][m][k]` is the `f_k` coefficient of `e_a·f_m`, `right[m][a][k]`
/// that of `f_m·e_a`, and `tm[m][k]` that of `T_M(f_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    pub dim: usize,
    pub left: Vec<Vec<Vector>>,
    pub right: Vec<Vec<Vector>>,
    pub tm: Vec<Vector>,
}

/// `mu[i][j][k]` is the `e_k` coefficient of `e_i·e_j`; `t[i][j]` is the
/// `e_j` coefficient of `T(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRBData {
    pub dim: usize,
    pub lambda: Rational,
    pub mu: Vec<Vec<Vector>>,
    pub t: Vec<Vector>,
    pub module: Option<Bimodule>,
}

pub(crate) fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub(crate) fn basis(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub(crate) fn axpy(acc: &mut [Rational], c: &Rational, x: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += c * b;
    }
}

pub(crate) fn add(x: &[Rational], y: &[Rational]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub(crate) fn sub(x: &[Rational], y: &[Rational]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub(crate) fn scale(c: &Rational, x: &[Rational]) -> Vector {
    x.iter().map(|a| c * a).collect()
}

/// Bilinear map given by a table `table[i][j][k]`.
pub(crate) fn bilinear(table: &[Vec<Vector>], x: &[Rational], y: &[Rational], out_dim: usize) -> Vector {
    let mut out = zeros(out_dim);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            axpy(&mut out, &(xi * yj), &table[i][j]);
        }
    }
    out
}

/// Linear map given by rows `rows[i]` = image of the i-th basis vector.
pub(crate) fn linear(rows: &[Vector], x: &[Rational], out_dim: usize) -> Vector {
    let mut out = zeros(out_dim);
    for (i, xi) in x.iter().enumerate() {
        axpy(&mut out, xi, &rows[i]);
    }
    out
}

impl Bimodule {
    /// `A` acting on itself.
    pub fn regular(data: &FiniteRBData) -> Bimodule {
        Bimodule {
            dim: data.dim,
            left: data.mu.clone(),
            right: data.mu.clone(),
            tm: data.t.clone(),
        }
    }
}

impl FiniteRBData {
    pub fn new(lambda: Rational, mu: Vec<Vec<Vector>>, t: Vec<Vector>) -> Self {
        FiniteRBData {
            dim: t.len(),
            lambda,
            mu,
            t,
            module: None,
        }
    }

    pub fn with_regular_module(mut self) -> Self {
        self.module = Some(Bimodule::regular(&self));
        self
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vector {
        bilinear(&self.mu, x, y, self.dim)
    }

    pub fn op(&self, x: &[Rational]) -> Vector {
        linear(&self.t, x, self.dim)
    }

    /// The bimodule, or the regular one when none is given.
    pub fn bimodule(&self) -> Bimodule {
        self.module.clone().unwrap_or_else(|| Bimodule::regular(self))
    }

    pub fn check_shapes(&self) -> Result<(), DataError> {
        let d = self.dim;
        let bad = |what: &str| Err(DataError::Shape(what.to_string()));
        if self.t.len() != d || self.t.iter().any(|r| r.len() != d) {
            return bad("T must be dim × dim");
        }
        if self.mu.len() != d || self.mu.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return bad("mu must be dim × dim × dim");
        }
        if let Some(m) = &self.module {
            let e = m.dim;
            if m.tm.len() != e || m.tm.iter().any(|r| r.len() != e) {
                return bad("TM must be module.dim × module.dim");
            }
            if m.left.len() != d || m.left.iter().any(|r| r.len() != e || r.iter().any(|c| c.len() != e)) {
                return bad("left must be dim × module.dim × module.dim");
            }
            if m.right.len() != e || m.right.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != e)) {
                return bad("right must be module.dim × dim × module.dim");
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RawData::from(self)).expect("plain data serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, DataError> {
        let raw: RawData = serde_json::from_str(text).map_err(|e| DataError::Json(e.to_string()))?;
        let data = raw.into_data()?;
        data.check_shapes()?;
        Ok(data)
    }
}

impl Bimodule {
    pub fn act_left(&self, a: &[Rational], m: &[Rational]) -> Vector {
        bilinear(&self.left, a, m, self.dim)
    }

    pub fn act_right(&self, m: &[Rational], a: &[Rational]) -> Vector {
        bilinear(&self.right, m, a, self.dim)
    }

    pub fn op(&self, m: &[Rational]) -> Vector {
        linear(&self.tm, m, self.dim)
    }
}

/// A number written either as a JSON integer or as a string `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum RawNumber {
    Int(i64),
    Text(String),
}

impl RawNumber {
    fn value(&self) -> Result<Rational, DataError> {
        match self {
            RawNumber::Int(n) => Ok(Rational::from_integer((*n).into())),
            RawNumber::Text(s) => parse_rational(s).ok_or_else(|| DataError::Number(s.clone())),
        }
    }

    fn from_value(r: &Rational) -> Self {
        RawNumber::Text(fmt_rational(r))
    }
}

fn conv1(v: &[RawNumber]) -> Result<Vector, DataError> {
    v.iter().map(RawNumber::value).collect()
}

fn conv2(v: &[Vec<RawNumber>]) -> Result<Vec<Vector>, DataError> {
    v.iter().map(|r| conv1(r)).collect()
}

fn conv3(v: &[Vec<Vec<RawNumber>>]) -> Result<Vec<Vec<Vector>>, DataError> {
    v.iter().map(|r| conv2(r)).collect()
}

fn back1(v: &[Rational]) -> Vec<RawNumber> {
    v.iter().map(RawNumber::from_value).collect()
}

fn back2(v: &[Vector]) -> Vec<Vec<RawNumber>> {
    v.iter().map(|r| back1(r)).collect()
}

fn back3(v: &[Vec<Vector>]) -> Vec<Vec<Vec<RawNumber>>> {
    v.iter().map(|r| back2(r)).collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dim: usize,
    left: Vec<Vec<Vec<RawNumber>>>,
    right: Vec<Vec<Vec<RawNumber>>>,
    #[serde(rename = "TM")]
    tm: Vec<Vec<RawNumber>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawData {
    dim: usize,
    lambda: RawNumber,
    mu: Vec<Vec<Vec<RawNumber>>>,
    #[serde(rename = "T")]
    t: Vec<Vec<RawNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    module: Option<RawModule>,
}

impl RawData {
    fn into_data(self) -> Result<FiniteRBData, DataError> {
        let module = match self.module {
            Some(m) => Some(Bimodule {
                dim: m.dim,
                left: conv3(&m.left)?,
                right: conv3(&m.right)?,
                tm: conv2(&m.tm)?,
            }),
            None => None,
        };
        Ok(FiniteRBData {
            dim: self.dim,
            lambda: self.lambda.value()?,
            mu: conv3(&self.mu)?,
            t: conv2(&self.t)?,
            module,
        })
    }
}

impl From<&FiniteRBData> for RawData {
    fn from(d: &FiniteRBData) -> Self {
        RawData {
            dim: d.dim,
            lambda: RawNumber::from_value(&d.lambda),
            mu: back3(&d.mu),
            t: back2(&d.t),
            module: d.module.as_ref().map(|m| RawModule {
                dim: m.dim,
                left: back3(&m.left),
                right: back3(&m.right),
                tm: back2(&m.tm),
            }),
        }
    }
}
