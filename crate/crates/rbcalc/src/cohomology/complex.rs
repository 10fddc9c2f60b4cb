//! Cochains, the three differentials, the chain map `Φ` and exact ranks.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{span_rank, Matrix};
use crate::scalar::Rational;
use crate::sign::combinations;

use super::data::{axpy, basis, zeros, Bimodule, FiniteRBData, Vector};
use super::{descendent_unchecked, star_unchecked, validate_rb, CohomologyError};

/// A multilinear map `A^{⊗n} → M` as a table over basis tuples; tuples are
/// ordered with the first input most significant. Arity 0 is an element of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub arity: usize,
    pub dim_in: usize,
    pub dim_out: usize,
    values: Vec<Vector>,
}

fn tuple_of(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = idx % d;
        idx /= d;
    }
    t
}

impl Cochain {
    pub fn zero(arity: usize, dim_in: usize, dim_out: usize) -> Self {
        Cochain {
            arity,
            dim_in,
            dim_out,
            values: vec![zeros(dim_out); dim_in.pow(arity as u32)],
        }
    }

    /// Builds the cochain from its values on basis tuples.
    pub fn from_fn(arity: usize, dim_in: usize, dim_out: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let values = (0..dim_in.pow(arity as u32))
            .map(|i| {
                let v = f(&tuple_of(i, arity, dim_in));
                assert_eq!(v.len(), dim_out, "value length");
                v
            })
            .collect();
        Cochain {
            arity,
            dim_in,
            dim_out,
            values,
        }
    }

    pub fn from_coords(arity: usize, dim_in: usize, dim_out: usize, coords: &[Rational]) -> Self {
        assert_eq!(coords.len(), dim_in.pow(arity as u32) * dim_out, "coordinate count");
        let values = coords.chunks(dim_out.max(1)).map(|c| c.to_vec()).collect();
        let mut c = Cochain {
            arity,
            dim_in,
            dim_out,
            values,
        };
        if dim_out == 0 {
            c.values = vec![Vec::new(); dim_in.pow(arity as u32)];
        }
        c
    }

    pub fn coords(&self) -> Vector {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.values.len() * self.dim_out
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }

    pub fn at(&self, tuple: &[usize]) -> &Vector {
        let idx = tuple.iter().fold(0, |acc, &i| acc * self.dim_in + i);
        &self.values[idx]
    }

    /// Value on arbitrary vectors, by multilinearity.
    pub fn eval(&self, xs: &[Vector]) -> Vector {
        assert_eq!(xs.len(), self.arity, "argument count");
        let mut out = zeros(self.dim_out);
        let mut tuple = Vec::with_capacity(self.arity);
        self.eval_rec(xs, &mut tuple, Rational::one(), &mut out);
        out
    }

    fn eval_rec(&self, xs: &[Vector], tuple: &mut Vec<usize>, coef: Rational, out: &mut Vector) {
        let k = tuple.len();
        if k == xs.len() {
            axpy(out, &coef, self.at(tuple));
            return;
        }
        for (i, x) in xs[k].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            tuple.push(i);
            self.eval_rec(xs, tuple, &coef * x, out);
            tuple.pop();
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.combine(other, &Rational::one())
    }

    pub fn combine(&self, other: &Cochain, c: &Rational) -> Cochain {
        assert_eq!((self.arity, self.dim_in, self.dim_out), (other.arity, other.dim_in, other.dim_out));
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + c * y).collect())
            .collect();
        Cochain { values, ..self.clone() }
    }

    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        Cochain { values, ..self.clone() }
    }
}

/// The Hochschild differential of an algebra `mul` with coefficients in `m`.
fn hochschild_general(mul: impl Fn(&[Rational], &[Rational]) -> Vector, m: &Bimodule, f: &Cochain) -> Cochain {
    let n = f.arity;
    let d = f.dim_in;
    let sgn = |e: usize| if e.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Cochain::from_fn(n + 1, d, m.dim, |t| {
        let a: Vec<Vector> = t.iter().map(|&i| basis(d, i)).collect();
        let mut out = zeros(m.dim);
        let first = m.act_left(&a[0], &f.eval(&a[1..]));
        axpy(&mut out, &sgn(n + 1), &first);
        for i in 1..=n {
            let mut args: Vec<Vector> = a[..i - 1].to_vec();
            args.push(mul(&a[i - 1], &a[i]));
            args.extend_from_slice(&a[i + 1..]);
            axpy(&mut out, &sgn(n - i + 1), &f.eval(&args));
        }
        let last = m.act_right(&f.eval(&a[..n]), &a[n]);
        axpy(&mut out, &Rational::one(), &last);
        out
    })
}

fn check_shape(data: &FiniteRBData, f: &Cochain) -> Result<Bimodule, CohomologyError> {
    data.check_shapes()?;
    let m = data.bimodule();
    if f.dim_in != data.dim || f.dim_out != m.dim {
        return Err(super::DataError::Shape(format!(
            "cochain is {}→{}, data is {}→{}",
            f.dim_in, f.dim_out, data.dim, m.dim
        ))
        .into());
    }
    Ok(m)
}

/// `δ^n` on `Hom(A^{⊗n}, M)`.
pub fn hochschild_delta(data: &FiniteRBData, f: &Cochain) -> Result<Cochain, CohomologyError> {
    let m = check_shape(data, f)?;
    Ok(hochschild_general(|x, y| data.mul(x, y), &m, f))
}

/// `∂^n`, written out in terms of `μ`, `T` and `T_M`.
pub fn rbo_delta(data: &FiniteRBData, f: &Cochain) -> Result<Cochain, CohomologyError> {
    let m = check_shape(data, f)?;
    let n = f.arity;
    let d = data.dim;
    let lam = &data.lambda;
    let sgn = |e: usize| if e.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Ok(Cochain::from_fn(n + 1, d, m.dim, |t| {
        let a: Vec<Vector> = t.iter().map(|&i| basis(d, i)).collect();
        let mut out = zeros(m.dim);
        let rest = f.eval(&a[1..]);
        let mut first = m.act_left(&data.op(&a[0]), &rest);
        axpy(&mut first, &-Rational::one(), &m.op(&m.act_left(&a[0], &rest)));
        axpy(&mut out, &sgn(n + 1), &first);
        for i in 1..=n {
            let (x, y) = (&a[i - 1], &a[i]);
            let products = [
                (data.mul(x, &data.op(y)), Rational::one()),
                (data.mul(&data.op(x), y), Rational::one()),
                (data.mul(x, y), lam.clone()),
            ];
            for (p, c) in products {
                let mut args: Vec<Vector> = a[..i - 1].to_vec();
                args.push(p);
                args.extend_from_slice(&a[i + 1..]);
                axpy(&mut out, &(&sgn(n - i + 1) * &c), &f.eval(&args));
            }
        }
        let head = f.eval(&a[..n]);
        axpy(&mut out, &Rational::one(), &m.act_right(&head, &data.op(&a[n])));
        axpy(&mut out, &-Rational::one(), &m.op(&m.act_right(&head, &a[n])));
        out
    }))
}

/// `∂^n` as the Hochschild differential of `A_⋆` with coefficients in `⊳M⊲`.
pub fn rbo_delta_via_star(data: &FiniteRBData, f: &Cochain) -> Result<Cochain, CohomologyError> {
    let m = check_shape(data, f)?;
    let star = star_unchecked(data);
    let desc = descendent_unchecked(data, &m);
    Ok(hochschild_general(|x, y| star.mul(x, y), &desc, f))
}

/// `Φ^n`; `Φ^0` is the identity of `M`.
pub fn phi(data: &FiniteRBData, f: &Cochain) -> Result<Cochain, CohomologyError> {
    let m = check_shape(data, f)?;
    let n = f.arity;
    if n == 0 {
        return Ok(f.clone());
    }
    let d = data.dim;
    let lam = &data.lambda;
    Ok(Cochain::from_fn(n, d, m.dim, |t| {
        let a: Vec<Vector> = t.iter().map(|&i| basis(d, i)).collect();
        let ta: Vec<Vector> = a.iter().map(|x| data.op(x)).collect();
        let mut out = f.eval(&ta);
        for k in 0..n {
            let mut weight = Rational::one();
            for _ in 0..n - k - 1 {
                weight *= lam;
            }
            if weight.is_zero() {
                continue;
            }
            for pos in combinations(n, k) {
                let args: Vec<Vector> = (0..n).map(|j| if pos.contains(&j) { ta[j].clone() } else { a[j].clone() }).collect();
                axpy(&mut out, &-weight.clone(), &m.op(&f.eval(&args)));
            }
        }
        out
    }))
}

/// `d^n(f, g) = (δ^n f, −∂^{n−1} g − Φ^n f)`; `g` is absent for `n = 0`.
pub fn cone_delta(data: &FiniteRBData, f: &Cochain, g: Option<&Cochain>) -> Result<(Cochain, Cochain), CohomologyError> {
    let n = f.arity;
    let df = hochschild_delta(data, f)?;
    let mut second = phi(data, f)?.neg();
    match (n, g) {
        (0, None) => {}
        (0, Some(_)) => return Err(CohomologyError::Arity { got: 0, want: 0 }),
        (_, Some(g)) if g.arity + 1 == n => second = second.add(&rbo_delta(data, g)?.neg()),
        (_, Some(g)) => return Err(CohomologyError::Arity { got: g.arity, want: n - 1 }),
        (_, None) => return Err(CohomologyError::Arity { got: 0, want: n - 1 }),
    }
    Ok((df, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplexId {
    Alg,
    Rbo,
    Rba,
}

impl std::str::FromStr for ComplexId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "ALG" => Ok(ComplexId::Alg),
            "RBO" => Ok(ComplexId::Rbo),
            "RBA" => Ok(ComplexId::Rba),
            _ => Err(format!("unknown complex {s:?} (expected ALG, RBO or RBA)")),
        }
    }
}

fn cochain_dim(data: &FiniteRBData, n: usize) -> usize {
    data.dim.pow(n as u32) * data.bimodule().dim
}

/// Dimension of the `n`-th cochain space of a complex.
pub fn complex_dim(data: &FiniteRBData, id: ComplexId, n: usize) -> usize {
    match id {
        ComplexId::Alg | ComplexId::Rbo => cochain_dim(data, n),
        ComplexId::Rba => cochain_dim(data, n) + if n == 0 { 0 } else { cochain_dim(data, n - 1) },
    }
}

/// Applies the differential of `id` to coordinates in degree `n`.
fn apply(data: &FiniteRBData, id: ComplexId, n: usize, x: &[Rational]) -> Vector {
    let (d, e) = (data.dim, data.bimodule().dim);
    match id {
        ComplexId::Alg => hochschild_delta(data, &Cochain::from_coords(n, d, e, x)).unwrap().coords(),
        ComplexId::Rbo => rbo_delta(data, &Cochain::from_coords(n, d, e, x)).unwrap().coords(),
        ComplexId::Rba => {
            let split = cochain_dim(data, n);
            let f = Cochain::from_coords(n, d, e, &x[..split]);
            let g = (n > 0).then(|| Cochain::from_coords(n - 1, d, e, &x[split..]));
            let (a, b) = cone_delta(data, &f, g.as_ref()).unwrap();
            let mut out = a.coords();
            out.extend(b.coords());
            out
        }
    }
}

/// The matrix of the differential `C^n → C^{n+1}`.
pub fn differential_matrix(data: &FiniteRBData, id: ComplexId, n: usize) -> Matrix {
    let src = complex_dim(data, id, n);
    let dst = complex_dim(data, id, n + 1);
    let cols: Vec<Vector> = (0..src).map(|j| apply(data, id, n, &basis(src, j))).collect();
    Matrix::from_columns(&cols, dst)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank {
    pub complex: ComplexId,
    pub degree: usize,
    pub dim_cochains: usize,
    /// Rank of `d^n`.
    pub rank_out: usize,
    /// Rank of `d^{n−1}` (0 for `n = 0`).
    pub rank_in: usize,
    pub betti: usize,
    /// A basis of the cocycles, in coordinates.
    pub cocycle_basis: Vec<Vector>,
}

/// `dim Ker d^n − dim Im d^{n−1}`, by exact elimination.
pub fn cohomology_rank(data: &FiniteRBData, id: ComplexId, n: usize) -> Result<Rank, CohomologyError> {
    let v = validate_rb(data)?;
    if let Some(w) = v.first() {
        return Err(CohomologyError::Invalid(w.to_string()));
    }
    let out = differential_matrix(data, id, n);
    let cocycle_basis = out.kernel();
    let rank_out = out.rank();
    let rank_in = if n == 0 { 0 } else { differential_matrix(data, id, n - 1).rank() };
    let dim_cochains = complex_dim(data, id, n);
    Ok(Rank {
        complex: id,
        degree: n,
        dim_cochains,
        rank_out,
        rank_in,
        betti: dim_cochains - rank_out - rank_in,
        cocycle_basis,
    })
}

/// Rank of the map induced by `Φ^n` from `H^n_Alg` to `H^n_RBO`.
fn induced_phi_rank(data: &FiniteRBData, n: usize) -> usize {
    let (d, e) = (data.dim, data.bimodule().dim);
    let cycles = differential_matrix(data, ComplexId::Alg, n).kernel();
    let mut vectors: Vec<Vector> = cycles
        .iter()
        .map(|z| phi(data, &Cochain::from_coords(n, d, e, z)).unwrap().coords())
        .collect();
    let len = cochain_dim(data, n);
    let boundaries: Vec<Vector> = if n == 0 {
        Vec::new()
    } else {
        let b = differential_matrix(data, ComplexId::Rbo, n - 1);
        (0..b.cols).map(|j| (0..b.rows).map(|i| b.get(i, j).clone()).collect()).collect()
    };
    let b_rank = span_rank(&boundaries, len);
    vectors.extend(boundaries);
    span_rank(&vectors, len) - b_rank
}

/// `dim H^n_RBA` directly and from the long exact sequence
/// `H^{n−1}_Alg → H^{n−1}_RBO → H^n_RBA → H^n_Alg → H^n_RBO`.
pub fn les_check(data: &FiniteRBData, n: usize) -> Result<(usize, usize), CohomologyError> {
    let direct = cohomology_rank(data, ComplexId::Rba, n)?.betti;
    let h_alg = cohomology_rank(data, ComplexId::Alg, n)?.betti;
    let ker = h_alg - induced_phi_rank(data, n);
    let coker = if n == 0 {
        0
    } else {
        cohomology_rank(data, ComplexId::Rbo, n - 1)?.betti - induced_phi_rank(data, n - 1)
    };
    Ok((direct, ker + coker))
}

/// `Σ_{n≤N} (−1)^n dim C^n` against `Σ_{n≤N} (−1)^n b_n + (−1)^N rank d^N`;
/// the last term accounts for truncating the complex at `N`.
pub fn euler_check(data: &FiniteRBData, id: ComplexId, max_n: usize) -> Result<(i64, i64), CohomologyError> {
    let mut lhs = 0i64;
    let mut rhs = 0i64;
    let mut last_rank = 0;
    for n in 0..=max_n {
        let r = cohomology_rank(data, id, n)?;
        let s = if n % 2 == 0 { 1 } else { -1 };
        lhs += s * r.dim_cochains as i64;
        rhs += s * r.betti as i64;
        last_rank = r.rank_out;
    }
    let s = if max_n.is_multiple_of(2) { 1 } else { -1 };
    Ok((lhs, rhs + s * last_rank as i64))
}
