//! Random Rota-Baxter algebras built from families that are valid by
//! construction, moved to a random basis.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::Matrix;
use crate::scalar::{rat, ratio, Rational};

use super::data::{basis, scale, zeros, FiniteRBData, Vector};

/// Structure constants of one factor together with the operators it admits.
struct Factor {
    mu: Vec<Vec<Vector>>,
    /// Candidate operators valid for the given weight.
    ops: Vec<Vec<Vector>>,
}

fn table(d: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Vec<Vec<Vector>> {
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        out.push((0..d).map(|j| f(i, j)).collect());
    }
    out
}

fn scalar_id(d: usize, c: &Rational) -> Vec<Vector> {
    (0..d).map(|i| scale(c, &basis(d, i))).collect()
}

/// The unital truncated polynomial algebra `k[x]/(x^d)`.
fn truncated_poly(d: usize) -> Vec<Vec<Vector>> {
    table(d, |i, j| if i + j < d { basis(d, i + j) } else { zeros(d) })
}

/// `x k[x]/(x^{d+1})`: nilpotent, without unit.
fn nilpotent_poly(d: usize) -> Vec<Vec<Vector>> {
    table(d, |i, j| if i + j + 1 < d { basis(d, i + j + 1) } else { zeros(d) })
}

fn factor<R: Rng>(rng: &mut R, d: usize, lambda: &Rational) -> Factor {
    let zero_op = vec![zeros(d); d];
    let neg_id = scalar_id(d, &-lambda.clone());
    let mut ops = vec![zero_op, neg_id];
    let kind = rng.gen_range(0..4);
    let mu = match kind {
        0 => {
            // zero multiplication: every operator is Rota-Baxter
            let t: Vec<Vector> = (0..d).map(|_| (0..d).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect();
            ops.push(t);
            table(d, |_, _| zeros(d))
        }
        1 => {
            if d == 2 && lambda.is_zero() {
                // dual numbers with T(1) = cε, T(ε) = 0
                let c = rat(rng.gen_range(-3..=3));
                ops.push(vec![vec![Rational::zero(), c], zeros(2)]);
            }
            truncated_poly(d)
        }
        2 => nilpotent_poly(d),
        _ => {
            // the upper triangular 2×2 matrices: e11, e12, e22
            if d == 3 {
                table(3, |i, j| match (i, j) {
                    (0, 0) => basis(3, 0),
                    (0, 1) => basis(3, 1),
                    (1, 2) => basis(3, 1),
                    (2, 2) => basis(3, 2),
                    _ => zeros(3),
                })
            } else {
                truncated_poly(d)
            }
        }
    };
    Factor { mu, ops }
}

/// Block sum of factor algebras with a block operator.
fn assemble(parts: Vec<(Vec<Vec<Vector>>, Vec<Vector>)>, lambda: Rational) -> FiniteRBData {
    let dim: usize = parts.iter().map(|(m, _)| m.len()).sum();
    let mut mu = vec![vec![zeros(dim); dim]; dim];
    let mut t = vec![zeros(dim); dim];
    let mut off = 0;
    for (m, op) in &parts {
        let d = m.len();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    mu[off + i][off + j][off + k] = m[i][j][k].clone();
                }
            }
            for k in 0..d {
                t[off + i][off + k] = op[i][k].clone();
            }
        }
        off += d;
    }
    FiniteRBData::new(lambda, mu, t)
}

/// Rewrites the structure in the basis `b_i = Σ_j p[i][j] e_j`.
pub(crate) fn transport(data: &FiniteRBData, p: &[Vector]) -> FiniteRBData {
    let d = data.dim;
    // coordinates in the new basis: solve x = Σ c_i b_i, i.e. c = x P^{-1}
    let pt = Matrix::from_columns(p, d);
    let inv = invert(&pt);
    let to_new = |x: &[Rational]| inv.mul_vec(x);
    let mu = table(d, |i, j| to_new(&data.mul(&p[i], &p[j])));
    let t = (0..d).map(|i| to_new(&data.op(&p[i]))).collect();
    FiniteRBData::new(data.lambda.clone(), mu, t)
}

fn invert(m: &Matrix) -> Matrix {
    let n = m.rows;
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut r: Vector = m.row(i).to_vec();
            r.extend(basis(n, i));
            r
        })
        .collect();
    let (r, pivots) = Matrix::from_rows(rows, 2 * n).rref();
    assert_eq!(&pivots[..], &(0..n).collect::<Vec<_>>()[..], "singular change of basis");
    Matrix::from_rows((0..n).map(|i| r.row(i)[n..].to_vec()).collect(), n)
}

/// A unimodular integer matrix: a product of elementary row operations.
fn random_unimodular<R: Rng>(rng: &mut R, d: usize) -> Vec<Vector> {
    let mut p: Vec<Vector> = (0..d).map(|i| basis(d, i)).collect();
    if d < 2 {
        return p;
    }
    for _ in 0..d * 2 {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = rat(rng.gen_range(-2..=2));
        let row_j = p[j].clone();
        for (x, y) in p[i].iter_mut().zip(&row_j) {
            *x += &c * y;
        }
    }
    p.shuffle(rng);
    p
}

pub fn random_lambda<R: Rng>(rng: &mut R) -> Rational {
    let choices = [rat(0), rat(1), rat(-1), rat(2), ratio(1, 2), rat(-3)];
    choices[rng.gen_range(0..choices.len())].clone()
}

/// A random associative algebra of dimension `dim` (no operator).
pub fn random_associative<R: Rng>(rng: &mut R, dim: usize) -> Vec<Vec<Vector>> {
    random_valid_rb(rng, dim, Some(Rational::zero())).mu
}

/// A random valid Rota-Baxter algebra with its regular bimodule.
pub fn random_valid_rb<R: Rng>(rng: &mut R, dim: usize, lambda: Option<Rational>) -> FiniteRBData {
    let lambda = lambda.unwrap_or_else(|| random_lambda(rng));
    let mut sizes = Vec::new();
    let mut left = dim;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(3));
        sizes.push(s);
        left -= s;
    }
    let parts = sizes
        .into_iter()
        .map(|s| {
            let f = factor(rng, s, &lambda);
            let op = f.ops[rng.gen_range(0..f.ops.len())].clone();
            (f.mu, op)
        })
        .collect();
    let mut data = assemble(parts, lambda.clone());
    if rng.gen_bool(0.3) {
        // T ↦ −λ·id − T
        let neg: Vec<Vector> = (0..dim)
            .map(|i| {
                let mut r = scale(&-lambda.clone(), &basis(dim, i));
                for (x, y) in r.iter_mut().zip(&data.t[i]) {
                    *x -= y;
                }
                r
            })
            .collect();
        data.t = neg;
    }
    let p = random_unimodular(rng, dim);
    transport(&data, &p).with_regular_module()
}

/// A random structure that may or may not be associative or Rota-Baxter.
pub fn random_structure<R: Rng>(rng: &mut R, dim: usize) -> FiniteRBData {
    match rng.gen_range(0..4) {
        0 | 1 => random_valid_rb(rng, dim, None),
        2 => {
            let mut data = random_valid_rb(rng, dim, None);
            for row in data.t.iter_mut() {
                for x in row.iter_mut() {
                    if rng.gen_bool(0.5) {
                        *x = rat(rng.gen_range(-2..=2));
                    }
                }
            }
            data.module = None;
            data.with_regular_module()
        }
        _ => {
            let lambda = random_lambda(rng);
            let mu = table(dim, |_, _| {
                (0..dim)
                    .map(|_| if rng.gen_bool(0.3) { rat(rng.gen_range(-1..=1)) } else { Rational::zero() })
                    .collect()
            });
            let t = (0..dim).map(|_| (0..dim).map(|_| rat(rng.gen_range(-1..=1))).collect()).collect();
            FiniteRBData::new(lambda, mu, t).with_regular_module()
        }
    }
}

/// Convenience holder for a seeded stream of instances.
pub struct RandomRb {
    rng: rand_chacha::ChaCha8Rng,
}

impl RandomRb {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        RandomRb {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn valid(&mut self, dim: usize) -> FiniteRBData {
        random_valid_rb(&mut self.rng, dim, None)
    }

    pub fn any(&mut self, dim: usize) -> FiniteRBData {
        random_structure(&mut self.rng, dim)
    }

    pub fn rng(&mut self) -> &mut rand_chacha::ChaCha8Rng {
        &mut self.rng
    }
}
