//! Cohomology of Rota-Baxter algebras with coefficients in Rota-Baxter
//! bimodules, for algebras given by structure constants.

mod complex;
mod data;
mod kx;
mod random;

use crate::scalar::fmt_rational;

pub use complex::{
    cohomology_rank, cone_delta, euler_check, hochschild_delta, les_check, phi, rbo_delta, rbo_delta_via_star,
    Cochain, ComplexId, Rank,
};
pub use data::{Bimodule, DataError, FiniteRBData, Vector};
pub use kx::{kx_data, kx_example, KxReport};
pub use random::{random_associative, random_lambda, random_structure, random_valid_rb, RandomRb};

pub(crate) use data::{add, basis, scale, sub, zeros};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error("not a Rota-Baxter algebra: {0}")]
    Invalid(String),
    #[error("cochain of arity {got} where {want} was expected")]
    Arity { got: usize, want: usize },
}

/// The outcome of `validate_rb`: every violated identity with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub violations: Vec<String>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&str> {
        self.violations.first().map(String::as_str)
    }
}

fn fmt_vec(v: &[crate::scalar::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("[{}]", parts.join(", "))
}

/// `(e_i e_j) e_k = e_i (e_j e_k)` on basis triples.
pub fn associativity_violation(data: &FiniteRBData) -> Option<String> {
    let d = data.dim;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (a, b, c) = (basis(d, i), basis(d, j), basis(d, k));
                let l = data.mul(&data.mul(&a, &b), &c);
                let r = data.mul(&a, &data.mul(&b, &c));
                if l != r {
                    return Some(format!(
                        "associativity fails at (e{i}, e{j}, e{k}): {} vs {}",
                        fmt_vec(&l),
                        fmt_vec(&r)
                    ));
                }
            }
        }
    }
    None
}

/// `T(a)T(b) = T(aT(b) + T(a)b + λab)` on basis pairs.
pub fn rb_violation(data: &FiniteRBData) -> Option<String> {
    let d = data.dim;
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (basis(d, i), basis(d, j));
            let (ta, tb) = (data.op(&a), data.op(&b));
            let l = data.mul(&ta, &tb);
            let inner = add(&add(&data.mul(&a, &tb), &data.mul(&ta, &b)), &scale(&data.lambda, &data.mul(&a, &b)));
            let r = data.op(&inner);
            if l != r {
                return Some(format!(
                    "Rota-Baxter relation fails at (e{i}, e{j}): {} vs {}",
                    fmt_vec(&l),
                    fmt_vec(&r)
                ));
            }
        }
    }
    None
}

/// Bimodule associativity and both operator identities for `(M, T_M)`.
pub fn bimodule_violation(data: &FiniteRBData, m: &Bimodule) -> Option<String> {
    let d = data.dim;
    let e = m.dim;
    let lam = &data.lambda;
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (basis(d, i), basis(d, j));
            let ab = data.mul(&a, &b);
            for k in 0..e {
                let x = basis(e, k);
                let checks = [
                    ("(ab)m = a(bm)", m.act_left(&ab, &x), m.act_left(&a, &m.act_left(&b, &x))),
                    ("(am)b = a(mb)", m.act_right(&m.act_left(&a, &x), &b), m.act_left(&a, &m.act_right(&x, &b))),
                    ("(ma)b = m(ab)", m.act_right(&m.act_right(&x, &a), &b), m.act_right(&x, &ab)),
                ];
                for (name, l, r) in checks {
                    if l != r {
                        return Some(format!("bimodule axiom {name} fails at (e{i}, e{j}, f{k})"));
                    }
                }
            }
        }
        let a = basis(d, i);
        let ta = data.op(&a);
        for k in 0..e {
            let x = basis(e, k);
            let tx = m.op(&x);
            let l = m.act_left(&ta, &tx);
            let r = m.op(&add(
                &add(&m.act_left(&a, &tx), &m.act_left(&ta, &x)),
                &scale(lam, &m.act_left(&a, &x)),
            ));
            if l != r {
                return Some(format!("T(a)T_M(m) = T_M(aT_M(m) + T(a)m + λam) fails at (e{i}, f{k})"));
            }
            let l = m.act_right(&tx, &ta);
            let r = m.op(&add(
                &add(&m.act_right(&tx, &a), &m.act_right(&x, &ta)),
                &scale(lam, &m.act_right(&x, &a)),
            ));
            if l != r {
                return Some(format!("T_M(m)T(a) = T_M(T_M(m)a + mT(a) + λma) fails at (f{k}, e{i})"));
            }
        }
    }
    None
}

/// Associativity, the Rota-Baxter relation and, when a bimodule is present,
/// the bimodule equations.
pub fn validate_rb(data: &FiniteRBData) -> Result<Verdict, DataError> {
    data.check_shapes()?;
    let mut v = Verdict::default();
    v.violations.extend(associativity_violation(data));
    v.violations.extend(rb_violation(data));
    if let Some(m) = &data.module {
        v.violations.extend(bimodule_violation(data, m));
    }
    Ok(v)
}

fn require_valid(data: &FiniteRBData) -> Result<(), CohomologyError> {
    let v = validate_rb(data)?;
    match v.first() {
        Some(w) => Err(CohomologyError::Invalid(w.to_string())),
        None => Ok(()),
    }
}

/// `(A, ⋆, T)` with `a⋆b = aT(b) + T(a)b + λab`.
pub fn star_algebra(data: &FiniteRBData) -> Result<FiniteRBData, CohomologyError> {
    require_valid(data)?;
    Ok(star_unchecked(data))
}

pub(crate) fn star_unchecked(data: &FiniteRBData) -> FiniteRBData {
    let d = data.dim;
    let mut mu = vec![vec![zeros(d); d]; d];
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (basis(d, i), basis(d, j));
            mu[i][j] = add(
                &add(&data.mul(&a, &data.op(&b)), &data.mul(&data.op(&a), &b)),
                &scale(&data.lambda, &data.mul(&a, &b)),
            );
        }
    }
    FiniteRBData {
        dim: d,
        lambda: data.lambda.clone(),
        mu,
        t: data.t.clone(),
        module: None,
    }
}

/// `a⊳m = T(a)m − T_M(am)` and `m⊲a = mT(a) − T_M(ma)` with the same `T_M`.
pub fn descendent_bimodule(data: &FiniteRBData) -> Result<Bimodule, CohomologyError> {
    let m = data.module.as_ref().ok_or(DataError::MissingBimodule)?;
    require_valid(data)?;
    Ok(descendent_unchecked(data, m))
}

pub(crate) fn descendent_unchecked(data: &FiniteRBData, m: &Bimodule) -> Bimodule {
    let d = data.dim;
    let e = m.dim;
    let mut left = vec![vec![zeros(e); e]; d];
    let mut right = vec![vec![zeros(e); d]; e];
    for i in 0..d {
        let a = basis(d, i);
        let ta = data.op(&a);
        for k in 0..e {
            let x = basis(e, k);
            left[i][k] = sub(&m.act_left(&ta, &x), &m.op(&m.act_left(&a, &x)));
            right[k][i] = sub(&m.act_right(&x, &ta), &m.op(&m.act_right(&x, &a)));
        }
    }
    Bimodule {
        dim: e,
        left,
        right,
        tm: m.tm.clone(),
    }
}

/// `T(a⋆b) = T(a)T(b)` on basis pairs.
pub fn morphism_violation(data: &FiniteRBData) -> Option<String> {
    let star = star_unchecked(data);
    let d = data.dim;
    for i in 0..d {
        for j in 0..d {
            let (a, b) = (basis(d, i), basis(d, j));
            if data.op(&star.mul(&a, &b)) != data.mul(&data.op(&a), &data.op(&b)) {
                return Some(format!("T(a⋆b) = T(a)T(b) fails at (e{i}, e{j})"));
            }
        }
    }
    None
}
