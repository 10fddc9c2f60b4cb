//! `k[x]` with the integration operator `T(x^n) = x^{n+1}/(n+1)` at weight 0,
//! truncated to degrees below `N`. Identities are only asserted when every
//! intermediate term has degree below `N`.

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::report::{CheckResult, Report};
use crate::scalar::{ratio, Rational};

use super::complex::{phi, rbo_delta, Cochain};
use super::data::{basis, zeros, FiniteRBData, Vector};
use super::{add, scale};

/// The truncated model: basis `x^0, ..., x^{N−1}`, products and `T` that
/// leave the range are dropped.
pub fn kx_data(trunc: usize) -> FiniteRBData {
    let mu = (0..trunc)
        .map(|i| (0..trunc).map(|j| if i + j < trunc { basis(trunc, i + j) } else { zeros(trunc) }).collect())
        .collect();
    let t = (0..trunc)
        .map(|i| {
            if i + 1 < trunc {
                let mut v = zeros(trunc);
                v[i + 1] = ratio(1, i as i64 + 1);
                v
            } else {
                zeros(trunc)
            }
        })
        .collect();
    FiniteRBData::new(Rational::zero(), mu, t).with_regular_module()
}

#[derive(Debug, Clone)]
pub struct KxReport {
    pub trunc: usize,
    pub report: Report,
    /// `dim` of the truncated `∂¹`-cocycle space for each shift `s` (f(x^n) ∈ k·x^{n+s}).
    pub cocycles_by_shift: Vec<(i64, usize)>,
}

fn mono(n: usize, k: usize) -> Vector {
    basis(n, k)
}

/// `f_a(x^n) = x^n a − nT(x^{n−1}a)` in the truncated model.
fn f_a(data: &FiniteRBData, a: &[Rational], n: usize) -> Vector {
    let d = data.dim;
    let mut out = data.mul(&mono(d, n), a);
    if n > 0 {
        let t = data.op(&data.mul(&mono(d, n - 1), a));
        out = add(&out, &scale(&-Rational::from_integer((n as i64).into()), &t));
    }
    out
}

/// The checks on the truncated model; `max_derivation_degree` bounds `deg d(x)`.
pub fn kx_example(trunc: usize, max_derivation_degree: usize) -> Result<KxReport, String> {
    if trunc < 3 {
        return Err(format!("truncation degree {trunc} is too small (need at least 3)"));
    }
    if max_derivation_degree + 2 > trunc {
        return Err(format!("derivations with deg d(x) = {max_derivation_degree} leave the truncation {trunc}"));
    }
    let n = trunc;
    let data = kx_data(n);
    let mut report = Report::default();

    // (a) associativity and the Rota-Baxter relation in range
    let mut rb = CheckResult::new("kx_rota_baxter_in_range");
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (mono(n, i), mono(n, j));
            for k in 0..n {
                if i + j + k < n {
                    let c = mono(n, k);
                    let ok = data.mul(&data.mul(&a, &b), &c) == data.mul(&a, &data.mul(&b, &c));
                    rb.record(ok, || format!("associativity at (x^{i}, x^{j}, x^{k})"));
                }
            }
            if i + j + 2 < n {
                let (ta, tb) = (data.op(&a), data.op(&b));
                // weight 0: no λab term
                let inner = add(&data.mul(&a, &tb), &data.mul(&ta, &b));
                let ok = data.mul(&ta, &tb) == data.op(&inner);
                rb.record(ok, || format!("T(x^{i})T(x^{j}) = T(x^{i}T(x^{j}) + T(x^{i})x^{j})"));
            }
        }
    }
    report.push(rb);

    // (b) ∂¹-cocycles, one shift at a time
    let mut cocycle_check = CheckResult::new("kx_cocycles_are_f_a");
    let mut recursion_check = CheckResult::new("kx_cocycle_recursion");
    let mut cocycles_by_shift = Vec::new();
    for s in -(n as i64 - 1)..=(n as i64 - 2) {
        // unknowns: c_k with f(x^k) = c_k x^{k+s}
        let ks: Vec<usize> = (0..n).filter(|&k| {
            let out = k as i64 + s;
            out >= 0 && out < n as i64
        }).collect();
        if ks.is_empty() {
            continue;
        }
        let cochain_of = |coefs: &[Rational]| -> Cochain {
            Cochain::from_fn(1, n, n, |t| {
                match ks.iter().position(|&k| k == t[0]) {
                    Some(p) => scale(&coefs[p], &mono(n, (t[0] as i64 + s) as usize)),
                    None => zeros(n),
                }
            })
        };
        // guarded pairs: the input x^{m+n+1} and every output stay in range
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| p + q + 1 < n && (p + q + 1) as i64 + s < n as i64 && (p + q + 1) as i64 + s >= 0)
            .collect();
        let columns: Vec<Vector> = (0..ks.len())
            .map(|j| {
                let mut e = vec![Rational::zero(); ks.len()];
                e[j] = Rational::one();
                let d = rbo_delta(&data, &cochain_of(&e)).expect("shapes agree");
                pairs
                    .iter()
                    .map(|&(p, q)| d.at(&[p, q])[((p + q + 1) as i64 + s) as usize].clone())
                    .collect()
            })
            .collect();
        let kernel = Matrix::from_columns(&columns, pairs.len()).kernel();
        cocycles_by_shift.push((s, kernel.len()));
        cocycle_check.record(kernel.len() == usize::from(s >= 0), || {
            format!("shift {s}: cocycle space has dimension {}", kernel.len())
        });
        for v in &kernel {
            let f = cochain_of(v);
            let f1 = f.eval(&[mono(n, 0)]);
            // the displayed recursion from m = 0
            for k in 0..n {
                let next = k + 1;
                if next >= n || (next as i64 + s) >= n as i64 || !ks.contains(&next) {
                    continue;
                }
                let fk = f.eval(&[mono(n, k)]);
                let x = mono(n, 1);
                let mut rhs = data.mul(&x, &fk);
                rhs = add(&rhs, &scale(&-Rational::one(), &data.op(&fk)));
                rhs = add(&rhs, &scale(&ratio(1, k as i64 + 1), &data.mul(&f1, &mono(n, k + 1))));
                rhs = add(&rhs, &scale(&-Rational::one(), &data.op(&data.mul(&f1, &mono(n, k)))));
                let rhs = scale(&ratio(k as i64 + 1, k as i64 + 2), &rhs);
                let lhs = f.eval(&[mono(n, next)]);
                recursion_check.record(lhs == rhs, || format!("shift {s}: recursion fails at x^{next}"));
            }
            for &k in &ks {
                let want = f_a(&data, &f1, k);
                let got = f.eval(&[mono(n, k)]);
                cocycle_check.record(want == got, || format!("shift {s}: f(x^{k}) differs from f_a(x^{k})"));
            }
        }
    }
    report.push(cocycle_check);
    report.push(recursion_check);

    // (c), (d) derivations: Φ¹(d)(1) = d(x), and Φ¹(d_a) = f_a in range
    let mut inj = CheckResult::new("kx_phi1_injective");
    let mut surj = CheckResult::new("kx_phi1_hits_f_a");
    let mut images = Vec::new();
    for j in 0..=max_derivation_degree {
        let a = mono(n, j);
        // d(x^k) = k x^{k−1} a
        let der = Cochain::from_fn(1, n, n, |t| {
            let k = t[0];
            if k == 0 || k - 1 + j >= n {
                zeros(n)
            } else {
                scale(&Rational::from_integer((k as i64).into()), &mono(n, k - 1 + j))
            }
        });
        let image = phi(&data, &der).expect("shapes agree");
        let at_one = image.eval(&[mono(n, 0)]);
        inj.record(at_one == a, || format!("Φ¹(d)(1) ≠ d(x) for d(x) = x^{j}"));
        images.push(at_one);
        for k in 0..n {
            if k + 1 + j >= n {
                break;
            }
            let ok = image.eval(&[mono(n, k)]) == f_a(&data, &a, k);
            surj.record(ok, || format!("Φ¹(d)(x^{k}) ≠ f_a(x^{k}) for a = x^{j}"));
        }
    }
    let rank = Matrix::from_rows(images.clone(), n).rank();
    inj.record(rank == images.len(), || format!("Φ¹(d)(1) spans only {rank} dimensions"));
    report.push(inj);
    report.push(surj);

    Ok(KxReport {
        trunc,
        report,
        cocycles_by_shift,
    })
}

/// `x^m ⋆ x^n` in the truncated model, as its leading term.
#[cfg(test)]
pub(crate) fn star_coefficient(trunc: usize, m: usize, n: usize) -> Option<String> {
    let data = kx_data(trunc);
    let star = super::star_unchecked(&data);
    let v = star.mul(&mono(trunc, m), &mono(trunc, n));
    let d = v.iter().rposition(|x| !x.is_zero())?;
    Some(format!("{}·x^{d}", crate::scalar::fmt_rational(&v[d])))
}
