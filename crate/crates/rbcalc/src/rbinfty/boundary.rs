//! The differential on generators and its extension as a derivation.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::freeoperad::{brace, compose, Accumulator, GenKind, Generator, OperadElement, TreeMonomial};
use crate::scalar::Scalar;
use crate::sign::{combinations, compositions};

fn gen(g: Generator) -> OperadElement {
    OperadElement::generator(g)
}

fn sign(odd: usize) -> Scalar {
    Scalar::sign(odd % 2 == 1)
}

fn c(e: &OperadElement, i: usize, g: &OperadElement) -> OperadElement {
    compose(e, i, g).expect("slot in range by construction")
}

fn boundary_m(n: usize) -> OperadElement {
    let mut acc = Accumulator::default();
    for j in 2..n {
        for i in 1..=n - j + 1 {
            let term = c(&gen(Generator::m(n - j + 1)), i, &gen(Generator::m(j)));
            acc.add_element(&term, &sign(i + j * (n - i)));
        }
    }
    acc.finish()
}

/// `m_k` with `T_{l_1}, ..., T_{l_k}` on all of its inputs.
fn m_of_ts(ls: &[usize]) -> OperadElement {
    let mut e = gen(Generator::m(ls.len()));
    let mut slot = 1;
    for &l in ls {
        e = c(&e, slot, &gen(Generator::t(l)));
        slot += l;
    }
    e
}

/// `m_p` with `T_{r_2}, ..., T_{r_q}` inserted at inputs `k_1 < ... < k_{q-1}`
/// (1-based, counted on `m_p`).
fn m_with_ts_at(p: usize, rs: &[usize], ks: &[usize]) -> OperadElement {
    let mut e = gen(Generator::m(p));
    let mut shift = 0;
    for (&r, &k) in rs.iter().zip(ks) {
        e = c(&e, k + shift, &gen(Generator::t(r)));
        shift += r - 1;
    }
    e
}

fn boundary_t(n: usize) -> OperadElement {
    let mut acc = Accumulator::default();
    for k in 2..=n {
        for ls in compositions(n, k) {
            let alpha = 1 + (1..=k).map(|j| (k - j) * (ls[j - 1] - 1)).sum::<usize>();
            acc.add_element(&m_of_ts(&ls), &sign(alpha));
        }
    }
    for p in 2..=n {
        for q in 1..=p {
            for rs in compositions(n - p + q, q) {
                let r1 = rs[0];
                let tail = &rs[1..];
                let excess: usize = tail.iter().map(|r| r - 1).sum();
                for ks0 in combinations(p, q - 1) {
                    let ks: Vec<usize> = ks0.iter().map(|k| k + 1).collect();
                    let inner = m_with_ts_at(p, tail, &ks);
                    let kterm: usize = tail.iter().zip(&ks).map(|(r, k)| (r - 1) * (p - k)).sum();
                    for i in 1..=r1 {
                        let beta = 1 + i + (p + excess) * (r1 - i) + kterm;
                        let term = c(&gen(Generator::t(r1)), i, &inner);
                        acc.add_element(&term, &(&sign(beta) * &Scalar::lambda_pow((p - q) as u32)));
                    }
                }
            }
        }
    }
    acc.finish()
}

fn boundary_x(n: usize) -> OperadElement {
    let mut acc = Accumulator::default();
    for j in 2..n {
        let b = brace(&gen(Generator::x(n - j + 1)), &[gen(Generator::x(j))]).unwrap();
        acc.add_element(&b, &Scalar::int(-1));
    }
    acc.finish()
}

fn boundary_y(n: usize) -> OperadElement {
    let mut acc = Accumulator::default();
    for k in 2..=n {
        for rs in compositions(n, k) {
            let ys: Vec<OperadElement> = rs.iter().map(|&r| gen(Generator::y(r))).collect();
            let b = brace(&gen(Generator::x(k)), &ys).unwrap();
            acc.add_element(&b, &Scalar::int(-1));
        }
    }
    for p in 2..=n {
        for q in 1..=p {
            for rs in compositions(n + q - p, q) {
                let ys: Vec<OperadElement> = rs[1..].iter().map(|&r| gen(Generator::y(r))).collect();
                let inner = brace(&gen(Generator::x(p)), &ys).unwrap();
                let b = brace(&gen(Generator::y(rs[0])), &[inner]).unwrap();
                acc.add_element(&b, &Scalar::lambda_pow((p - q) as u32));
            }
        }
    }
    acc.finish()
}

fn cache() -> &'static Mutex<HashMap<Generator, OperadElement>> {
    static CACHE: OnceLock<Mutex<HashMap<Generator, OperadElement>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The differential of a single generator.
pub fn boundary_generator(g: Generator) -> OperadElement {
    if let Some(e) = cache().lock().unwrap().get(&g) {
        return e.clone();
    }
    let e = match g.kind {
        GenKind::M => boundary_m(g.arity),
        GenKind::T => boundary_t(g.arity),
        GenKind::X => boundary_x(g.arity),
        GenKind::Y => boundary_y(g.arity),
    };
    cache().lock().unwrap().insert(g, e.clone());
    e
}

/// Extends a generator differential to monomials as a derivation: the term
/// at vertex `v` carries the sign of the degrees of the vertices before `v`.
pub fn boundary_with<F>(e: &OperadElement, mut on_generator: F) -> OperadElement
where
    F: FnMut(Generator) -> OperadElement,
{
    let mut acc = Accumulator::default();
    for (m, coef) in e.terms() {
        boundary_monomial_into(m, coef, &mut on_generator, &mut acc);
    }
    acc.finish()
}

pub(crate) fn boundary_monomial_into<F>(m: &TreeMonomial, coef: &Scalar, on_generator: &mut F, acc: &mut Accumulator)
where
    F: FnMut(Generator) -> OperadElement,
{
    let mut before = 0i64;
    for (v, g) in m.decorations().iter().enumerate() {
        let dg = on_generator(*g);
        for (piece, x) in dg.terms() {
            let (neg, out) = m.substitute(v, piece);
            let negative = neg ^ (before & 1 == 1);
            acc.add_signed(out, &(coef * x), negative);
        }
        before += g.degree();
    }
}

pub fn boundary(e: &OperadElement) -> OperadElement {
    boundary_with(e, boundary_generator)
}
