//! Exhaustive sweeps behind the minimal-model statement.

use crate::freeoperad::{GenKind, Generator, OperadElement, TreeMonomial};
use crate::report::{CheckResult, Report};
use crate::trees::enumerate_trees;

use super::boundary::{boundary, boundary_generator};
use super::effective::typical_source;
use super::homotopy::Homotopy;

/// The generators `m_n` (n ≥ 2) and `T_n` (n ≥ 1) of arity at most `max_arity`.
pub fn generators(max_arity: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for n in 1..=max_arity {
        if n >= 2 {
            out.push(Generator::m(n));
        }
        out.push(Generator::t(n));
    }
    out
}

/// Every tree monomial in `m`, `T` with arity ≤ `max_arity` and
/// 1 ≤ weight ≤ `max_weight`.
pub fn all_monomials(max_arity: usize, max_weight: usize) -> Vec<TreeMonomial> {
    let mut out = Vec::new();
    for arity in 1..=max_arity {
        for weight in 1..=max_weight {
            for tree in enumerate_trees(weight, arity) {
                let arities = tree.vertex_arities();
                let mut decs = Vec::with_capacity(weight);
                fill(&tree, &arities, &mut decs, &mut out);
            }
        }
    }
    out
}

fn fill(tree: &crate::trees::PlanarTree, arities: &[usize], decs: &mut Vec<Generator>, out: &mut Vec<TreeMonomial>) {
    let v = decs.len();
    if v == arities.len() {
        out.push(TreeMonomial::new(tree.clone(), decs.clone()).expect("arities match"));
        return;
    }
    let k = arities[v];
    if k >= 2 {
        decs.push(Generator::m(k));
        fill(tree, arities, decs, out);
        decs.pop();
    }
    decs.push(Generator::t(k));
    fill(tree, arities, decs, out);
    decs.pop();
}

/// `∂∂g = 0` for every generator of arity ≤ `max_arity`.
pub fn verify_d2(max_arity: usize) -> CheckResult {
    let mut check = CheckResult::new("d2_generators");
    for g in generators(max_arity) {
        let dd = boundary(&boundary_generator(g));
        check.record(dd.is_zero(), || format!("∂∂{g} = {dd}"));
    }
    check
}

/// For positive-degree generators the leading term of `∂S` is typical with
/// source `S` and coefficient ±1.
pub fn verify_leading_terms(max_arity: usize) -> CheckResult {
    let mut check = CheckResult::new("leading_term_typical");
    for g in generators(max_arity).into_iter().filter(|g| g.degree() > 0) {
        let d = boundary_generator(g);
        let ok = match d.leading_term() {
            Ok((c, m)) => {
                let unit = c.as_constant().is_some_and(|x| x == crate::scalar::rat(1) || x == crate::scalar::rat(-1));
                unit && typical_source(&m) == Some(g)
            }
            Err(_) => false,
        };
        check.record(ok, || format!("leading term of ∂{g}: {:?}", d.leading_term().ok()));
    }
    check
}

pub fn verify_minimal_model(max_arity: usize, max_weight: usize) -> Report {
    let mut report = Report::default();
    report.push(verify_d2(max_arity));
    report.push(verify_leading_terms(max_arity));

    let monomials = all_monomials(max_arity, max_weight);
    let mut d2 = CheckResult::new("d2_monomials");
    let mut degree = CheckResult::new("degree_bookkeeping");
    let mut identity = CheckResult::new("dH_plus_Hd_is_identity");
    let mut h = Homotopy::new();
    for m in &monomials {
        let x = OperadElement::monomial(m.clone());
        let dx = boundary(&x);
        let ddx = boundary(&dx);
        d2.record(ddx.is_zero(), || format!("∂∂({m}) = {ddx}"));
        if m.degree() <= 0 {
            continue;
        }
        let hx = h.apply(&x);
        let ok = (hx.is_zero() || hx.degree() == Some(m.degree() + 1))
            && (dx.is_zero() || dx.degree() == Some(m.degree() - 1));
        degree.record(ok, || format!("degrees around {m}"));
        let lhs = boundary(&hx).add(&h.apply(&dx));
        identity.record(lhs == x, || format!("(∂H+H∂)({m}) = {lhs}"));
    }
    report.push(d2);
    report.push(degree);
    report.push(identity);
    report
}

/// The shifted family `x_n`, `y_n` also squares to zero.
pub fn verify_d2_shifted(max_arity: usize) -> CheckResult {
    let mut check = CheckResult::new("d2_shifted_generators");
    for n in 1..=max_arity {
        let mut gs = vec![Generator { kind: GenKind::Y, arity: n }];
        if n >= 2 {
            gs.push(Generator { kind: GenKind::X, arity: n });
        }
        for g in gs {
            let dd = boundary(&boundary_generator(g));
            check.record(dd.is_zero(), || format!("∂∂{g} = {dd}"));
        }
    }
    check
}
