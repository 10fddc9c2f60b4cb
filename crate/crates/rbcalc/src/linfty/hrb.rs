//! Homotopy Rota-Baxter algebras given by finitely many operations
//! `m_n` (degree `n − 2`, with `m_1 = d`) and `T_n` (degree `n − 1`) on a
//! graded space, and the identities they must satisfy.
//!
//! Two independent routes are provided: the identities written out as sums
//! over index tuples, and the morphism condition `φ∂ = ∂_End φ` evaluated
//! by pushing the differential of the free operad through `End_V`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::freeoperad::{GenKind, Generator, OperadElement, TreeMonomial};
use crate::rbinfty::boundary_generator;
use crate::report::{CheckResult, Report};
use crate::scalar::{parse_rational, Rational};
use crate::sign::compositions;

use super::{compose, sign_of, GradedSpace, Multilinear, Slot};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HrbError {
    #[error("malformed structure: {0}")]
    Json(String),
    #[error("{0}")]
    Shape(String),
}

/// Operations not listed are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyRBStructure {
    pub space: GradedSpace,
    pub lambda: Rational,
    /// `m_n` for `n ≥ 1`; `m_1` is the differential.
    pub m: BTreeMap<usize, Multilinear>,
    pub t: BTreeMap<usize, Multilinear>,
}

fn weak_compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    compositions(n + k, k)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x - 1).collect())
        .collect()
}

fn odd(e: usize) -> bool {
    e % 2 == 1
}

impl HomotopyRBStructure {
    pub fn new(space: GradedSpace, lambda: Rational) -> Self {
        HomotopyRBStructure {
            space,
            lambda,
            m: BTreeMap::new(),
            t: BTreeMap::new(),
        }
    }

    /// An ungraded Rota-Baxter algebra: `m_2 = μ`, `T_1 = T`, all else zero.
    pub fn from_rb(data: &crate::cohomology::FiniteRBData) -> Self {
        let (alg, alpha) = super::mc_element(data);
        let mut s = HomotopyRBStructure::new(alg.space.clone(), data.lambda.clone());
        s.m.insert(2, alpha.component(super::Part::Alg, 2));
        s.t.insert(1, alpha.component(super::Part::Rbo, 1));
        s
    }

    fn zero_of(n: usize) -> Multilinear {
        Multilinear::zero(n)
    }

    pub fn m_op(&self, n: usize) -> Multilinear {
        self.m.get(&n).cloned().unwrap_or_else(|| Self::zero_of(n))
    }

    pub fn t_op(&self, n: usize) -> Multilinear {
        self.t.get(&n).cloned().unwrap_or_else(|| Self::zero_of(n))
    }

    fn op(&self, g: Generator) -> Multilinear {
        match g.kind {
            GenKind::M => self.m_op(g.arity),
            GenKind::T => self.t_op(g.arity),
            // the desuspended families never occur in ∂ of m_n or T_n
            GenKind::X | GenKind::Y => Self::zero_of(g.arity),
        }
    }

    /// Entries whose degree differs from the degree of their operation.
    pub fn degree_violations(&self) -> Vec<String> {
        let degs = self.space.degrees();
        let mut out = Vec::new();
        for (name, family, shift) in [("m", &self.m, -2i64), ("T", &self.t, -1)] {
            for (n, map) in family {
                if map.arity() != *n {
                    out.push(format!("{name}{n} has arity {}", map.arity()));
                    continue;
                }
                for (ins, o, _) in map.entries() {
                    let d = degs[o] - ins.iter().map(|&a| degs[a]).sum::<i64>();
                    if d != *n as i64 + shift {
                        out.push(format!("{name}{n} entry {ins:?} -> {o} has degree {d}, expected {}", *n as i64 + shift));
                    }
                }
            }
        }
        out
    }

    /// The file format of `FiniteRBData` extended by operations of every
    /// arity: `{"degrees": [...], "lambda": .., "m": {"2": dense, ...},
    /// "T": {"1": dense, ...}}`. A dense table of arity `n` is nested `n + 1`
    /// deep with output coefficients innermost, so `"mu"` (read as `m_2`),
    /// a matrix `"T"` (read as `T_1`) and `"d"` (read as `m_1`) are accepted
    /// as they are. Without `"degrees"`, `"dim"` basis vectors sit in degree 0.
    pub fn from_json(text: &str) -> Result<Self, HrbError> {
        let v: Value = serde_json::from_str(text).map_err(|e| HrbError::Json(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| HrbError::Json("expected an object".into()))?;
        for key in obj.keys() {
            // "module" belongs to the cohomology data and is ignored here
            if !["dim", "degrees", "lambda", "mu", "d", "m", "T", "module"].contains(&key.as_str()) {
                return Err(HrbError::Json(format!("unknown field {key:?}")));
            }
        }
        let dim = match obj.get("dim") {
            Some(x) => Some(x.as_u64().ok_or_else(|| HrbError::Json("dim must be a non-negative integer".into()))? as usize),
            None => None,
        };
        let degrees: Vec<i64> = match (obj.get("degrees"), dim) {
            (Some(ds), _) => ds
                .as_array()
                .ok_or_else(|| HrbError::Json("degrees must be a list".into()))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| HrbError::Json("degrees must be integers".into())))
                .collect::<Result<_, _>>()?,
            (None, Some(d)) => vec![0; d],
            (None, None) => return Err(HrbError::Json("need \"degrees\" or \"dim\"".into())),
        };
        if dim.is_some_and(|d| d != degrees.len()) {
            return Err(HrbError::Shape(format!("dim is {} but {} degrees are given", dim.unwrap(), degrees.len())));
        }
        let lambda = match obj.get("lambda") {
            Some(x) => number(x)?,
            None => Rational::zero(),
        };
        let dim = degrees.len();
        let mut s = HomotopyRBStructure::new(GradedSpace::new(degrees), lambda);
        let put = |target: &mut BTreeMap<usize, Multilinear>, name: &str, n: usize, table: &Value| -> Result<(), HrbError> {
            if n == 0 {
                return Err(HrbError::Shape(format!("{name}0 does not exist")));
            }
            if target.contains_key(&n) {
                return Err(HrbError::Json(format!("{name}{n} is given twice")));
            }
            let mut map = Multilinear::zero(n);
            read_dense(table, n, dim, &mut Vec::new(), &mut map).map_err(|e| HrbError::Shape(format!("{name}{n}: {e}")))?;
            target.insert(n, map);
            Ok(())
        };
        if let Some(x) = obj.get("d") {
            put(&mut s.m, "m", 1, x)?;
        }
        if let Some(x) = obj.get("mu") {
            put(&mut s.m, "m", 2, x)?;
        }
        for (key, name) in [("m", "m"), ("T", "T")] {
            let Some(family) = obj.get(key) else { continue };
            if key == "T" && family.is_array() {
                put(&mut s.t, name, 1, family)?;
                continue;
            }
            let family = family
                .as_object()
                .ok_or_else(|| HrbError::Json(format!("\"{key}\" must map arities to tables")))?;
            for (arity, table) in family {
                let n: usize = arity
                    .parse()
                    .map_err(|_| HrbError::Json(format!("bad arity {arity:?} in \"{key}\"")))?;
                let target = if key == "m" { &mut s.m } else { &mut s.t };
                put(target, name, n, table)?;
            }
        }
        let bad = s.degree_violations();
        if let Some(first) = bad.first() {
            return Err(HrbError::Shape(first.clone()));
        }
        Ok(s)
    }

    fn degs(&self) -> &[i64] {
        self.space.degrees()
    }

    /// `f ∘ (id^i ⊗ g ⊗ id^k)` in `End_V`.
    fn partial(&self, f: &Multilinear, i: usize, g: (&Multilinear, i64)) -> Multilinear {
        let mut slots = vec![Slot::Id; f.arity()];
        slots[i] = Slot::Map(g.0, g.1);
        compose(f, &slots, self.degs())
    }

    /// `Σ_{i+j+k=n} (−1)^{i+jk} m_{i+1+k} ∘ (id^i ⊗ m_j ⊗ id^k)`.
    pub fn stasheff_residual(&self, n: usize) -> Multilinear {
        let mut out = Multilinear::zero(n);
        for j in 1..=n {
            let inner = self.m_op(j);
            if inner.is_zero() {
                continue;
            }
            for i in 0..=n - j {
                let k = n - j - i;
                let outer = self.m_op(i + 1 + k);
                let term = self.partial(&outer, i, (&inner, j as i64 - 2));
                out.add_scaled(&term, &sign_of(odd(i + j * k)));
            }
        }
        out
    }

    /// Left side minus right side of the operator identity in arity `n`,
    /// with the sign `η` computed by `eta`.
    fn rb_residual_with(&self, n: usize, eta: impl Fn(&EtaIndex) -> usize) -> Multilinear {
        let mut out = Multilinear::zero(n);
        // Σ (−1)^δ m_k ∘ (T_{l_1} ⊗ ... ⊗ T_{l_k})
        for k in 1..=n {
            let mk = self.m_op(k);
            if mk.is_zero() {
                continue;
            }
            for ls in compositions(n, k) {
                let ts: Vec<Multilinear> = ls.iter().map(|&l| self.t_op(l)).collect();
                let slots: Vec<Slot> = ts.iter().zip(&ls).map(|(t, &l)| Slot::Map(t, l as i64 - 1)).collect();
                let delta = k * (k - 1) / 2 + n * (n - 1) / 2 + ls.iter().enumerate().map(|(j, l)| (k - 1 - j) * l).sum::<usize>();
                out.add_scaled(&compose(&mk, &slots, self.degs()), &sign_of(odd(delta)));
            }
        }
        // minus Σ (−1)^η λ^{p−q} T_{r_1} ∘ (id^i ⊗ m_p ∘ (id^{j_1} ⊗ T_{r_2} ⊗ ... ⊗ id^{j_q}) ⊗ id^k)
        for p in 1..=n {
            let mp = self.m_op(p);
            if mp.is_zero() {
                continue;
            }
            for q in 1..=p {
                let mut weight = Rational::one();
                for _ in 0..p - q {
                    weight *= &self.lambda;
                }
                if weight.is_zero() {
                    continue;
                }
                for rs in compositions(n + q - p, q) {
                    let tr1 = self.t_op(rs[0]);
                    if tr1.is_zero() {
                        continue;
                    }
                    let inner_ts: Vec<Multilinear> = rs[1..].iter().map(|&r| self.t_op(r)).collect();
                    for js in weak_compositions(p + 1 - q, q) {
                        // m_p ∘ (id^{j_1} ⊗ T_{r_2} ⊗ id^{j_2} ⊗ ... ⊗ T_{r_q} ⊗ id^{j_q})
                        let mut slots = Vec::with_capacity(p);
                        for (l, &j) in js.iter().enumerate() {
                            if l > 0 {
                                slots.push(Slot::Map(&inner_ts[l - 1], rs[l] as i64 - 1));
                            }
                            slots.extend(std::iter::repeat_n(Slot::Id, j));
                        }
                        let x = compose(&mp, &slots, self.degs());
                        let x_deg = p as i64 - 2 + rs[1..].iter().map(|&r| r as i64 - 1).sum::<i64>();
                        for i in 0..rs[0] {
                            let k = rs[0] - 1 - i;
                            let idx = EtaIndex { n, p, i, k, rs: &rs, js: &js };
                            let term = self.partial(&tr1, i, (&x, x_deg));
                            out.add_scaled(&term, &-(&weight * sign_of(odd(eta(&idx)))));
                        }
                    }
                }
            }
        }
        out
    }

    /// The operator identity in arity `n`, left minus right.
    pub fn displayed_residual(&self, n: usize) -> Multilinear {
        self.rb_residual_with(n, eta_first)
    }

    /// `φ(∂g) − ∂_End φ(g)` for a generator `g`, where
    /// `∂_End f = d∘f − (−1)^{|f|} Σ_i f∘_i d`.
    pub fn derivation_residual(&self, g: Generator) -> Multilinear {
        let n = g.arity;
        let mut out = self.evaluate(&boundary_generator(g), n);
        let f = self.op(g);
        let d = self.m_op(1);
        let deg = g.degree();
        let mut dend = compose(&d, &[Slot::Map(&f, deg)], self.degs());
        for i in 0..n {
            dend.add_scaled(&self.partial(&f, i, (&d, -1)), &-sign_of(deg & 1 == 1));
        }
        out.add_scaled(&dend, &-Rational::one());
        out
    }

    /// The image of an element of the free operad in `End_V`.
    pub fn evaluate(&self, e: &OperadElement, arity: usize) -> Multilinear {
        let mut out = Multilinear::zero(arity);
        for (mono, coef) in e.terms() {
            let c = coef.eval(&self.lambda);
            if c.is_zero() {
                continue;
            }
            out.add_scaled(&self.evaluate_monomial(mono), &c);
        }
        out
    }

    /// Decorations are in planar order, so each vertex is grafted onto the
    /// leaf of the partial tree numbered by the leaves preceding it; no
    /// vertex of the partial tree lies after it, so no sign arises.
    fn evaluate_monomial(&self, mono: &TreeMonomial) -> Multilinear {
        let tokens = mono.tree().tokens();
        let decs = mono.decorations();
        let mut acc = self.op(decs[0]);
        let mut v = 0;
        for (pos, &tok) in tokens.iter().enumerate() {
            if tok == 0 {
                continue;
            }
            if v > 0 {
                let slot = tokens[..pos].iter().filter(|&&x| x == 0).count();
                let g = self.op(decs[v]);
                acc = self.partial(&acc, slot, (&g, decs[v].degree()));
            }
            v += 1;
        }
        acc
    }
}

fn number(x: &Value) -> Result<Rational, HrbError> {
    match x {
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| HrbError::Json(format!("{n} is not an integer; write fractions as \"p/q\""))),
        Value::String(s) => parse_rational(s).ok_or_else(|| HrbError::Json(format!("cannot parse {s:?}"))),
        _ => Err(HrbError::Json(format!("expected a number, found {x}"))),
    }
}

fn read_dense(v: &Value, depth: usize, dim: usize, prefix: &mut Vec<usize>, out: &mut Multilinear) -> Result<(), String> {
    let arr = v.as_array().ok_or("expected a nested array")?;
    if arr.len() != dim {
        return Err(format!("a level has length {}, expected {dim}", arr.len()));
    }
    for (i, x) in arr.iter().enumerate() {
        if depth == 0 {
            let c = number(x).map_err(|e| e.to_string())?;
            out.add_entry(prefix.clone(), i, c);
        } else {
            prefix.push(i);
            read_dense(x, depth - 1, dim, prefix, out)?;
            prefix.pop();
        }
    }
    Ok(())
}

/// The indices entering the sign `η`.
pub(crate) struct EtaIndex<'a> {
    pub n: usize,
    pub p: usize,
    pub i: usize,
    pub k: usize,
    pub rs: &'a [usize],
    pub js: &'a [usize],
}

pub(crate) fn eta_first(x: &EtaIndex) -> usize {
    let q = x.rs.len();
    let mut e = x.p * (x.p - 1) / 2 + x.rs.iter().map(|r| r * (r - 1) / 2).sum::<usize>() + x.k + x.p * x.i;
    for l in 1..q {
        let inner = x.i + x.js[..l].iter().sum::<usize>() + x.rs[1..l].iter().sum::<usize>();
        e += (x.rs[l] - 1) * inner;
    }
    e
}

pub(crate) fn eta_second(x: &EtaIndex) -> usize {
    let q = x.rs.len();
    let mut e = x.n * (x.n - 1) / 2 + x.i + (x.p + x.rs[1..].iter().map(|r| r - 1).sum::<usize>()) * x.k;
    for l in 1..q {
        e += (x.rs[l] - 1) * (x.js[l..].iter().sum::<usize>() + q - 1 - l);
    }
    e
}

/// Both expressions for `η` over every index tuple up to arity `max_n`;
/// returns the number of tuples and the first disagreement.
pub(crate) fn compare_eta_forms(max_n: usize) -> CheckResult {
    let mut c = CheckResult::new("eta_forms_agree");
    for n in 1..=max_n {
        for p in 1..=n {
            for q in 1..=p {
                for rs in compositions(n + q - p, q) {
                    for js in weak_compositions(p + 1 - q, q) {
                        for i in 0..rs[0] {
                            let k = rs[0] - 1 - i;
                            let x = EtaIndex { n, p, i, k, rs: &rs, js: &js };
                            let (a, b) = (eta_first(&x), eta_second(&x));
                            c.record(a % 2 == b % 2, || {
                                format!("n={n} p={p} r={rs:?} j={js:?} i={i} k={k}: {a} vs {b}")
                            });
                        }
                    }
                }
            }
        }
    }
    c
}

pub fn stasheff_residual(s: &HomotopyRBStructure, n: usize) -> Multilinear {
    s.stasheff_residual(n)
}

pub fn displayed_residual(s: &HomotopyRBStructure, n: usize) -> Multilinear {
    s.displayed_residual(n)
}

pub fn derivation_residual(s: &HomotopyRBStructure, g: Generator) -> Multilinear {
    s.derivation_residual(g)
}

/// Signs relating the written-out identities to the morphism condition
/// `O(g) = (φ∂ − ∂_End φ)(g)`: the Stasheff sum in arity `n` is `−O(m_n)`,
/// the operator identity is `(−1)^{n(n−1)/2 + 1} O(T_n)`.
pub(crate) const STASHEFF_VS_MORPHISM: i64 = -1;

pub(crate) fn rb_vs_morphism(n: usize) -> i64 {
    if (n * (n - 1) / 2 + 1) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// The identities in arities `1..=max_arity`, each compared with the
/// morphism condition.
pub fn check_homotopy_rb(s: &HomotopyRBStructure, max_arity: usize) -> Report {
    let mut report = Report::default();
    let mut degrees = CheckResult::new("degrees");
    let bad = s.degree_violations();
    degrees.record(bad.is_empty(), || bad[0].clone());
    report.push(degrees);

    let mut stasheff = CheckResult::new("stasheff_identity");
    let mut rb = CheckResult::new("rota_baxter_identity");
    let mut agree = CheckResult::new("identities_match_morphism_condition");
    for n in 1..=max_arity {
        let sn = s.stasheff_residual(n);
        stasheff.record(sn.is_zero(), || format!("arity {n}: {sn}"));
        let rn = s.displayed_residual(n);
        rb.record(rn.is_zero(), || format!("arity {n}: {rn}"));
        if n >= 2 {
            let o = s.derivation_residual(Generator::m(n));
            let ok = sn == o.scaled(&Rational::from_integer(STASHEFF_VS_MORPHISM.into()));
            agree.record(ok, || format!("m{n}: Stasheff sum {sn} vs morphism residual {o}"));
        }
        let o = s.derivation_residual(Generator::t(n));
        let ok = rn == o.scaled(&Rational::from_integer(rb_vs_morphism(n).into()));
        agree.record(ok, || format!("T{n}: operator identity {rn} vs morphism residual {o}"));
    }
    report.push(stasheff);
    report.push(rb);
    report.push(agree);
    report.push(compare_eta_forms(max_arity));
    report
}

impl HomotopyRBStructure {
    /// The operator identity with the second expression for `η`.
    #[cfg(test)]
    pub(crate) fn displayed_residual_second(&self, n: usize) -> Multilinear {
        self.rb_residual_with(n, eta_second)
    }
}
