//! The homotopy cooperads `S(RB^¡)` (basis `u_n`, `v_n`) and
//! `RB^¡ = S(RB^¡) ⊗_H S^{-1}` (basis `e_n`, `o_n`), the (de)suspension
//! cooperads, and the cobar differential they induce.
//!
//! Only three tree shapes carry nonzero decompositions:
//! - (I) weight two: an `(n-j+1)`-ary root with a `j`-ary vertex at input `i`;
//! - (II) an `k`-ary root whose every input is a corolla of arity `r_t`;
//! - (III) an `r_1`-ary root with a `p`-ary vertex at input `i`, which in turn
//!   carries corollas of arities `r_2..r_q` at inputs `k_1 < .. < k_{q-1}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::freeoperad::{Accumulator, GenKind, Generator, OperadElement, TreeMonomial};
use crate::scalar::Scalar;
use crate::sign::{combinations, compositions};
use crate::trees::{Input, PlanarTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoFamily {
    U,
    V,
    E,
    O,
    Delta,
    Epsilon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoGenerator {
    pub family: CoFamily,
    pub arity: usize,
}

impl CoGenerator {
    pub fn new(family: CoFamily, arity: usize) -> Self {
        assert!(arity >= 1);
        CoGenerator { family, arity }
    }
    pub fn u(n: usize) -> Self {
        Self::new(CoFamily::U, n)
    }
    pub fn v(n: usize) -> Self {
        Self::new(CoFamily::V, n)
    }
    pub fn e(n: usize) -> Self {
        Self::new(CoFamily::E, n)
    }
    pub fn o(n: usize) -> Self {
        Self::new(CoFamily::O, n)
    }
    pub fn delta(n: usize) -> Self {
        Self::new(CoFamily::Delta, n)
    }
    pub fn epsilon(n: usize) -> Self {
        Self::new(CoFamily::Epsilon, n)
    }

    pub fn degree(&self) -> i64 {
        let n = self.arity as i64;
        match self.family {
            CoFamily::U => 0,
            CoFamily::V => 1,
            CoFamily::E => n - 1,
            CoFamily::O => n,
            CoFamily::Delta => n - 1,
            CoFamily::Epsilon => 1 - n,
        }
    }

    /// `u_1` and `e_1` span the coaugmentation.
    pub fn is_unit(&self) -> bool {
        self.arity == 1 && matches!(self.family, CoFamily::U | CoFamily::E)
    }

    /// The free-operad generator `s^{-1}self`.
    pub fn desuspend(&self) -> Option<Generator> {
        if self.is_unit() {
            return None;
        }
        let kind = match self.family {
            CoFamily::U => GenKind::X,
            CoFamily::V => GenKind::Y,
            CoFamily::E => GenKind::M,
            CoFamily::O => GenKind::T,
            _ => return None,
        };
        Some(Generator { kind, arity: self.arity })
    }

    pub fn suspend(g: Generator) -> CoGenerator {
        let family = match g.kind {
            GenKind::X => CoFamily::U,
            GenKind::Y => CoFamily::V,
            GenKind::M => CoFamily::E,
            GenKind::T => CoFamily::O,
        };
        CoGenerator::new(family, g.arity)
    }
}

impl fmt::Display for CoGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            CoFamily::U => "u",
            CoFamily::V => "v",
            CoFamily::E => "e",
            CoFamily::O => "o",
            CoFamily::Delta => "δ",
            CoFamily::Epsilon => "ε",
        };
        write!(f, "{name}{}", self.arity)
    }
}

/// One decorated tree in `C^{⊗T}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooperadTerm {
    pub coefficient: Scalar,
    pub tree: PlanarTree,
    pub decorations: Vec<CoGenerator>,
}

impl fmt::Display for CooperadTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decs: Vec<String> = self.decorations.iter().map(|d| d.to_string()).collect();
        write!(f, "({})·{} on {}", self.coefficient, decs.join("⊗"), self.tree)
    }
}

/// Sums terms over equal decorated trees and drops zeros.
pub fn canonical(terms: Vec<CooperadTerm>) -> Vec<CooperadTerm> {
    let mut map: BTreeMap<(PlanarTree, Vec<CoGenerator>), Scalar> = BTreeMap::new();
    for t in terms {
        *map.entry((t.tree, t.decorations)).or_default() += &t.coefficient;
    }
    map.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((tree, decorations), coefficient)| CooperadTerm {
            coefficient,
            tree,
            decorations,
        })
        .collect()
}

/// The recognised shape of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// Root arity `n-j+1`, a `j`-ary vertex at input `i`.
    I { n: usize, i: usize, j: usize },
    /// Root arity `k = rs.len()`, corollas of arities `rs`.
    II { rs: Vec<usize> },
    /// `rs = [r_1, .., r_q]`, `ks` 1-based inputs of the `p`-vertex.
    III { rs: Vec<usize>, i: usize, p: usize, ks: Vec<usize> },
}

/// `(1-based input, child vertex)` for the vertex inputs of `v`.
fn vertex_children(infos: &[crate::trees::VertexInfo], v: usize) -> Vec<(usize, usize)> {
    infos[v]
        .inputs
        .iter()
        .enumerate()
        .filter_map(|(s, inp)| match *inp {
            Input::Vertex(c) => Some((s + 1, c)),
            Input::Leaf(_) => None,
        })
        .collect()
}

fn is_corolla(infos: &[crate::trees::VertexInfo], v: usize) -> bool {
    infos[v].inputs.iter().all(|i| matches!(i, Input::Leaf(_)))
}

pub fn classify(t: &PlanarTree) -> Option<Shape> {
    let infos = t.vertices();
    let n = t.arity();
    let w = infos.len();
    if w < 2 {
        return None;
    }
    let kids = vertex_children(&infos, 0);
    if w == 2 {
        let (i, c) = kids[0];
        return Some(Shape::I { n, i, j: infos[c].arity });
    }
    let root_arity = infos[0].arity;
    if kids.len() == root_arity && root_arity >= 2 && kids.iter().all(|&(_, c)| is_corolla(&infos, c)) {
        return Some(Shape::II {
            rs: kids.iter().map(|&(_, c)| infos[c].arity).collect(),
        });
    }
    if kids.len() == 1 {
        let (i, pv) = kids[0];
        let top = vertex_children(&infos, pv);
        if top.len() + 2 == w && top.len() < infos[pv].arity && top.iter().all(|&(_, c)| is_corolla(&infos, c)) {
            let mut rs = vec![root_arity];
            rs.extend(top.iter().map(|&(_, c)| infos[c].arity));
            return Some(Shape::III {
                rs,
                i,
                p: infos[pv].arity,
                ks: top.iter().map(|&(s, _)| s).collect(),
            });
        }
    }
    None
}

/// Tokens of a tree built from a shape.
pub fn shape_tree(shape: &Shape) -> PlanarTree {
    let leaves = |k: usize| std::iter::repeat_n(0u16, k);
    let mut t: Vec<u16> = Vec::new();
    match shape {
        Shape::I { n, i, j } => {
            let a = n - j + 1;
            t.push(a as u16);
            t.extend(leaves(i - 1));
            t.push(*j as u16);
            t.extend(leaves(*j));
            t.extend(leaves(a - i));
        }
        Shape::II { rs } => {
            t.push(rs.len() as u16);
            for &r in rs {
                t.push(r as u16);
                t.extend(leaves(r));
            }
        }
        Shape::III { rs, i, p, ks } => {
            t.push(rs[0] as u16);
            t.extend(leaves(i - 1));
            t.push(*p as u16);
            let mut next = 0;
            for s in 1..=*p {
                if next < ks.len() && ks[next] == s {
                    t.push(rs[next + 1] as u16);
                    t.extend(leaves(rs[next + 1]));
                    next += 1;
                } else {
                    t.push(0);
                }
            }
            t.extend(leaves(rs[0] - i));
        }
    }
    PlanarTree::from_tokens(t)
}

/// Every shape of arity `n` on which `Δ_T` can be nonzero.
pub fn supported_shapes(n: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    for j in 1..=n {
        for i in 1..=n - j + 1 {
            out.push(Shape::I { n, i, j });
        }
    }
    for k in 2..=n {
        for rs in compositions(n, k) {
            out.push(Shape::II { rs });
        }
    }
    for p in 2..=n {
        for q in 2..=p {
            if n + q < p {
                continue;
            }
            for rs in compositions(n + q - p, q) {
                for ks0 in combinations(p, q - 1) {
                    let ks: Vec<usize> = ks0.iter().map(|k| k + 1).collect();
                    for i in 1..=rs[0] {
                        out.push(Shape::III {
                            rs: rs.clone(),
                            i,
                            p,
                            ks: ks.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

fn sgn(odd: usize) -> Scalar {
    Scalar::sign(odd % 2 == 1)
}

fn term(c: Scalar, tree: &PlanarTree, decorations: Vec<CoGenerator>) -> CooperadTerm {
    CooperadTerm {
        coefficient: c,
        tree: tree.clone(),
        decorations,
    }
}

/// `Δ_T` on `S(RB^¡)`.
pub fn delta_srb(g: CoGenerator, t: &PlanarTree) -> Vec<CooperadTerm> {
    assert!(matches!(g.family, CoFamily::U | CoFamily::V));
    assert_eq!(t.arity(), g.arity, "tree arity must match");
    let n = g.arity;
    let (u, v) = (CoGenerator::u, CoGenerator::v);
    let lam = |k: usize| Scalar::lambda_pow(k as u32);
    let Some(shape) = classify(t) else { return Vec::new() };
    match (g.family, shape) {
        (CoFamily::U, Shape::I { j, .. }) => vec![term(Scalar::one(), t, vec![u(n - j + 1), u(j)])],
        (CoFamily::V, Shape::I { j, .. }) => {
            let mut out = vec![term(lam(j - 1), t, vec![v(n - j + 1), u(j)])];
            // for n = 1 both the j = 1 and the j = n term occur
            if j == n {
                out.push(term(Scalar::one(), t, vec![u(1), v(n)]));
            }
            out
        }
        (CoFamily::V, Shape::II { rs }) => {
            let k = rs.len();
            let mut decs = vec![u(k)];
            decs.extend(rs.iter().map(|&r| v(r)));
            vec![term(sgn(k * (k - 1) / 2), t, decs)]
        }
        (CoFamily::V, Shape::III { rs, p, .. }) => {
            let q = rs.len();
            let mut decs = vec![v(rs[0]), u(p)];
            decs.extend(rs[1..].iter().map(|&r| v(r)));
            vec![term(&sgn(q * (q - 1) / 2) * &lam(p - q), t, decs)]
        }
        _ => Vec::new(),
    }
}

/// The sign exponent `γ` of the type-(III) component of `Δ_T(o_n)`.
pub fn gamma(rs: &[usize], i: usize, p: usize, ks: &[usize]) -> usize {
    let q = rs.len();
    let a: usize = (1..q).map(|j| (q - j) * rs[j - 1]).sum();
    let b = (p - 1) * (q - 1);
    let c = (rs[1..].iter().sum::<usize>() + p - q) * (rs[0] - i);
    let d: usize = (2..=q).map(|j| (rs[j - 1] - 1) * (p - ks[j - 2])).sum();
    a + b + c + d
}

/// `Δ_T` on `RB^¡`, from the closed formulas.
pub fn delta_rb(g: CoGenerator, t: &PlanarTree) -> Vec<CooperadTerm> {
    assert!(matches!(g.family, CoFamily::E | CoFamily::O));
    assert_eq!(t.arity(), g.arity, "tree arity must match");
    let n = g.arity;
    let (e, o) = (CoGenerator::e, CoGenerator::o);
    let lam = |k: usize| Scalar::lambda_pow(k as u32);
    let Some(shape) = classify(t) else { return Vec::new() };
    match (g.family, shape) {
        (CoFamily::E, Shape::I { i, j, .. }) => {
            vec![term(sgn((j - 1) * (n - i + 1)), t, vec![e(n - j + 1), e(j)])]
        }
        (CoFamily::O, Shape::I { i, j, .. }) => {
            let mut out = vec![term(&sgn((j - 1) * (n - i + 1)) * &lam(j - 1), t, vec![o(n - j + 1), e(j)])];
            if j == n {
                out.push(term(Scalar::one(), t, vec![e(1), o(n)]));
            }
            out
        }
        (CoFamily::O, Shape::II { rs }) => {
            let k = rs.len();
            let mut decs = vec![e(k)];
            decs.extend(rs.iter().map(|&r| o(r)));
            vec![term(sgn(k * (k - 1) / 2), t, decs)]
        }
        (CoFamily::O, Shape::III { rs, i, p, ks }) => {
            let q = rs.len();
            let mut decs = vec![o(rs[0]), e(p)];
            decs.extend(rs[1..].iter().map(|&r| o(r)));
            vec![term(&sgn(gamma(&rs, i, p, &ks)) * &lam(p - q), t, decs)]
        }
        _ => Vec::new(),
    }
}

/// The weight-two decompositions of the (de)suspension cooperads.
pub fn delta_suspension(g: CoGenerator, t: &PlanarTree) -> Vec<CooperadTerm> {
    assert_eq!(t.arity(), g.arity, "tree arity must match");
    let infos = t.vertices();
    if infos.len() != 2 {
        return Vec::new();
    }
    let n = g.arity;
    let i = infos[1].arity;
    let j = infos[1].parent.expect("second vertex has a parent").1 + 1;
    match g.family {
        CoFamily::Delta => vec![term(
            sgn((j - 1) * (i - 1)),
            t,
            vec![CoGenerator::delta(n - i + 1), CoGenerator::delta(i)],
        )],
        CoFamily::Epsilon => vec![term(
            sgn((i - 1) * (n - i + 1 - j)),
            t,
            vec![CoGenerator::epsilon(n - i + 1), CoGenerator::epsilon(i)],
        )],
        _ => panic!("{g} is not a (de)suspension generator"),
    }
}

/// The full iterated cocomposition of `ε_n` along `t` in the strict cooperad
/// `S^{-1}`: split off the last vertex, then recurse on the rest.
pub fn epsilon_along(n: usize, t: &PlanarTree) -> (Scalar, Vec<CoGenerator>) {
    let tokens = t.tokens();
    let weight = t.weight();
    if weight == 1 {
        return (Scalar::one(), vec![CoGenerator::epsilon(n)]);
    }
    // the last vertex in planar order has only leaf inputs
    let pos = tokens.iter().rposition(|&x| x != 0).unwrap();
    let b = tokens[pos] as usize;
    let slot = tokens[..pos].iter().filter(|&&x| x == 0).count() + 1;
    let a = n - b + 1;
    let mut rest = tokens[..pos].to_vec();
    rest.push(0);
    rest.extend_from_slice(&tokens[pos + 1 + b..]);
    let rest = PlanarTree::from_tokens(rest);
    let mut two = vec![a as u16];
    two.extend(std::iter::repeat_n(0, slot - 1));
    two.push(b as u16);
    two.extend(std::iter::repeat_n(0, b + a - slot));
    let split = delta_suspension(CoGenerator::epsilon(n), &PlanarTree::from_tokens(two));
    let (c1, mut decs) = epsilon_along(a, &rest);
    decs.push(CoGenerator::epsilon(b));
    (&split[0].coefficient * &c1, decs)
}

/// `Δ_T` on `RB^¡` computed through the Hadamard product with `S^{-1}`.
pub fn hadamard_rb_from_srb(g: CoGenerator, t: &PlanarTree) -> Vec<CooperadTerm> {
    let base = match g.family {
        CoFamily::E => CoGenerator::u(g.arity),
        CoFamily::O => CoGenerator::v(g.arity),
        _ => panic!("{g} is not in RB^¡"),
    };
    let srb = delta_srb(base, t);
    if srb.is_empty() {
        return Vec::new();
    }
    let (ce, eps) = epsilon_along(g.arity, t);
    let mut out = Vec::new();
    for s in srb {
        // (c_1..c_w) ⊗ (e_1..e_w) -> (c_1⊗e_1)..: c_j passes e_k for k < j
        let mut odd = 0i64;
        for (j, c) in s.decorations.iter().enumerate() {
            for e in &eps[..j] {
                odd += c.degree() * e.degree();
            }
        }
        let decorations = s
            .decorations
            .iter()
            .map(|c| match c.family {
                CoFamily::U => CoGenerator::e(c.arity),
                _ => CoGenerator::o(c.arity),
            })
            .collect();
        let coefficient = &(&s.coefficient * &ce) * &Scalar::sign(odd & 1 == 1);
        out.push(CooperadTerm {
            coefficient,
            tree: s.tree,
            decorations,
        });
    }
    canonical(out)
}

/// The decompositions of any supported generator.
pub fn delta(g: CoGenerator, t: &PlanarTree) -> Vec<CooperadTerm> {
    match g.family {
        CoFamily::U | CoFamily::V => delta_srb(g, t),
        CoFamily::E | CoFamily::O => delta_rb(g, t),
        CoFamily::Delta | CoFamily::Epsilon => delta_suspension(g, t),
    }
}

/// `∂(s^{-1}f) = −Σ_T (s^{-1})^{⊗ω(T)} Δ_T(f)`, summed over the supported
/// trees; components carrying the coaugmentation are dropped.
pub fn cobar_boundary(g: CoGenerator) -> OperadElement {
    cobar_boundary_over(g, supported_shapes(g.arity).iter().map(shape_tree))
}

/// The same sum over an explicit family of trees.
pub fn cobar_boundary_over<I: IntoIterator<Item = PlanarTree>>(g: CoGenerator, trees: I) -> OperadElement {
    let mut acc = Accumulator::default();
    for t in trees {
        for s in delta(g, &t) {
            if s.decorations.iter().any(CoGenerator::is_unit) {
                continue;
            }
            let w = s.decorations.len() as i64;
            let odd: i64 = s
                .decorations
                .iter()
                .enumerate()
                .map(|(i, c)| (w - 1 - i as i64) * c.degree())
                .sum();
            let decs: Vec<Generator> = s.decorations.iter().map(|c| c.desuspend().unwrap()).collect();
            let m = TreeMonomial::new(s.tree.clone(), decs).expect("arities match");
            acc.add_signed(m, &s.coefficient, odd & 1 == 0);
        }
    }
    acc.finish()
}

/// `∂∂(s^{-1}g)` with the cobar differential on every generator.
pub fn cobar_square(g: CoGenerator) -> OperadElement {
    crate::rbinfty::boundary_with(&cobar_boundary(g), |h| cobar_boundary(CoGenerator::suspend(h)))
}
