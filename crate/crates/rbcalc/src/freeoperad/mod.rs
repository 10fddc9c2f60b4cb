//! The free graded nonsymmetric operad on the generators `m_n`, `T_n`
//! (and the shifted family `x_n`, `y_n` used on the cooperad side).

mod notation;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::rbinfty::order::order_key;
use crate::scalar::Scalar;
use crate::sign::koszul_negative;
use crate::trees::{PlanarTree, TreeError};

pub use notation::{parse_composition_expr, parse_generator, parse_monomial, render_composition, render_element, NotationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// `m_n`, degree n-2.
    M,
    /// `T_n`, degree n-1.
    T,
    /// `x_n`, degree -1.
    X,
    /// `y_n`, degree 0.
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub arity: usize,
}

impl Generator {
    pub fn m(n: usize) -> Self {
        assert!(n >= 2, "m_n needs n >= 2");
        Generator { kind: GenKind::M, arity: n }
    }

    pub fn t(n: usize) -> Self {
        assert!(n >= 1, "T_n needs n >= 1");
        Generator { kind: GenKind::T, arity: n }
    }

    pub fn x(n: usize) -> Self {
        assert!(n >= 2, "x_n needs n >= 2");
        Generator { kind: GenKind::X, arity: n }
    }

    pub fn y(n: usize) -> Self {
        assert!(n >= 1, "y_n needs n >= 1");
        Generator { kind: GenKind::Y, arity: n }
    }

    pub fn degree(&self) -> i64 {
        let n = self.arity as i64;
        match self.kind {
            GenKind::M => n - 2,
            GenKind::T => n - 1,
            GenKind::X => -1,
            GenKind::Y => 0,
        }
    }

    /// Letter rank for word comparison: T1 < m2 < T2 < m3 < ...
    pub fn rank(&self) -> i64 {
        let n = self.arity as i64;
        match self.kind {
            GenKind::M => 2 * n - 2,
            GenKind::T => 2 * n - 1,
            GenKind::X => (1 << 20) + 2 * n - 2,
            GenKind::Y => (1 << 20) + 2 * n - 1,
        }
    }

    pub fn name(&self) -> String {
        let letter = match self.kind {
            GenKind::M => "m",
            GenKind::T => "T",
            GenKind::X => "x",
            GenKind::Y => "y",
        };
        format!("{letter}{}", self.arity)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("decoration arity mismatch at vertex {vertex}")]
    ArityMismatch { vertex: usize },
    #[error("brace with {given} insertions into arity {arity}")]
    TooManyArguments { given: usize, arity: usize },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("zero element has no leading term")]
    Zero,
}

/// A planar tree with one generator per vertex, in planar order.
#[derive(Clone)]
pub struct TreeMonomial {
    tree: PlanarTree,
    decorations: Vec<Generator>,
    key: Vec<i64>,
}

impl TreeMonomial {
    pub fn new(tree: PlanarTree, decorations: Vec<Generator>) -> Result<Self, OperadError> {
        let arities = tree.vertex_arities();
        if arities.len() != decorations.len() {
            return Err(OperadError::ArityMismatch {
                vertex: arities.len().min(decorations.len()),
            });
        }
        if let Some(v) = arities.iter().zip(&decorations).position(|(a, g)| *a != g.arity) {
            return Err(OperadError::ArityMismatch { vertex: v });
        }
        Ok(Self::build(tree, decorations))
    }

    fn build(tree: PlanarTree, decorations: Vec<Generator>) -> Self {
        let key = order_key(&tree, &decorations);
        TreeMonomial { tree, decorations, key }
    }

    pub fn generator(g: Generator) -> Self {
        Self::build(PlanarTree::corolla(g.arity), vec![g])
    }

    pub fn tree(&self) -> &PlanarTree {
        &self.tree
    }

    pub fn decorations(&self) -> &[Generator] {
        &self.decorations
    }

    pub fn arity(&self) -> usize {
        self.key[0] as usize
    }

    pub fn weight(&self) -> usize {
        self.decorations.len()
    }

    pub fn degree(&self) -> i64 {
        self.decorations.iter().map(Generator::degree).sum()
    }

    /// The flat comparison key (arity, degree, then path words).
    pub fn order_key(&self) -> &[i64] {
        &self.key
    }

    /// `self ∘_i other` as a monomial, with `true` for a minus sign.
    pub fn compose(&self, i: usize, other: &TreeMonomial) -> Result<(bool, TreeMonomial), OperadError> {
        let tree = self.tree.graft(i, &other.tree)?;
        let k = self.tree.vertices_before_leaf(i);
        let mut decorations = Vec::with_capacity(self.weight() + other.weight());
        decorations.extend_from_slice(&self.decorations[..k]);
        decorations.extend_from_slice(&other.decorations);
        decorations.extend_from_slice(&self.decorations[k..]);
        let after: i64 = self.decorations[k..].iter().map(Generator::degree).sum();
        let negative = (other.degree() * after) & 1 == 1;
        Ok((negative, Self::build(tree, decorations)))
    }

    /// Replaces vertex `v` by the monomial `e` (of the same arity), moving
    /// decorations into planar order with the Koszul rule. The source order
    /// is: decorations before `v`, then those of `e`, then those after `v`.
    pub fn substitute(&self, v: usize, e: &TreeMonomial) -> (bool, TreeMonomial) {
        let tokens = self.tree.tokens();
        let arity = self.decorations[v].arity;
        assert_eq!(arity, e.arity(), "substitution arity mismatch");
        // token position of vertex v
        let mut seen = 0;
        let pos = tokens
            .iter()
            .position(|&t| {
                if t != 0 {
                    seen += 1;
                    seen == v + 1
                } else {
                    false
                }
            })
            .expect("vertex in range");
        // token ranges of v's inputs
        let mut inputs = Vec::with_capacity(arity);
        let mut p = pos + 1;
        for _ in 0..arity {
            let start = p;
            let mut open = 1i64;
            while open > 0 {
                open += tokens[p] as i64 - 1;
                p += 1;
            }
            inputs.push(start..p);
        }
        let end = p;
        let we = e.weight();
        let source_of = |u: usize| if u < v { u } else { u - 1 + we };

        let mut new_tokens = Vec::with_capacity(tokens.len() + e.tree.tokens().len());
        let mut origin = Vec::with_capacity(self.weight() + we - 1);
        new_tokens.extend_from_slice(&tokens[..pos]);
        origin.extend(0..v);
        let mut host_vertex = v + 1;
        let mut e_vertex = 0;
        let mut leaf = 0;
        for &t in e.tree.tokens() {
            if t != 0 {
                new_tokens.push(t);
                origin.push(v + e_vertex);
                e_vertex += 1;
            } else {
                let range = inputs[leaf].clone();
                leaf += 1;
                for &s in &tokens[range] {
                    new_tokens.push(s);
                    if s != 0 {
                        origin.push(source_of(host_vertex));
                        host_vertex += 1;
                    }
                }
            }
        }
        new_tokens.extend_from_slice(&tokens[end..]);
        for &s in &tokens[end..] {
            if s != 0 {
                origin.push(source_of(host_vertex));
                host_vertex += 1;
            }
        }

        let mut source_decs = Vec::with_capacity(origin.len());
        source_decs.extend_from_slice(&self.decorations[..v]);
        source_decs.extend_from_slice(&e.decorations);
        source_decs.extend_from_slice(&self.decorations[v + 1..]);
        let degrees: Vec<i64> = source_decs.iter().map(Generator::degree).collect();
        let negative = koszul_negative(&degrees, &origin);
        let decorations = origin.iter().map(|&o| source_decs[o]).collect();
        (
            negative,
            Self::build(PlanarTree::from_tokens(new_tokens), decorations),
        )
    }

    /// Replaces a block of consecutive vertices `start..start+len`, forming a
    /// connected subtree rooted at `start`, by a single generator.
    pub fn contract_block(&self, start: usize, len: usize, g: Generator) -> TreeMonomial {
        let d = crate::trees::DivisorRef {
            root: start,
            vertices: (start..start + len).collect(),
        };
        let tree = self.tree.quotient(&d).expect("block is a divisor");
        let mut decorations = Vec::with_capacity(self.weight() - len + 1);
        decorations.extend_from_slice(&self.decorations[..start]);
        decorations.push(g);
        decorations.extend_from_slice(&self.decorations[start + len..]);
        TreeMonomial::new(tree, decorations).expect("contracted block has matching arity")
    }
}

impl PartialEq for TreeMonomial {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for TreeMonomial {}

impl Hash for TreeMonomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for TreeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(m: &TreeMonomial, tokens: &[u16], pos: &mut usize, vertex: &mut usize, leaf: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let t = tokens[*pos];
            *pos += 1;
            if t == 0 {
                *leaf += 1;
                return write!(f, "{leaf}");
            }
            write!(f, "{}(", m.decorations[*vertex])?;
            *vertex += 1;
            for k in 0..t {
                if k > 0 {
                    write!(f, ",")?;
                }
                go(m, tokens, pos, vertex, leaf, f)?;
            }
            write!(f, ")")
        }
        go(self, self.tree.tokens(), &mut 0, &mut 0, &mut 0, f)
    }
}

impl fmt::Debug for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite linear combination of tree monomials, sorted with the leading
/// (largest) monomial first, without zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OperadElement {
    terms: Vec<(TreeMonomial, Scalar)>,
}

impl OperadElement {
    pub fn zero() -> Self {
        OperadElement::default()
    }

    pub fn monomial(m: TreeMonomial) -> Self {
        OperadElement {
            terms: vec![(m, Scalar::one())],
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(TreeMonomial::generator(g))
    }

    pub fn from_terms<I: IntoIterator<Item = (TreeMonomial, Scalar)>>(terms: I) -> Self {
        let mut acc = Accumulator::default();
        for (m, c) in terms {
            acc.add(m, &c);
        }
        acc.finish()
    }

    pub fn terms(&self) -> &[(TreeMonomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(TreeMonomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &TreeMonomial) -> Scalar {
        self.terms
            .binary_search_by(|(x, _)| m.cmp(x))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn arity(&self) -> Option<usize> {
        self.terms.first().map(|(m, _)| m.arity())
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<i64> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn leading_term(&self) -> Result<(Scalar, TreeMonomial), OperadError> {
        self.terms
            .first()
            .map(|(m, c)| (c.clone(), m.clone()))
            .ok_or(OperadError::Zero)
    }

    pub fn scale(&self, c: &Scalar) -> OperadElement {
        if c.is_zero() {
            return OperadElement::zero();
        }
        OperadElement {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn neg(&self) -> OperadElement {
        self.scale(&Scalar::int(-1))
    }

    pub fn add(&self, other: &OperadElement) -> OperadElement {
        let mut acc = Accumulator::default();
        acc.add_element(self, &Scalar::one());
        acc.add_element(other, &Scalar::one());
        acc.finish()
    }

    pub fn sub(&self, other: &OperadElement) -> OperadElement {
        let mut acc = Accumulator::default();
        acc.add_element(self, &Scalar::one());
        acc.add_element(other, &Scalar::int(-1));
        acc.finish()
    }

    /// Applies a monomial-level linear map and collects the results.
    pub fn map_linear<F>(&self, mut f: F) -> OperadElement
    where
        F: FnMut(&TreeMonomial, &Scalar, &mut Accumulator),
    {
        let mut acc = Accumulator::default();
        for (m, c) in &self.terms {
            f(m, c, &mut acc);
        }
        acc.finish()
    }
}

impl fmt::Display for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let text = coefficient_prefix(c, idx == 0);
            write!(f, "{text}{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OperadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders a coefficient as a prefix: the joining sign and an optional factor.
pub(crate) fn coefficient_prefix(c: &Scalar, first: bool) -> String {
    let single_negative = !c.is_compound() && c.terms().next().is_some_and(|(_, x)| x < &num_traits::Zero::zero());
    let magnitude = if single_negative { -c } else { c.clone() };
    let sign = match (first, single_negative) {
        (true, false) => "",
        (true, true) => "−",
        (false, false) => " + ",
        (false, true) => " − ",
    };
    let factor = if magnitude.is_one() {
        String::new()
    } else if magnitude.is_compound() {
        format!("({magnitude})*")
    } else {
        format!("{magnitude}*")
    };
    format!("{sign}{factor}")
}

/// Sums monomials with coefficients; `finish` produces the canonical form.
#[derive(Default)]
pub struct Accumulator {
    map: HashMap<TreeMonomial, Scalar>,
}

impl Accumulator {
    pub fn add(&mut self, m: TreeMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&m) {
            Some(x) => *x += c,
            None => {
                self.map.insert(m, c.clone());
            }
        }
    }

    pub fn add_signed(&mut self, m: TreeMonomial, c: &Scalar, negative: bool) {
        if negative {
            self.add(m, &-c);
        } else {
            self.add(m, c);
        }
    }

    pub fn add_element(&mut self, e: &OperadElement, c: &Scalar) {
        for (m, x) in &e.terms {
            self.add(m.clone(), &(x * c));
        }
    }

    pub fn finish(self) -> OperadElement {
        let mut terms: Vec<(TreeMonomial, Scalar)> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        OperadElement { terms }
    }
}

pub fn compose(f: &OperadElement, i: usize, g: &OperadElement) -> Result<OperadElement, OperadError> {
    let mut acc = Accumulator::default();
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let (neg, m) = a.compose(i, b)?;
            acc.add_signed(m, &(x * y), neg);
        }
    }
    Ok(acc.finish())
}

/// The composite along `tree`, decorations listed in planar order.
pub fn compose_along_tree(tree: &PlanarTree, decorations: &[OperadElement]) -> Result<OperadElement, OperadError> {
    let arities = tree.vertex_arities();
    if arities.len() != decorations.len() {
        return Err(OperadError::ArityMismatch {
            vertex: arities.len().min(decorations.len()),
        });
    }
    for (v, (a, d)) in arities.iter().zip(decorations).enumerate() {
        if d.terms.iter().any(|(m, _)| m.arity() != *a) {
            return Err(OperadError::ArityMismatch { vertex: v });
        }
    }
    let mut acc = decorations[0].clone();
    let tokens = tree.tokens();
    let mut leaves = 0;
    let mut vertex = 0;
    for &t in tokens {
        if t == 0 {
            leaves += 1;
        } else {
            if vertex > 0 {
                acc = compose(&acc, leaves + 1, &decorations[vertex])?;
            }
            vertex += 1;
        }
    }
    Ok(acc)
}

/// `f{g_1,...,g_n}`.
pub fn brace(f: &OperadElement, gs: &[OperadElement]) -> Result<OperadElement, OperadError> {
    if f.is_zero() || gs.iter().any(OperadElement::is_zero) {
        return Ok(OperadElement::zero());
    }
    let fa = f.arity().unwrap();
    if gs.len() > fa {
        return Err(OperadError::TooManyArguments {
            given: gs.len(),
            arity: fa,
        });
    }
    let mut acc = Accumulator::default();
    fn rec(
        cur: &OperadElement,
        next_min: usize,
        gs: &[OperadElement],
        acc: &mut Accumulator,
    ) -> Result<(), OperadError> {
        let Some((g, rest)) = gs.split_first() else {
            acc.add_element(cur, &Scalar::one());
            return Ok(());
        };
        let arity = cur.arity().unwrap();
        let ga = g.arity().unwrap();
        // leave room for the remaining insertions
        for i in next_min..=arity {
            if arity - i < rest.len() {
                break;
            }
            let composed = compose(cur, i, g)?;
            if composed.is_zero() {
                continue;
            }
            rec(&composed, i + ga, rest, acc)?;
        }
        Ok(())
    }
    rec(f, 1, gs, &mut acc)?;
    Ok(acc.finish())
}

pub fn gerstenhaber(f: &OperadElement, g: &OperadElement) -> Result<OperadElement, OperadError> {
    if f.is_zero() || g.is_zero() {
        return Ok(OperadElement::zero());
    }
    let df = f.degree().ok_or(OperadError::Inhomogeneous)?;
    let dg = g.degree().ok_or(OperadError::Inhomogeneous)?;
    let a = brace(f, std::slice::from_ref(g))?;
    let b = brace(g, std::slice::from_ref(f))?;
    if (df * dg) & 1 == 1 {
        Ok(a.add(&b))
    } else {
        Ok(a.sub(&b))
    }
}

#[cfg(test)]
mod tests;
