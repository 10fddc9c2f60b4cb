//! The L∞ deformation complex of Rota-Baxter algebras over a finite graded
//! space: multilinear maps, brace operations, the brackets, Maurer-Cartan
//! elements, twisting and the homotopy Rota-Baxter identities.
//!
//! A component of the complex is a multilinear map on the basis of `sV`,
//! stored as a sparse table `(inputs, output) -> coefficient`. The Alg-part
//! takes values in `sV`, the RBO-part in `V`; the data of `s∘g` and
//! `s^{-1}∘F` coincide with that of `g` and `F`, so only the degree
//! bookkeeping changes between them.

mod brackets;
mod convolution;
mod hrb;
mod mc;
mod sweep;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{fmt_rational, Rational};
use crate::sign::combinations;

pub use brackets::DeformationAlgebra;
pub use convolution::convolution_bracket;
pub use hrb::{check_homotopy_rb, derivation_residual, displayed_residual, stasheff_residual, HomotopyRBStructure, HrbError};
pub use mc::{direct_rb_check, mc_check, mc_element, mc_sum, twisted_differential_check, McVerdict, Twisted};
pub use sweep::{antisymmetry_sweep, jacobi_sum, jacobi_sweep, oracle_sweep, random_element, SweepConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinftyError {
    #[error("argument {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("a Maurer-Cartan element has degree -1, this one has degree {0}")]
    WrongDegree(i64),
    #[error("not a Maurer-Cartan element: the equation leaves {0}")]
    NotMaurerCartan(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    degrees: Vec<i64>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i64>) -> Self {
        GradedSpace { degrees }
    }

    /// `dim` basis vectors in degree 0.
    pub fn ungraded(dim: usize) -> Self {
        GradedSpace { degrees: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// Degrees of the basis of `sV`.
    pub fn suspended_degrees(&self) -> Vec<i64> {
        self.degrees.iter().map(|d| d + 1).collect()
    }

    /// Degree of a single table entry of a component of the given part.
    pub fn entry_degree(&self, part: Part, inputs: &[usize], output: usize) -> i64 {
        let ins: i64 = inputs.iter().map(|&a| self.degrees[a] + 1).sum();
        let out = self.degrees[output] + if part == Part::Alg { 1 } else { 0 };
        out - ins
    }
}

/// Which summand of the complex a component lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Part {
    /// `Hom((sV)^{⊗n}, sV)`
    Alg,
    /// `Hom((sV)^{⊗n}, V)`
    Rbo,
}

/// A sparse multilinear map on basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multilinear {
    arity: usize,
    entries: BTreeMap<(Vec<usize>, usize), Rational>,
}

impl Multilinear {
    pub fn zero(arity: usize) -> Self {
        Multilinear {
            arity,
            entries: BTreeMap::new(),
        }
    }

    /// The identity of a space of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Multilinear::zero(1);
        for a in 0..dim {
            m.add_entry(vec![a], a, Rational::one());
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[usize], usize, &Rational)> {
        self.entries.iter().map(|((i, o), c)| (i.as_slice(), *o, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, inputs: &[usize], output: usize) -> Rational {
        self.entries
            .get(&(inputs.to_vec(), output))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_entry(&mut self, inputs: Vec<usize>, output: usize, c: Rational) {
        assert_eq!(inputs.len(), self.arity, "entry arity");
        if c.is_zero() {
            return;
        }
        let key = (inputs, output);
        let slot = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Multilinear, c: &Rational) {
        assert_eq!(self.arity, other.arity, "arity mismatch in sum");
        for ((i, o), x) in &other.entries {
            self.add_entry(i.clone(), *o, x * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Multilinear {
        let mut out = Multilinear::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    /// Value on a tuple of basis vectors, as a dense vector of length `dim`.
    pub fn apply_basis(&self, inputs: &[usize], dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for o in 0..dim {
            if let Some(c) = self.entries.get(&(inputs.to_vec(), o)) {
                out[o] = c.clone();
            }
        }
        out
    }

    /// Entries grouped by output index.
    fn by_output(&self) -> HashMap<usize, Vec<(&[usize], &Rational)>> {
        let mut out: HashMap<usize, Vec<(&[usize], &Rational)>> = HashMap::new();
        for ((i, o), c) in &self.entries {
            out.entry(*o).or_default().push((i.as_slice(), c));
        }
        out
    }
}

impl fmt::Display for Multilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, ((i, o), c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let ins: Vec<String> = i.iter().map(|a| format!("e{a}")).collect();
            write!(f, "({})->{}·e{o}", ins.join(","), fmt_rational(c))?;
        }
        Ok(())
    }
}

/// One tensor factor of a parallel composition.
#[derive(Clone, Copy)]
pub enum Slot<'a> {
    Id,
    /// A map together with its degree.
    Map(&'a Multilinear, i64),
}

fn pm(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `outer ∘ (φ_1 ⊗ ... ⊗ φ_k)` evaluated with the Koszul rule: `φ_i` passes
/// every input consumed by the earlier slots. `input_degrees` are the degrees
/// of the basis vectors fed to the result.
pub fn compose(outer: &Multilinear, slots: &[Slot], input_degrees: &[i64]) -> Multilinear {
    assert_eq!(outer.arity, slots.len(), "one slot per input of the outer map");
    let indexed: Vec<Option<HashMap<usize, Vec<(&[usize], &Rational)>>>> = slots
        .iter()
        .map(|s| match s {
            Slot::Id => None,
            Slot::Map(m, _) => Some(m.by_output()),
        })
        .collect();
    let arity = slots
        .iter()
        .map(|s| match s {
            Slot::Id => 1,
            Slot::Map(m, _) => m.arity,
        })
        .sum();
    let mut out = Multilinear::zero(arity);

    struct Ctx<'a, 'b> {
        slots: &'b [Slot<'a>],
        indexed: &'b [Option<HashMap<usize, Vec<(&'a [usize], &'a Rational)>>>],
        input_degrees: &'b [i64],
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ctx: &Ctx,
        bs: &[usize],
        k: usize,
        inputs: &mut Vec<usize>,
        coef: Rational,
        odd: bool,
        deg_before: i64,
        output: usize,
        out: &mut Multilinear,
    ) {
        if k == bs.len() {
            out.add_entry(inputs.clone(), output, if odd { -coef } else { coef });
            return;
        }
        match ctx.slots[k] {
            Slot::Id => {
                inputs.push(bs[k]);
                let d = deg_before + ctx.input_degrees[bs[k]];
                rec(ctx, bs, k + 1, inputs, coef, odd, d, output, out);
                inputs.pop();
            }
            Slot::Map(_, deg) => {
                let Some(options) = ctx.indexed[k].as_ref().unwrap().get(&bs[k]) else {
                    return;
                };
                let flip = (deg * deg_before) & 1 == 1;
                for (ins, c) in options {
                    let d = deg_before + ins.iter().map(|&a| ctx.input_degrees[a]).sum::<i64>();
                    let n = inputs.len();
                    inputs.extend_from_slice(ins);
                    rec(ctx, bs, k + 1, inputs, &coef * *c, odd ^ flip, d, output, out);
                    inputs.truncate(n);
                }
            }
        }
    }
    let ctx = Ctx {
        slots,
        indexed: &indexed,
        input_degrees,
    };
    for ((bs, o), c) in &outer.entries {
        rec(&ctx, bs, 0, &mut Vec::new(), c.clone(), false, 0, *o, &mut out);
    }
    out
}

/// The brace `f{g_1, ..., g_k}`: all order-preserving insertions.
pub fn brace(f: &Multilinear, gs: &[(&Multilinear, i64)], input_degrees: &[i64]) -> Multilinear {
    let arity = f.arity + gs.iter().map(|(g, _)| g.arity).sum::<usize>() - gs.len();
    let mut out = Multilinear::zero(arity);
    if gs.len() > f.arity {
        return out;
    }
    for pos in combinations(f.arity, gs.len()) {
        let mut slots = vec![Slot::Id; f.arity];
        for (p, (g, d)) in pos.iter().zip(gs) {
            slots[*p] = Slot::Map(g, *d);
        }
        out.add_scaled(&compose(f, &slots, input_degrees), &Rational::one());
    }
    out
}

/// `[f, g] = f{g} − (−1)^{|f||g|} g{f}`.
pub fn gerstenhaber(f: (&Multilinear, i64), g: (&Multilinear, i64), input_degrees: &[i64]) -> Multilinear {
    let mut out = brace(f.0, &[g], input_degrees);
    let other = brace(g.0, &[f], input_degrees);
    out.add_scaled(&other, &-pm((f.1 * g.1) & 1 == 1));
    out
}

/// A finitely supported element of the complex, split into homogeneous
/// components keyed by (part, arity, degree).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomElement {
    comps: BTreeMap<(Part, usize, i64), Multilinear>,
}

/// A borrowed homogeneous component.
#[derive(Debug, Clone, Copy)]
pub struct Piece<'a> {
    pub part: Part,
    pub degree: i64,
    pub map: &'a Multilinear,
}

impl HomElement {
    pub fn zero() -> Self {
        HomElement::default()
    }

    /// Wraps a map, splitting its entries by degree.
    pub fn from_map(space: &GradedSpace, part: Part, map: &Multilinear) -> Self {
        let mut e = HomElement::zero();
        e.add_map(space, part, map, &Rational::one());
        e
    }

    pub fn add_map(&mut self, space: &GradedSpace, part: Part, map: &Multilinear, c: &Rational) {
        for (ins, o, x) in map.entries() {
            let d = space.entry_degree(part, ins, o);
            let key = (part, map.arity, d);
            let slot = self.comps.entry(key).or_insert_with(|| Multilinear::zero(map.arity));
            slot.add_entry(ins.to_vec(), o, x * c);
            if slot.is_zero() {
                self.comps.remove(&key);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HomElement, c: &Rational) {
        for ((part, arity, d), m) in &other.comps {
            let key = (*part, *arity, *d);
            let slot = self.comps.entry(key).or_insert_with(|| Multilinear::zero(*arity));
            slot.add_scaled(m, c);
            if slot.is_zero() {
                self.comps.remove(&key);
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> HomElement {
        let mut out = HomElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sum(&self, other: &HomElement) -> HomElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece<'_>> {
        self.comps.iter().map(|((part, _, d), m)| Piece {
            part: *part,
            degree: *d,
            map: m,
        })
    }

    /// The total degree, if the element is homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.comps.keys().map(|k| k.2);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// The part of the element in one summand.
    pub fn restrict(&self, part: Part) -> HomElement {
        HomElement {
            comps: self.comps.iter().filter(|(k, _)| k.0 == part).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// The component of a given part and arity, summed over degrees.
    pub fn component(&self, part: Part, arity: usize) -> Multilinear {
        let mut out = Multilinear::zero(arity);
        for ((p, a, _), m) in &self.comps {
            if *p == part && *a == arity {
                out.add_scaled(m, &Rational::one());
            }
        }
        out
    }

    pub fn max_arity(&self, part: Part) -> usize {
        self.comps.keys().filter(|k| k.0 == part).map(|k| k.1).max().unwrap_or(0)
    }
}

impl fmt::Display for HomElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, ((part, arity, d), m)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{part:?}[n={arity}, deg={d}]: {m}")?;
        }
        Ok(())
    }
}

pub(crate) fn sign_of(odd: bool) -> Rational {
    pm(odd)
}

#[cfg(test)]
mod tests;
