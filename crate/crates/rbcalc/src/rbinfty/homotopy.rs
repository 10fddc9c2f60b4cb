//! The contracting homotopy `H` on positive degrees.
//!
//! For an effective monomial `𝒯` with effective divisor `𝒯'` of source `S`,
//! `H̄(𝒯)` replaces `𝒯'` by `S` with the sign of the degrees preceding the
//! divisor root and the factor `1/l_S`. `H(𝒯) = H̄(𝒯) + H(𝒯̄)` where `𝒯̄`
//! is what remains of `𝒯` after subtracting the `S`-vertex term of `∂H̄(𝒯)`;
//! every monomial of `𝒯̄` is strictly smaller than `𝒯`.

use std::collections::HashMap;

use crate::freeoperad::{Accumulator, OperadElement, TreeMonomial};
use crate::scalar::Scalar;

use super::boundary::boundary_generator;
use super::effective::{effective_divisor, EffectiveData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomotopyError {
    #[error("{0} is not effective")]
    NotEffective(String),
    #[error("leading coefficient {0} of the source differential is not a unit constant")]
    NonUnitLeading(String),
}

/// One step of the recursion: `H̄(𝒯)` and the tail `𝒯̄`.
#[derive(Debug, Clone)]
pub struct HomotopyStep {
    pub data: EffectiveData,
    pub hbar: OperadElement,
    pub tail: OperadElement,
}

#[derive(Default)]
pub struct Homotopy {
    memo: HashMap<TreeMonomial, OperadElement>,
}

fn unit_inverse(c: &Scalar) -> Result<Scalar, HomotopyError> {
    match c.as_constant() {
        Some(x) if x == num_traits::One::one() || -x.clone() == num_traits::One::one() => Ok(Scalar::constant(x.recip())),
        _ => Err(HomotopyError::NonUnitLeading(c.to_string())),
    }
}

pub fn step(m: &TreeMonomial) -> Result<HomotopyStep, HomotopyError> {
    let data = effective_divisor(m).ok_or_else(|| HomotopyError::NotEffective(m.to_string()))?;
    let root = data.divisor.root;
    let len = data.divisor.vertices.len();
    let contracted = m.contract_block(root, len, data.source);
    let omega: i64 = m.decorations()[..root].iter().map(|g| g.degree()).sum();

    // the S-vertex term of ∂(contracted), without the derivation sign
    let ds = boundary_generator(data.source);
    let mut kappa = None;
    let mut rest = Accumulator::default();
    for (piece, c) in ds.terms() {
        let (neg, out) = contracted.substitute(root, piece);
        if &out == m {
            kappa = Some(if neg { -c } else { c.clone() });
        } else {
            rest.add_signed(out, c, neg);
        }
    }
    let kappa = kappa.expect("an effective divisor is the leading term of its source differential");
    let inv = unit_inverse(&kappa)?;
    let sign = Scalar::sign(omega & 1 == 1);
    let hbar = OperadElement::monomial(contracted).scale(&(&sign * &inv));
    let tail = rest.finish().scale(&-inv);
    Ok(HomotopyStep { data, hbar, tail })
}

/// `H̄(𝒯)`.
pub fn hbar(m: &TreeMonomial) -> Result<OperadElement, HomotopyError> {
    step(m).map(|s| s.hbar)
}

impl Homotopy {
    pub fn new() -> Self {
        Homotopy::default()
    }

    /// Number of monomials whose image is cached.
    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    pub fn apply_monomial(&mut self, m: &TreeMonomial) -> OperadElement {
        if let Some(e) = self.memo.get(m) {
            return e.clone();
        }
        let out = match step(m) {
            Err(HomotopyError::NotEffective(_)) => OperadElement::zero(),
            Err(e) => panic!("{e}"),
            Ok(s) => {
                for (t, _) in s.tail.terms() {
                    assert!(t < m, "homotopy tail {t} is not below {m}");
                }
                let mut acc = Accumulator::default();
                acc.add_element(&s.hbar, &Scalar::one());
                for (t, c) in s.tail.terms() {
                    let h = self.apply_monomial(t);
                    acc.add_element(&h, c);
                }
                acc.finish()
            }
        };
        self.memo.insert(m.clone(), out.clone());
        out
    }

    pub fn apply(&mut self, e: &OperadElement) -> OperadElement {
        let mut acc = Accumulator::default();
        for (m, c) in e.terms() {
            let h = self.apply_monomial(m);
            acc.add_element(&h, c);
        }
        acc.finish()
    }
}

/// `H(e)` with a fresh cache.
pub fn homotopy(e: &OperadElement) -> OperadElement {
    Homotopy::new().apply(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeoperad::{parse_composition_expr, parse_monomial, Generator};
    use crate::rbinfty::boundary::boundary;

    fn p(s: &str) -> OperadElement {
        parse_composition_expr(s).unwrap()
    }

    #[test]
    fn small_values() {
        // l_{m3} = -1
        assert_eq!(homotopy(&p("m2∘1 m2")), p("-m3"));
        assert!(homotopy(&p("m2∘2 m2")).is_zero());
        assert_eq!(hbar(&parse_monomial("m2(m2(1,2),3)").unwrap()).unwrap(), p("-m3"));
        let l = boundary_generator(Generator::t(2)).leading_term().unwrap().0;
        let h = hbar(&parse_monomial("T1(m2(T1(1),2))").unwrap()).unwrap();
        assert_eq!(h, OperadElement::generator(Generator::t(2)).scale(&unit_inverse(&l).unwrap()));
        assert!(hbar(&parse_monomial("m2(1,m2(2,3))").unwrap()).is_err());
    }

    #[test]
    fn identity_on_m3_and_t2() {
        for g in [Generator::m(3), Generator::t(2), Generator::m(4), Generator::t(3)] {
            let x = OperadElement::generator(g);
            let mut h = Homotopy::new();
            let lhs = boundary(&h.apply(&x)).add(&h.apply(&boundary(&x)));
            assert_eq!(lhs, x, "{g}");
        }
    }
}
