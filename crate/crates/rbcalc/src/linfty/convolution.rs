//! The same brackets computed the long way: through the homotopy operad
//! `Hom(S(RB^¡), End_{sV})`, whose operations are
//! `m_T(f_1..f_w) = ± m^T ∘ (f_1 ⊗ ... ⊗ f_w) ∘ Δ_T`, antisymmetrised.
//! Used as an independent oracle for the case-by-case formulas.

use num_traits::Zero;

use crate::cooperad::{delta_srb, CoFamily, CoGenerator};
use crate::scalar::Rational;
use crate::sign::{chi_negative, permutations};
use crate::trees::PlanarTree;

use super::{compose, sign_of, GradedSpace, HomElement, Multilinear, Part, Piece, Slot};

/// Planar trees whose vertices, in planar order, have the given arities.
fn trees_with_arities(arities: &[usize]) -> Vec<PlanarTree> {
    fn rec(arities: &[usize], next: usize, open: usize, tokens: &mut Vec<u16>, out: &mut Vec<PlanarTree>) {
        if open == 0 {
            if next == arities.len() {
                out.push(PlanarTree::from_tokens(tokens.clone()));
            }
            return;
        }
        tokens.push(0);
        rec(arities, next, open - 1, tokens, out);
        tokens.pop();
        if next < arities.len() {
            tokens.push(arities[next] as u16);
            rec(arities, next + 1, open - 1 + arities[next], tokens, out);
            tokens.pop();
        }
    }
    let mut out = Vec::new();
    if let Some(&a) = arities.first() {
        rec(arities, 1, a, &mut vec![a as u16], &mut out);
    }
    out
}

/// `m_T` summed over all trees, for homogeneous components in a fixed order.
fn m_total(space: &GradedSpace, lambda: &Rational, xs: &[Piece]) -> HomElement {
    let w = xs.len();
    let ins = space.suspended_degrees();
    let arities: Vec<usize> = xs.iter().map(|x| x.map.arity()).collect();
    let total_deg: i64 = xs.iter().map(|x| x.degree).sum();
    let prefactor = sign_of(((w * (w - 1) / 2) as i64 + 1 + w as i64 * total_deg) & 1 == 1);
    let mut out = HomElement::zero();
    for t in trees_with_arities(&arities) {
        let n = t.arity();
        let tokens = t.tokens();
        // slot of each vertex in the partially composed tree
        let slots: Vec<usize> = tokens
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(pos, _)| tokens[..pos].iter().filter(|&&x| x == 0).count())
            .collect();
        for c in [CoGenerator::u(n), CoGenerator::v(n)] {
            for term in delta_srb(c, &t) {
                let coef = term.coefficient.eval(lambda);
                if coef.is_zero() {
                    continue;
                }
                let fits = xs.iter().zip(&term.decorations).all(|(x, d)| {
                    matches!((x.part, d.family), (Part::Alg, CoFamily::U) | (Part::Rbo, CoFamily::V))
                });
                if !fits {
                    continue;
                }
                // (f_1 ⊗ ... ⊗ f_w)(c_1 ⊗ ... ⊗ c_w) and the sign of ĝ(v) = (−1)^{|g|} sg
                let mut odd = false;
                let mut before = 0;
                for (x, d) in xs.iter().zip(&term.decorations) {
                    odd ^= (x.degree * before) & 1 == 1;
                    before += d.degree();
                    if x.part == Part::Rbo {
                        odd ^= x.degree & 1 == 1;
                    }
                }
                let value_deg = |k: usize| xs[k].degree + term.decorations[k].degree();
                let mut acc: Multilinear = xs[0].map.clone();
                for k in 1..w {
                    let mut sl = vec![Slot::Id; acc.arity()];
                    sl[slots[k]] = Slot::Map(xs[k].map, value_deg(k));
                    acc = compose(&acc, &sl, &ins);
                }
                let mut c_total = &(&prefactor * &coef) * &sign_of(odd);
                let part = match c.family {
                    CoFamily::U => Part::Alg,
                    _ => {
                        // ψ(v_n) = (−1)^{|ψ|} s g
                        c_total *= sign_of((total_deg + w as i64 - 2) & 1 == 1);
                        Part::Rbo
                    }
                };
                out.add_map(space, part, &acc, &c_total);
            }
        }
    }
    out
}

/// `l_n` of the convolution homotopy operad, extended multilinearly.
pub fn convolution_bracket(space: &GradedSpace, lambda: &Rational, args: &[HomElement]) -> HomElement {
    let mut out = HomElement::zero();
    if args.len() < 2 || args.iter().any(HomElement::is_zero) {
        return out;
    }
    let lists: Vec<Vec<Piece>> = args.iter().map(|a| a.pieces().collect()).collect();
    let mut idx = vec![0usize; args.len()];
    loop {
        let pieces: Vec<Piece> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
        let degs: Vec<i64> = pieces.iter().map(|p| p.degree).collect();
        for order in permutations(pieces.len()) {
            let permuted: Vec<Piece> = order.iter().map(|&i| pieces[i]).collect();
            let chi = sign_of(chi_negative(&degs, &order));
            out.add_scaled(&m_total(space, lambda, &permuted), &chi);
        }
        let mut k = args.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_enumeration_by_arities() {
        // a 2-vertex tree with arities (2, 1) can put the second vertex on either input
        assert_eq!(trees_with_arities(&[2, 1]).len(), 2);
        assert_eq!(trees_with_arities(&[2, 2, 2]).len(), 5);
        assert_eq!(trees_with_arities(&[1]).len(), 1);
        for t in trees_with_arities(&[3, 1, 2]) {
            assert_eq!(t.vertex_arities(), vec![3, 1, 2]);
        }
    }
}
