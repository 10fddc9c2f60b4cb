//! The brackets `l_n` given case by case: two Alg-parts bracket by the
//! Gerstenhaber bracket; one Alg-part `sh` of arity `n` with `m ≤ n`
//! RBO-parts gives an RBO-part (with a `λ^{n−m}` weight when `m < n`);
//! everything else vanishes.

use num_traits::{One, Zero};

use crate::scalar::Rational;
use crate::sign::{chi_negative, permutations};

use super::{brace, compose, gerstenhaber, sign_of, GradedSpace, HomElement, LinftyError, Multilinear, Part, Piece, Slot};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationAlgebra {
    pub space: GradedSpace,
    pub lambda: Rational,
}

/// `Σ_{k=1}^{m−1} Σ_{j≤k} d_j`
fn nested_sum(ds: &[i64]) -> i64 {
    let mut total = 0;
    let mut run = 0;
    for d in ds.iter().take(ds.len().saturating_sub(1)) {
        run += d;
        total += run;
    }
    total
}

impl DeformationAlgebra {
    pub fn new(space: GradedSpace, lambda: Rational) -> Self {
        DeformationAlgebra { space, lambda }
    }

    /// `l_n(args)` for homogeneous arguments.
    pub fn try_l(&self, args: &[HomElement]) -> Result<HomElement, LinftyError> {
        if let Some(i) = args.iter().position(|a| !a.is_homogeneous()) {
            return Err(LinftyError::Inhomogeneous(i));
        }
        Ok(self.l(args))
    }

    /// `l_n(args)`, extended multilinearly over homogeneous components.
    pub fn l(&self, args: &[HomElement]) -> HomElement {
        let mut out = HomElement::zero();
        if args.is_empty() || args.iter().any(HomElement::is_zero) {
            return out;
        }
        let lists: Vec<Vec<Piece>> = args.iter().map(|a| a.pieces().collect()).collect();
        let mut idx = vec![0usize; args.len()];
        loop {
            let pieces: Vec<Piece> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            out.add_scaled(&self.l_pieces(&pieces), &Rational::one());
            // odometer
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

    /// The bracket of homogeneous components.
    pub fn l_pieces(&self, args: &[Piece]) -> HomElement {
        let algs: Vec<usize> = (0..args.len()).filter(|&i| args[i].part == Part::Alg).collect();
        match (args.len(), algs.len()) {
            (2, 2) => self.two_alg(args[0], args[1]),
            (len, 1) if len >= 2 => {
                let k = algs[0];
                let sh = args[k];
                let gs: Vec<Piece> = args.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| *p).collect();
                let base = self.alg_first(sh, &gs);
                if k == 0 {
                    return base;
                }
                let before: i64 = gs[..k].iter().map(|g| g.degree).sum();
                let odd = ((sh.degree * before) + k as i64) & 1 == 1;
                base.scaled(&sign_of(odd))
            }
            _ => HomElement::zero(),
        }
    }

    fn two_alg(&self, f: Piece, h: Piece) -> HomElement {
        let ins = self.space.suspended_degrees();
        let b = gerstenhaber((f.map, f.degree), (h.map, h.degree), &ins);
        HomElement::from_map(&self.space, Part::Alg, &b)
    }

    /// `l_{m+1}(sh ⊗ g_1 ⊗ ... ⊗ g_m)`.
    fn alg_first(&self, sh: Piece, gs: &[Piece]) -> HomElement {
        let n = sh.map.arity();
        let m = gs.len();
        if m == 0 || m > n {
            return HomElement::zero();
        }
        let ins = self.space.suspended_degrees();
        let h_deg = sh.degree - 1;
        let h1 = h_deg + 1;
        let degs: Vec<i64> = gs.iter().map(|g| g.degree).collect();
        let mut total = Multilinear::zero(n + gs.iter().map(|g| g.map.arity()).sum::<usize>() - m);
        // `s^{-1}(sg_σ1){sh{sg_σ2, ..., sg_σm}}`
        let nested = |order: &[usize]| -> Multilinear {
            let inner_args: Vec<(&Multilinear, i64)> = order[1..].iter().map(|&j| (gs[j].map, gs[j].degree + 1)).collect();
            let inner = brace(sh.map, &inner_args, &ins);
            let inner_deg = sh.degree + inner_args.iter().map(|a| a.1).sum::<i64>();
            let g1 = gs[order[0]];
            brace(g1.map, &[(&inner, inner_deg)], &ins)
        };
        for order in permutations(m) {
            let chi = chi_negative(&degs, &order);
            let ordered: Vec<i64> = order.iter().map(|&j| degs[j]).collect();
            let g1 = degs[order[0]];
            if m == n {
                let eta = n as i64 * h1 + nested_sum(&ordered);
                let slots: Vec<Slot> = order.iter().map(|&j| Slot::Map(gs[j].map, gs[j].degree + 1)).collect();
                let mut term = compose(sh.map, &slots, &ins);
                let second = nested(&order);
                term.add_scaled(&second, &-sign_of(((g1 + 1) * h1) & 1 == 1));
                total.add_scaled(&term, &sign_of(chi ^ (eta & 1 == 1)));
            } else {
                let xi = 1 + m as i64 * h1 + nested_sum(&ordered) + h1 * (g1 + 1);
                let mut weight = sign_of(chi ^ (xi & 1 == 1));
                for _ in 0..n - m {
                    weight *= &self.lambda;
                }
                if weight.is_zero() {
                    continue;
                }
                total.add_scaled(&nested(&order), &weight);
            }
        }
        HomElement::from_map(&self.space, Part::Rbo, &total)
    }

    /// `l_n(x_σ) − χ(σ) l_n(x)`, which vanishes by generalised antisymmetry.
    pub fn antisymmetry_defect(&self, args: &[HomElement], order: &[usize]) -> HomElement {
        let degs: Vec<i64> = args.iter().map(|a| a.degree().unwrap_or(0)).collect();
        let permuted: Vec<HomElement> = order.iter().map(|&i| args[i].clone()).collect();
        let mut out = self.l(&permuted);
        let chi = sign_of(chi_negative(&degs, order));
        out.add_scaled(&self.l(args), &-chi);
        out
    }
}
