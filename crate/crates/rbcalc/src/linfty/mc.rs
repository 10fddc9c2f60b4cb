//! Maurer-Cartan elements and the twisted brackets.

use num_traits::{One, Zero};

use crate::cohomology::{associativity_violation, cone_delta, rb_violation, Cochain, FiniteRBData};
use crate::report::CheckResult;
use crate::scalar::Rational;

use super::{sign_of, DeformationAlgebra, GradedSpace, HomElement, LinftyError, Multilinear, Part};

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from_integer((k as i64).into()))
}

/// `(−1)^{n(n−1)/2}/n!`
fn mc_weight(n: usize) -> Rational {
    sign_of((n * n.saturating_sub(1) / 2) % 2 == 1) / factorial(n)
}

/// The complex for an ungraded algebra together with `α = m + τ`, where
/// `m = −s∘μ∘(s^{-1}⊗s^{-1})` and `τ = T∘s^{-1}`. In degree 0 the Koszul
/// sign of `s^{-1}⊗s^{-1}` cancels the minus, so `m` carries the data of `μ`.
pub fn mc_element(data: &FiniteRBData) -> (DeformationAlgebra, HomElement) {
    let d = data.dim;
    let space = GradedSpace::ungraded(d);
    let mut m = Multilinear::zero(2);
    for i in 0..d {
        for j in 0..d {
            for (k, c) in data.mu[i][j].iter().enumerate() {
                m.add_entry(vec![i, j], k, c.clone());
            }
        }
    }
    let mut tau = Multilinear::zero(1);
    for i in 0..d {
        for (k, c) in data.t[i].iter().enumerate() {
            tau.add_entry(vec![i], k, c.clone());
        }
    }
    let mut alpha = HomElement::from_map(&space, Part::Alg, &m);
    alpha.add_map(&space, Part::Rbo, &tau, &Rational::one());
    (DeformationAlgebra::new(space, data.lambda.clone()), alpha)
}

/// Largest `n` with `l_n` possibly nonzero on arguments drawn from `xs`.
fn bracket_bound(xs: &[&HomElement]) -> usize {
    let alg = xs.iter().map(|x| x.max_arity(Part::Alg)).max().unwrap_or(0);
    (alg + 1).max(2)
}

/// `Σ_n (−1)^{n(n−1)/2}/n! · l_n(α^{⊗n})`. The sum is finite: a nonzero
/// `l_n` needs an Alg-part of arity at least `n − 1`.
pub fn mc_sum(alg: &DeformationAlgebra, alpha: &HomElement) -> HomElement {
    let mut out = HomElement::zero();
    for n in 1..=bracket_bound(&[alpha]) {
        let args = vec![alpha.clone(); n];
        out.add_scaled(&alg.l(&args), &mc_weight(n));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McVerdict {
    pub residual: HomElement,
    /// The Alg-part of the residual vanishes.
    pub alg_zero: bool,
    /// The RBO-part of the residual vanishes.
    pub rbo_zero: bool,
    pub associative: bool,
    pub rota_baxter: bool,
}

impl McVerdict {
    pub fn is_mc(&self) -> bool {
        self.residual.is_zero()
    }

    /// Whether the Maurer-Cartan equation agrees with the direct check,
    /// part by part.
    pub fn agrees(&self) -> bool {
        self.alg_zero == self.associative && self.rbo_zero == self.rota_baxter
    }
}

/// Associativity and the Rota-Baxter relation checked on the data directly.
pub fn direct_rb_check(data: &FiniteRBData) -> (bool, bool) {
    (associativity_violation(data).is_none(), rb_violation(data).is_none())
}

pub fn mc_check(data: &FiniteRBData) -> McVerdict {
    let (alg, alpha) = mc_element(data);
    let residual = mc_sum(&alg, &alpha);
    let (associative, rota_baxter) = direct_rb_check(data);
    McVerdict {
        alg_zero: residual.restrict(Part::Alg).is_zero(),
        rbo_zero: residual.restrict(Part::Rbo).is_zero(),
        residual,
        associative,
        rota_baxter,
    }
}

/// The brackets twisted by a Maurer-Cartan element:
/// `l^α_n(x) = Σ_i (1/i!)(−1)^{in + i(i−1)/2} l_{n+i}(α^{⊗i} ⊗ x)`.
/// Elements are finitely supported, so every such sum has finitely many
/// nonzero terms.
#[derive(Debug, Clone)]
pub struct Twisted<'a> {
    pub alg: &'a DeformationAlgebra,
    pub alpha: HomElement,
}

impl<'a> Twisted<'a> {
    /// Checks that `α` has degree −1 and solves the Maurer-Cartan equation.
    pub fn new(alg: &'a DeformationAlgebra, alpha: HomElement) -> Result<Self, LinftyError> {
        if !alpha.is_zero() {
            match alpha.degree() {
                Some(-1) => {}
                Some(d) => return Err(LinftyError::WrongDegree(d)),
                None => return Err(LinftyError::Inhomogeneous(0)),
            }
        }
        let residual = mc_sum(alg, &alpha);
        if !residual.is_zero() {
            return Err(LinftyError::NotMaurerCartan(residual.to_string()));
        }
        Ok(Twisted { alg, alpha })
    }

    /// Twisting by an element that is not checked; the brackets then need
    /// not satisfy the L∞ relations.
    pub fn unchecked(alg: &'a DeformationAlgebra, alpha: HomElement) -> Self {
        Twisted { alg, alpha }
    }

    pub fn l(&self, xs: &[HomElement]) -> HomElement {
        let n = xs.len();
        let mut all: Vec<&HomElement> = xs.iter().collect();
        all.push(&self.alpha);
        let bound = bracket_bound(&all);
        let mut out = HomElement::zero();
        for i in 0..=bound.saturating_sub(n) {
            if n + i == 0 {
                continue;
            }
            let mut args = vec![self.alpha.clone(); i];
            args.extend_from_slice(xs);
            let odd = (i * n + i * i.saturating_sub(1) / 2) % 2 == 1;
            let w = sign_of(odd) / factorial(i);
            out.add_scaled(&self.alg.l(&args), &w);
        }
        out
    }
}

/// A component of an element as a cochain `A^{⊗n} → A` (same table).
pub(crate) fn to_cochain(x: &HomElement, part: Part, arity: usize, dim: usize) -> Cochain {
    let map = x.component(part, arity);
    Cochain::from_fn(arity, dim, dim, |t| map.apply_basis(t, dim))
}

pub(crate) fn from_cochain(space: &GradedSpace, part: Part, f: &Cochain) -> HomElement {
    let mut map = Multilinear::zero(f.arity);
    let d = f.dim_in;
    let mut tuple = vec![0usize; f.arity];
    loop {
        for (o, c) in f.at(&tuple).iter().enumerate() {
            if !c.is_zero() {
                map.add_entry(tuple.clone(), o, c.clone());
            }
        }
        let mut k = f.arity;
        loop {
            if k == 0 {
                return HomElement::from_map(space, part, &map);
            }
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < d {
                break;
            }
            tuple[k] = 0;
        }
    }
}

/// `l_1^α = −d` on the cochains of the Rota-Baxter algebra: the degree `−n`
/// part of the complex is `Hom(A^{⊗n+1}, A) ⊕ Hom(A^{⊗n}, A)`, which is
/// `C^{n+1}_RBA`. Checked on basis cochains for `C^2, ..., C^{max_degree}`.
pub fn twisted_differential_check(data: &FiniteRBData, max_degree: usize) -> CheckResult {
    let mut c = CheckResult::new("twisted_l1_is_minus_cone_differential");
    let (alg, alpha) = mc_element(data);
    let Ok(tw) = Twisted::new(&alg, alpha) else {
        c.record(false, || "the data do not give a Maurer-Cartan element".into());
        return c;
    };
    let d = data.dim;
    let basis_cochains = |n: usize| -> Vec<Cochain> {
        let len = d.pow(n as u32) * d;
        (0..len)
            .map(|j| {
                let mut v = vec![Rational::zero(); len];
                v[j] = Rational::one();
                Cochain::from_coords(n, d, d, &v)
            })
            .collect()
    };
    for n in 2..=max_degree {
        let zero_f = Cochain::zero(n, d, d);
        let zero_g = Cochain::zero(n - 1, d, d);
        let inputs = basis_cochains(n)
            .into_iter()
            .map(|f| (f, zero_g.clone()))
            .chain(basis_cochains(n - 1).into_iter().map(|g| (zero_f.clone(), g)));
        for (f, g) in inputs {
            let mut x = from_cochain(&alg.space, Part::Alg, &f);
            x.add_scaled(&from_cochain(&alg.space, Part::Rbo, &g), &Rational::one());
            let y = tw.l(&[x]);
            let (df, dg) = cone_delta(data, &f, Some(&g)).expect("shapes agree");
            let ok = to_cochain(&y, Part::Alg, n + 1, d) == df.neg()
                && to_cochain(&y, Part::Rbo, n, d) == dg.neg()
                && y.max_arity(Part::Alg) <= n + 1
                && y.max_arity(Part::Rbo) <= n;
            c.record(ok, || format!("degree {n}: l_1 of ({:?}, {:?}) is {y}", f.coords(), g.coords()));
        }
    }
    c
}
