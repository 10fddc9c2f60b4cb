//! Randomised checks of the L∞ axioms on small graded spaces.

use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::random_valid_rb;
use crate::report::CheckResult;
use crate::scalar::{rat, Rational};
use crate::sign::{chi_negative, permutations, shuffles};

use super::{convolution_bracket, mc_element, sign_of, DeformationAlgebra, GradedSpace, HomElement, Multilinear, Part, Twisted};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    pub samples: usize,
    /// Largest dimension of `V`.
    pub max_dim: usize,
    /// Largest arity of a random component.
    pub max_arity: usize,
    /// Largest number of arguments fed to a bracket.
    pub max_args: usize,
    /// Fixed weight; drawn at random when absent.
    pub lambda: Option<Rational>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 0x5eed,
            samples: 40,
            max_dim: 2,
            max_arity: 3,
            max_args: 4,
            lambda: None,
        }
    }
}

fn random_space<R: Rng>(rng: &mut R, max_dim: usize) -> GradedSpace {
    let d = rng.gen_range(1..=max_dim);
    GradedSpace::new((0..d).map(|_| rng.gen_range(-1..=1)).collect())
}

fn draw_lambda<R: Rng>(rng: &mut R, cfg: &SweepConfig) -> Rational {
    cfg.lambda.clone().unwrap_or_else(|| crate::cohomology::random_lambda(rng))
}

fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// A homogeneous element with a single component of the given part and
/// arity, with small integer entries. May be zero when no entry fits.
pub fn random_element<R: Rng>(rng: &mut R, space: &GradedSpace, part: Part, arity: usize) -> HomElement {
    let d = space.dim();
    let mut cells: Vec<(Vec<usize>, usize)> = Vec::new();
    for ins in tuples(d, arity) {
        for o in 0..d {
            cells.push((ins.clone(), o));
        }
    }
    let (ins0, o0) = &cells[rng.gen_range(0..cells.len())];
    let target = space.entry_degree(part, ins0, *o0);
    let mut map = Multilinear::zero(arity);
    for (ins, o) in cells {
        if space.entry_degree(part, &ins, o) == target && rng.gen_bool(0.7) {
            map.add_entry(ins, o, rat(rng.gen_range(-2..=2)));
        }
    }
    HomElement::from_map(space, part, &map)
}

fn random_args<R: Rng>(rng: &mut R, space: &GradedSpace, cfg: &SweepConfig, n: usize) -> Vec<HomElement> {
    (0..n)
        .map(|_| {
            let part = if rng.gen_bool(0.5) { Part::Alg } else { Part::Rbo };
            let arity = rng.gen_range(1..=cfg.max_arity);
            random_element(rng, space, part, arity)
        })
        .collect()
}

/// `Σ_{i} Σ_{σ ∈ Sh(i, n−i)} χ(σ)(−1)^{i(n−i)} l_{n−i+1}(l_i(x_σ..) ⊗ x_σ..)`.
pub fn jacobi_sum(bracket: &dyn Fn(&[HomElement]) -> HomElement, xs: &[HomElement]) -> HomElement {
    let n = xs.len();
    let degs: Vec<i64> = xs.iter().map(|x| x.degree().unwrap_or(0)).collect();
    let mut out = HomElement::zero();
    for i in 1..=n {
        for sh in shuffles(n, i) {
            let inner_args: Vec<HomElement> = sh[..i].iter().map(|&k| xs[k].clone()).collect();
            let inner = bracket(&inner_args);
            if inner.is_zero() {
                continue;
            }
            let mut args = vec![inner];
            args.extend(sh[i..].iter().map(|&k| xs[k].clone()));
            let odd = chi_negative(&degs, &sh) ^ ((i * (n - i)) % 2 == 1);
            out.add_scaled(&bracket(&args), &sign_of(odd));
        }
    }
    out
}

fn witness(xs: &[HomElement], residue: &HomElement) -> String {
    let args: Vec<String> = xs.iter().map(|x| format!("[{x}]")).collect();
    format!("args {} give {residue}", args.join(" "))
}

/// Generalised antisymmetry of `l_n` under random permutations.
pub fn antisymmetry_sweep(cfg: &SweepConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = CheckResult::new("antisymmetry");
    for _ in 0..cfg.samples {
        let space = random_space(&mut rng, cfg.max_dim);
        let alg = DeformationAlgebra::new(space.clone(), draw_lambda(&mut rng, cfg));
        let n = rng.gen_range(2..=cfg.max_args);
        let xs = random_args(&mut rng, &space, cfg, n);
        let perms = permutations(n);
        let order = &perms[rng.gen_range(0..perms.len())];
        let defect = alg.antisymmetry_defect(&xs, order);
        c.record(defect.is_zero(), || format!("order {order:?}: {}", witness(&xs, &defect)));
    }
    c
}

/// The case-by-case brackets against the convolution brackets.
pub fn oracle_sweep(cfg: &SweepConfig) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x0c0);
    let mut c = CheckResult::new("brackets_match_convolution");
    for _ in 0..cfg.samples {
        let space = random_space(&mut rng, cfg.max_dim);
        let lambda = draw_lambda(&mut rng, cfg);
        let alg = DeformationAlgebra::new(space.clone(), lambda.clone());
        let n = rng.gen_range(2..=cfg.max_args);
        let xs = random_args(&mut rng, &space, cfg, n);
        let mut diff = alg.l(&xs);
        diff.add_scaled(&convolution_bracket(&space, &lambda, &xs), &-Rational::one());
        c.record(diff.is_zero(), || format!("λ = {lambda}: {}", witness(&xs, &diff)));
    }
    c
}

/// The Jacobi identities for the brackets and, when `twisted`, for the
/// brackets twisted by the Maurer-Cartan element of a random Rota-Baxter
/// algebra (then `V` is ungraded).
pub fn jacobi_sweep(cfg: &SweepConfig, twisted: bool) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ if twisted { 0x7a } else { 0x1a });
    let name = if twisted { "jacobi_twisted" } else { "jacobi" };
    let mut c = CheckResult::new(name);
    for _ in 0..cfg.samples {
        let n = rng.gen_range(1..=cfg.max_args);
        if twisted {
            let dim = rng.gen_range(1..=cfg.max_dim);
            let lambda = draw_lambda(&mut rng, cfg);
            let data = random_valid_rb(&mut rng, dim, Some(lambda));
            let (alg, alpha) = mc_element(&data);
            let tw = Twisted::new(&alg, alpha).expect("valid data give a Maurer-Cartan element");
            let xs = random_args(&mut rng, &alg.space, cfg, n);
            let j = jacobi_sum(&|a: &[HomElement]| tw.l(a), &xs);
            c.record(j.is_zero(), || witness(&xs, &j));
        } else {
            let space = random_space(&mut rng, cfg.max_dim);
            let alg = DeformationAlgebra::new(space.clone(), draw_lambda(&mut rng, cfg));
            let xs = random_args(&mut rng, &space, cfg, n);
            let j = jacobi_sum(&|a: &[HomElement]| alg.l(a), &xs);
            c.record(j.is_zero(), || witness(&xs, &j));
        }
    }
    c
}
