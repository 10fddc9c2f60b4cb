use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::mc::{from_cochain, to_cochain};
use super::*;
use crate::cohomology::{rbo_delta, Cochain, FiniteRBData, RandomRb};
use crate::freeoperad::Generator;
use crate::scalar::{rat, Rational};

fn map(arity: usize, entries: &[(&[usize], usize, i64)]) -> Multilinear {
    let mut m = Multilinear::zero(arity);
    for (ins, o, c) in entries {
        m.add_entry(ins.to_vec(), *o, rat(*c));
    }
    m
}

fn one_dim(lambda: i64, t: i64) -> FiniteRBData {
    FiniteRBData::new(rat(lambda), vec![vec![vec![rat(1)]]], vec![vec![rat(t)]]).with_regular_module()
}

#[test]
fn brackets_that_vanish() {
    let space = GradedSpace::ungraded(2);
    let alg = DeformationAlgebra::new(space.clone(), rat(3));
    let f = HomElement::from_map(&space, Part::Rbo, &map(1, &[(&[0], 1, 1), (&[1], 1, 2)]));
    let g = HomElement::from_map(&space, Part::Rbo, &map(2, &[(&[0, 1], 0, 1)]));
    assert!(alg.l(&[f.clone(), g.clone()]).is_zero());
    assert!(alg.l(std::slice::from_ref(&f)).is_zero());
    let h = HomElement::from_map(&space, Part::Alg, &map(2, &[(&[0, 0], 0, 1)]));
    assert!(alg.l(std::slice::from_ref(&h)).is_zero());
    // an Alg-part of arity 1 takes at most one RBO-part
    let h1 = HomElement::from_map(&space, Part::Alg, &map(1, &[(&[0], 0, 1)]));
    assert!(alg.l(&[h1, f, g]).is_zero());
}

#[test]
fn inhomogeneous_arguments_are_rejected() {
    let space = GradedSpace::ungraded(1);
    let alg = DeformationAlgebra::new(space.clone(), rat(1));
    let mut x = HomElement::from_map(&space, Part::Rbo, &map(1, &[(&[0], 0, 1)]));
    x.add_map(&space, Part::Rbo, &map(2, &[(&[0, 0], 0, 1)]), &rat(1));
    assert!(matches!(alg.try_l(&[x.clone(), x]), Err(LinftyError::Inhomogeneous(0))));
}

#[test]
fn bracket_of_a_product_with_itself_detects_associativity() {
    let space = GradedSpace::ungraded(2);
    let alg = DeformationAlgebra::new(space.clone(), rat(0));
    // dual numbers: associative
    let dual = map(2, &[(&[0, 0], 0, 1), (&[0, 1], 1, 1), (&[1, 0], 1, 1)]);
    let m = HomElement::from_map(&space, Part::Alg, &dual);
    assert!(alg.l(&[m.clone(), m]).is_zero());
    // e0e0 = e1, e1e0 = e0: (e0e0)e0 = e0 but e0(e0e0) = 0
    let bad = map(2, &[(&[0, 0], 1, 1), (&[1, 0], 0, 1)]);
    let m = HomElement::from_map(&space, Part::Alg, &bad);
    let b = alg.l(&[m.clone(), m]);
    assert!(!b.is_zero());
    assert_eq!(b.degree(), Some(-2));
}

#[test]
fn maurer_cartan_small_cases() {
    assert!(mc_check(&one_dim(0, 0)).is_mc());
    assert!(mc_check(&one_dim(2, -2)).is_mc());
    let v = mc_check(&one_dim(0, 1));
    assert!(!v.is_mc());
    assert!(v.alg_zero && !v.rbo_zero);
    assert!(v.agrees());
}

#[test]
fn maurer_cartan_matches_the_direct_check() {
    let mut r = RandomRb::new(77);
    for dim in [2, 3] {
        for _ in 0..12 {
            let data = r.any(dim);
            let v = mc_check(&data);
            assert!(v.agrees(), "{v:?}");
        }
    }
}

#[test]
fn twisting_by_zero_and_rejections() {
    let space = GradedSpace::new(vec![0, 1]);
    let alg = DeformationAlgebra::new(space.clone(), rat(2));
    let tw = Twisted::new(&alg, HomElement::zero()).unwrap();
    let x = HomElement::from_map(&space, Part::Alg, &map(2, &[(&[0, 1], 1, 1)]));
    let y = HomElement::from_map(&space, Part::Rbo, &map(1, &[(&[1], 1, 3)]));
    let args = [x, y];
    assert_eq!(tw.l(&args), alg.l(&args));

    let ungraded = DeformationAlgebra::new(GradedSpace::ungraded(1), rat(0));
    let wrong = HomElement::from_map(&ungraded.space, Part::Rbo, &map(2, &[(&[0, 0], 0, 1)]));
    assert!(matches!(Twisted::new(&ungraded, wrong), Err(LinftyError::WrongDegree(-2))));
    let (alg1, alpha) = mc_element(&one_dim(0, 1));
    assert!(matches!(Twisted::new(&alg1, alpha), Err(LinftyError::NotMaurerCartan(_))));
}

fn random_cochain(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Cochain {
    Cochain::from_fn(n, d, d, |_| (0..d).map(|_| rat(rng.gen_range(-2..=2))).collect())
}

#[test]
fn twisted_differential_on_cochains() {
    let mut r = RandomRb::new(21);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..6 {
        let data = r.valid(2);
        let (alg, alpha) = mc_element(&data);
        let tw = Twisted::new(&alg, alpha).unwrap();
        for n in 1..=3 {
            // on the RBO-part it is the operator differential itself
            let f = random_cochain(&mut rng, n, 2);
            let y = tw.l(&[from_cochain(&alg.space, Part::Rbo, &f)]);
            assert_eq!(to_cochain(&y, Part::Rbo, n + 1, 2), rbo_delta(&data, &f).unwrap());
            assert!(y.restrict(Part::Alg).is_zero());
            // and it squares to zero on both parts
            let x = from_cochain(&alg.space, Part::Alg, &f);
            assert!(tw.l(&[tw.l(&[x])]).is_zero());
        }
        let c = twisted_differential_check(&data, 3);
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn twisting_in_two_steps() {
    // α = (m, 0) first, then β = τ: the result is the twist by m + τ
    let mut r = RandomRb::new(5);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..6 {
        let data = r.valid(2);
        let (alg, full) = mc_element(&data);
        let m = full.restrict(Part::Alg);
        let tau = full.restrict(Part::Rbo);
        let first = Twisted::new(&alg, m).unwrap();
        let both = Twisted::new(&alg, full).unwrap();
        for n in 1..=3 {
            let f = from_cochain(&alg.space, Part::Rbo, &random_cochain(&mut rng, n, 2));
            let mut two_step = first.l(std::slice::from_ref(&f));
            two_step.add_scaled(&first.l(&[tau.clone(), f.clone()]), &-Rational::one());
            assert_eq!(two_step, both.l(&[f]));
        }
    }
}

#[test]
fn first_twisted_bracket_is_weighted_insertion() {
    // l_1^α(f) = (−1)^n λ f{m} for α = (m, 0) and f of arity n in the RBO-part
    let mut r = RandomRb::new(8);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..6 {
        let data = r.valid(2);
        let (alg, full) = mc_element(&data);
        let m = full.restrict(Part::Alg);
        let m2 = m.component(Part::Alg, 2);
        let tw = Twisted::new(&alg, m).unwrap();
        for n in 1..=3 {
            let f = random_cochain(&mut rng, n, 2);
            let x = from_cochain(&alg.space, Part::Rbo, &f);
            let fm = brace(&x.component(Part::Rbo, n), &[(&m2, -1)], &alg.space.suspended_degrees());
            let mut want = HomElement::from_map(&alg.space, Part::Rbo, &fm);
            want = want.scaled(&(super::sign_of(n % 2 == 1) * &data.lambda));
            assert_eq!(tw.l(&[x]), want);
        }
    }
}

#[test]
fn operator_maurer_cartan_equation() {
    // with α = (m, 0): l_1^α(τ) − ½ l_2^α(τ, τ) = 0 exactly when T is Rota-Baxter
    let mut r = RandomRb::new(12);
    let mut seen = [0usize; 2];
    for _ in 0..20 {
        let data = r.any(2);
        if crate::cohomology::associativity_violation(&data).is_some() {
            continue;
        }
        let (alg, full) = mc_element(&data);
        let tw = Twisted::new(&alg, full.restrict(Part::Alg)).unwrap();
        let tau = full.restrict(Part::Rbo);
        let mut lhs = tw.l(std::slice::from_ref(&tau));
        lhs.add_scaled(&tw.l(&[tau.clone(), tau]), &-crate::scalar::ratio(1, 2));
        let rb = crate::cohomology::rb_violation(&data).is_none();
        seen[usize::from(rb)] += 1;
        assert_eq!(lhs.is_zero(), rb);
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn sweeps_pass() {
    let cfg = SweepConfig { samples: 20, ..SweepConfig::default() };
    for c in [antisymmetry_sweep(&cfg), oracle_sweep(&cfg), jacobi_sweep(&cfg, false), jacobi_sweep(&cfg, true)] {
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.checked, 20);
    }
}

#[test]
fn strict_rota_baxter_algebras_are_homotopy_rota_baxter() {
    let mut r = RandomRb::new(31);
    for _ in 0..5 {
        let s = HomotopyRBStructure::from_rb(&r.valid(2));
        let rep = check_homotopy_rb(&s, 4);
        assert!(rep.passed(), "{rep:?}");
    }
    let zero = HomotopyRBStructure::new(GradedSpace::new(vec![0, 1, -1]), rat(1));
    assert!(check_homotopy_rb(&zero, 3).passed());
}

/// `k[ε]` with `|ε| = 1` resolved by `d(e1) = e0`: `T_1 = a·id` needs a
/// homotopy `T_2(e0, e0) = (a² + λa) e1`.
fn dual_numbers(a: i64, lambda: i64, with_t2: bool) -> HomotopyRBStructure {
    let mut s = HomotopyRBStructure::new(GradedSpace::new(vec![0, 1]), rat(lambda));
    s.m.insert(1, map(1, &[(&[1], 0, 1)]));
    s.m.insert(2, map(2, &[(&[0, 0], 0, 1), (&[0, 1], 1, 1), (&[1, 0], 1, 1)]));
    s.t.insert(1, map(1, &[(&[0], 0, a), (&[1], 1, a)]));
    if with_t2 {
        s.t.insert(2, map(2, &[(&[0, 0], 1, a * a + lambda * a)]));
    }
    s
}

#[test]
fn homotopy_on_dual_numbers() {
    for (a, lambda) in [(1, 0), (2, -1), (1, 3)] {
        let s = dual_numbers(a, lambda, true);
        assert!(s.degree_violations().is_empty());
        let rep = check_homotopy_rb(&s, 2);
        assert!(rep.passed(), "a = {a}, λ = {lambda}: {rep:?}");
        let rep = check_homotopy_rb(&dual_numbers(a, lambda, false), 2);
        assert!(!rep.get("rota_baxter_identity").unwrap().passed());
        assert!(rep.get("identities_match_morphism_condition").unwrap().passed());
    }
}

fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut t = vec![vec![]];
    for _ in 0..n {
        t = t
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..d).map(move |a| {
                    let mut v = v.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    t
}

/// Random operations of the right degrees; no identity is imposed.
fn random_graded_structure(seed: u64, max_n: usize) -> HomotopyRBStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.gen_range(1..=2);
    let space = GradedSpace::new((0..d).map(|_| rng.gen_range(-1..=1)).collect());
    let degs = space.degrees().to_vec();
    let mut s = HomotopyRBStructure::new(space, rat(rng.gen_range(-2..=2)));
    for n in 1..=max_n {
        for (is_m, shift) in [(true, -2i64), (false, -1)] {
            let mut m = Multilinear::zero(n);
            for ins in tuples(d, n) {
                for o in 0..d {
                    let deg = degs[o] - ins.iter().map(|&a| degs[a]).sum::<i64>();
                    if deg == n as i64 + shift && rng.gen_bool(0.7) {
                        m.add_entry(ins.clone(), o, rat(rng.gen_range(-2..=2)));
                    }
                }
            }
            if is_m {
                s.m.insert(n, m);
            } else {
                s.t.insert(n, m);
            }
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identities_are_the_morphism_condition(seed in any::<u64>()) {
        let s = random_graded_structure(seed, 4);
        for n in 1..=4 {
            let r = s.displayed_residual(n);
            prop_assert_eq!(&r, &s.displayed_residual_second(n));
            let o = s.derivation_residual(Generator::t(n));
            let sign = if (n * (n - 1) / 2 + 1) % 2 == 1 { -Rational::one() } else { Rational::one() };
            prop_assert_eq!(r, o.scaled(&sign));
            if n >= 2 {
                let o = s.derivation_residual(Generator::m(n));
                prop_assert_eq!(s.stasheff_residual(n), o.scaled(&-Rational::one()));
            }
        }
        prop_assert!(check_homotopy_rb(&s, 4).get("identities_match_morphism_condition").unwrap().passed());
    }

    #[test]
    fn generalised_antisymmetry(seed in any::<u64>()) {
        let cfg = SweepConfig { seed, samples: 4, ..SweepConfig::default() };
        prop_assert!(antisymmetry_sweep(&cfg).passed());
    }
}

#[test]
fn eta_expressions_agree() {
    assert!(super::hrb::compare_eta_forms(6).passed());
}

#[test]
fn homotopy_structure_from_json() {
    let s = HomotopyRBStructure::from_json(
        r#"{"degrees": [0, 1], "lambda": "1/2", "d": [[[0, 0], [0, 0]], [[1, 0], [0, 0]]] }"#,
    );
    // "d" is a one-input table: rows are inputs, entries are outputs
    assert!(s.is_err());
    let s = HomotopyRBStructure::from_json(r#"{"degrees": [0, 1], "lambda": "1/2", "d": [[0, 0], [1, 0]], "T": {"1": [[2, 0], [0, 2]]}}"#).unwrap();
    assert_eq!(s.lambda, crate::scalar::ratio(1, 2));
    assert_eq!(s.m_op(1), map(1, &[(&[1], 0, 1)]));
    assert_eq!(s.t_op(1), map(1, &[(&[0], 0, 2), (&[1], 1, 2)]));

    let data = RandomRb::new(3).valid(2);
    let text = data.to_json().to_string();
    let s = HomotopyRBStructure::from_json(&text).unwrap();
    assert_eq!(s, HomotopyRBStructure::from_rb(&data));

    for bad in [
        r#"{"degrees": [0], "extra": 1}"#,
        r#"{"dim": 2, "degrees": [0]}"#,
        r#"{"degrees": [0, 1], "d": [[1, 0], [0, 0]]}"#,
        r#"{"dim": 1, "mu": [[[1]]], "m": {"2": [[[1]]]}}"#,
        r#"{"dim": 1, "T": {"0": [1]}}"#,
        r#"{"dim": 1, "T": [[1, 2]]}"#,
        "[1]",
    ] {
        assert!(HomotopyRBStructure::from_json(bad).is_err(), "{bad}");
    }
}
