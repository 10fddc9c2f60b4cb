use proptest::prelude::*;

use super::*;
use crate::rbinfty::order::compare_by_rules;
use crate::sign::koszul_negative;
use crate::trees::enumerate_trees;

fn p(s: &str) -> OperadElement {
    parse_composition_expr(s).unwrap()
}

fn g(kind: GenKind, arity: usize) -> OperadElement {
    OperadElement::generator(Generator { kind, arity })
}

fn arb_generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (2usize..=4).prop_map(Generator::m),
        (1usize..=3).prop_map(Generator::t),
    ]
}

/// A monomial built by composing up to three random generators.
fn arb_monomial() -> impl Strategy<Value = TreeMonomial> {
    (arb_generator(), prop::collection::vec((arb_generator(), 0usize..16), 0..3)).prop_map(|(root, rest)| {
        let mut m = TreeMonomial::generator(root);
        for (x, slot) in rest {
            let i = slot % m.arity() + 1;
            m = m.compose(i, &TreeMonomial::generator(x)).unwrap().1;
        }
        m
    })
}

fn mono(m: &TreeMonomial) -> OperadElement {
    OperadElement::monomial(m.clone())
}

#[test]
fn compose_sign_matches_koszul_reordering() {
    let ms: Vec<TreeMonomial> = ["m3(1,2,3)", "T2(1,m2(2,3))", "m2(T2(1,2),3)", "T3(1,2,3)", "m4(1,2,3,4)"]
        .iter()
        .map(|s| parse_monomial(s).unwrap())
        .collect();
    for a in &ms {
        for b in &ms {
            for i in 1..=a.arity() {
                let (neg, c) = a.compose(i, b).unwrap();
                let k = a.tree().vertices_before_leaf(i);
                let (na, nb) = (a.weight(), b.weight());
                let degrees: Vec<i64> = a.decorations().iter().chain(b.decorations()).map(Generator::degree).collect();
                let origin: Vec<usize> = (0..k).chain(na..na + nb).chain(k..na).collect();
                assert_eq!(neg, koszul_negative(&degrees, &origin), "{a} ∘{i} {b}");
                assert_eq!(c.weight(), na + nb);
                assert_eq!(c.arity(), a.arity() + b.arity() - 1);
            }
        }
    }
}

#[test]
fn compose_along_tree_matches_nested_composition() {
    let t: crate::trees::PlanarTree = "((_,_),_,(_,_))".parse().unwrap();
    let decs = [g(GenKind::M, 3), g(GenKind::T, 2), g(GenKind::M, 2)];
    let along = compose_along_tree(&t, &decs).unwrap();
    let nested = compose(&compose(&decs[0], 3, &decs[2]).unwrap(), 1, &decs[1]).unwrap();
    assert_eq!(along, nested);
    let monomial = TreeMonomial::new(t, vec![Generator::m(3), Generator::t(2), Generator::m(2)]).unwrap();
    assert_eq!(along, mono(&monomial));
}

#[test]
fn compose_along_tree_rejects_mismatched_arity() {
    let t: crate::trees::PlanarTree = "((_,_),_)".parse().unwrap();
    assert!(compose_along_tree(&t, &[g(GenKind::M, 2), g(GenKind::M, 3)]).is_err());
}

#[test]
fn brace_examples() {
    let m2 = g(GenKind::M, 2);
    let t1 = g(GenKind::T, 1);
    assert_eq!(brace(&m2, std::slice::from_ref(&m2)).unwrap(), p("m2∘1 m2 + m2∘2 m2"));
    assert_eq!(brace(&m2, &[t1.clone(), t1.clone()]).unwrap(), p("(m2∘1 T1)∘2 T1"));
    assert_eq!(brace(&m2, &[]).unwrap(), m2);
    assert!(brace(&m2, &[t1.clone(), t1.clone(), t1]).is_err());
    // degree-one insertions past a degree-one vertex pick up a sign
    let m3 = g(GenKind::M, 3);
    assert_eq!(brace(&m3, std::slice::from_ref(&m3)).unwrap(), p("m3∘1 m3 + m3∘2 m3 + m3∘3 m3"));
}

#[test]
fn gerstenhaber_of_m2_with_itself() {
    let m2 = g(GenKind::M, 2);
    assert!(gerstenhaber(&m2, &m2).unwrap().is_zero());
    let m3 = g(GenKind::M, 3);
    let b = gerstenhaber(&m3, &m3).unwrap();
    assert_eq!(b, brace(&m3, std::slice::from_ref(&m3)).unwrap().scale(&Scalar::int(2)));
}

#[test]
fn render_and_parse_round_trip_on_enumeration() {
    for arity in 1..=4 {
        for weight in 1..=3 {
            for t in enumerate_trees(weight, arity) {
                let decs: Vec<Generator> = t
                    .vertex_arities()
                    .iter()
                    .map(|&k| if k >= 2 { Generator::m(k) } else { Generator::t(k) })
                    .collect();
                let m = TreeMonomial::new(t, decs).unwrap();
                let text = render_composition(&m);
                assert_eq!(p(&text), mono(&m), "{text}");
                assert_eq!(parse_monomial(&m.to_string()).unwrap(), m);
            }
        }
    }
}

#[test]
fn render_element_form() {
    let e = p("m2∘1 m2 − m2∘2 m2");
    assert_eq!(render_element(&e), "m2∘1 m2 − m2∘2 m2");
    let e = p("T1∘1(m2∘1 T1) + l*T1∘1 m2 + 3/2*T2");
    assert_eq!(p(&render_element(&e)), e);
    assert_eq!(render_element(&OperadElement::zero()), "0");
}

#[test]
fn order_key_agrees_with_rules_and_is_injective() {
    let mut all = Vec::new();
    for arity in 1..=4 {
        for weight in 1..=3 {
            for t in enumerate_trees(weight, arity) {
                let arities = t.vertex_arities();
                let choices: usize = arities.iter().map(|&k| if k >= 2 { 2 } else { 1 }).product();
                for mask in 0..choices {
                    let mut r = mask;
                    let decs: Vec<Generator> = arities
                        .iter()
                        .map(|&k| {
                            if k >= 2 {
                                let pick = r % 2;
                                r /= 2;
                                if pick == 0 { Generator::m(k) } else { Generator::t(k) }
                            } else {
                                Generator::t(k)
                            }
                        })
                        .collect();
                    all.push(TreeMonomial::new(t.clone(), decs).unwrap());
                }
            }
        }
    }
    for a in all.iter().step_by(3) {
        for b in &all {
            assert_eq!(a.cmp(b), compare_by_rules(a, b), "{a} vs {b}");
            if a.cmp(b) == std::cmp::Ordering::Equal {
                assert_eq!(a.to_string(), b.to_string());
            }
        }
    }
    let mut keys: Vec<&[i64]> = all.iter().map(|m| m.order_key()).collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), all.len());
}

#[test]
fn named_comparisons() {
    let a = parse_monomial("m2(m2(1,2),3)").unwrap();
    let b = parse_monomial("m2(1,m2(2,3))").unwrap();
    let c = TreeMonomial::generator(Generator::m(3));
    assert!(c > a);
    assert!(a > b);
}

#[test]
fn leading_term_and_coefficients() {
    let e = p("m2∘2 m2 + 5*m2∘1 m2");
    let (c, m) = e.leading_term().unwrap();
    assert_eq!(c, Scalar::int(5));
    assert_eq!(m, parse_monomial("m2(m2(1,2),3)").unwrap());
    assert_eq!(e.coefficient(&parse_monomial("m2(1,m2(2,3))").unwrap()), Scalar::one());
    assert!(OperadElement::zero().leading_term().is_err());
}

proptest! {
    #[test]
    fn sequential_composition(f in arb_monomial(), gm in arb_monomial(), h in arb_monomial(), i in 0usize..8, j in 0usize..8) {
        let i = i % f.arity() + 1;
        let j = j % gm.arity() + 1;
        let (f, gm, h) = (mono(&f), mono(&gm), mono(&h));
        let lhs = compose(&compose(&f, i, &gm).unwrap(), i + j - 1, &h).unwrap();
        let rhs = compose(&f, i, &compose(&gm, j, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parallel_composition(f in arb_monomial(), gm in arb_monomial(), h in arb_monomial(), i in 0usize..8, k in 0usize..8) {
        prop_assume!(f.arity() >= 2);
        let i = i % (f.arity() - 1) + 1;
        let k = i + 1 + k % (f.arity() - i);
        let sign = Scalar::sign((gm.degree() * h.degree()) & 1 == 1);
        let ga = gm.arity();
        let (f, gm, h) = (mono(&f), mono(&gm), mono(&h));
        let lhs = compose(&compose(&f, i, &gm).unwrap(), k + ga - 1, &h).unwrap();
        let rhs = compose(&compose(&f, k, &h).unwrap(), i, &gm).unwrap().scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pre_jacobi(f in arb_monomial(), gm in arb_monomial(), h in arb_monomial()) {
        let sign = Scalar::sign((gm.degree() * h.degree()) & 1 == 1);
        let (f, gm, h) = (mono(&f), mono(&gm), mono(&h));
        let lhs = brace(&brace(&f, std::slice::from_ref(&gm)).unwrap(), std::slice::from_ref(&h)).unwrap();
        let mut rhs = brace(&f, &[brace(&gm, std::slice::from_ref(&h)).unwrap()]).unwrap();
        if f.arity().unwrap() >= 2 {
            rhs = rhs.add(&brace(&f, &[gm.clone(), h.clone()]).unwrap());
            rhs = rhs.add(&brace(&f, &[h, gm]).unwrap().scale(&sign));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gerstenhaber_antisymmetry_and_jacobi(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        let (da, db, dc) = (a.degree(), b.degree(), c.degree());
        let (a, b, c) = (mono(&a), mono(&b), mono(&c));
        let ab = gerstenhaber(&a, &b).unwrap();
        let ba = gerstenhaber(&b, &a).unwrap();
        prop_assert_eq!(ab.clone(), ba.scale(&Scalar::sign((da * db) & 1 == 0)));
        // (-1)^{|a||c|}[a,[b,c]] + cyclic = 0
        let term = |x: &OperadElement, y: &OperadElement, z: &OperadElement, dx: i64, dz: i64| {
            let inner = gerstenhaber(y, z).unwrap();
            gerstenhaber(x, &inner).unwrap().scale(&Scalar::sign((dx * dz) & 1 == 1))
        };
        let sum = term(&a, &b, &c, da, dc).add(&term(&b, &c, &a, db, da)).add(&term(&c, &a, &b, dc, db));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn composition_degrees_add(f in arb_monomial(), gm in arb_monomial(), i in 0usize..8) {
        let i = i % f.arity() + 1;
        let (_, c) = f.compose(i, &gm).unwrap();
        prop_assert_eq!(c.degree(), f.degree() + gm.degree());
        prop_assert!(c.tree().weight() == f.weight() + gm.weight());
    }

    #[test]
    fn order_is_total_and_transitive(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        prop_assert_eq!(a.cmp(&b), compare_by_rules(&a, &b));
    }
}
