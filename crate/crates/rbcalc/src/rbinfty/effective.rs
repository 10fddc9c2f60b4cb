//! Typical and effective tree monomials.
//!
//! The typical monomials are `m_{n-1} ∘_1 m_2` (n ≥ 3) and
//! `(T_{n-1} ∘_1 m_2) ∘_1 T_1` (n ≥ 2), the leading terms of `∂m_n` and
//! `∂T_n`. A typical divisor of a monomial is a copy of one of them sitting
//! on consecutive first inputs.

use crate::freeoperad::{GenKind, Generator, TreeMonomial};
use crate::trees::{DivisorRef, VertexInfo};

/// If a typical divisor is rooted at vertex `a`, its length and source generator.
fn typical_at(m: &TreeMonomial, infos: &[VertexInfo], a: usize) -> Option<(usize, Generator)> {
    let decs = m.decorations();
    let first_child = |v: usize| -> Option<usize> {
        let c = v + 1;
        (c < decs.len() && infos[c].parent == Some((v, 0))).then_some(c)
    };
    let g = decs[a];
    let b = first_child(a)?;
    if decs[b] != Generator::m(2) {
        return None;
    }
    match g.kind {
        GenKind::M => Some((2, Generator::m(g.arity + 1))),
        GenKind::T => {
            let c = first_child(b)?;
            (decs[c] == Generator::t(1)).then(|| (3, Generator::t(g.arity + 1)))
        }
        _ => None,
    }
}

/// The generator `S` whose leading term is `m`, if `m` is typical.
pub fn typical_source(m: &TreeMonomial) -> Option<Generator> {
    let infos = m.tree().vertices();
    match typical_at(m, &infos, 0) {
        Some((len, s)) if len == m.weight() => Some(s),
        _ => None,
    }
}

pub fn is_typical(m: &TreeMonomial) -> bool {
    typical_source(m).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveData {
    pub monomial: TreeMonomial,
    pub divisor: DivisorRef,
    /// Generator replacing the divisor.
    pub source: Generator,
    /// 1-based leaf above the divisor root.
    pub leaf: usize,
}

/// Finds the left-upper-most typical divisor when the monomial is effective.
///
/// Leaves are scanned left to right. The first leaf whose path carries a
/// positive-degree vertex or a typical divisor decides: the monomial is
/// effective exactly when the uppermost typical divisor on that path has no
/// positive-degree vertex above its root.
pub fn effective_divisor(m: &TreeMonomial) -> Option<EffectiveData> {
    let infos = m.tree().vertices();
    let decs = m.decorations();
    let paths = m.tree().leaf_paths();
    for (l, path) in paths.iter().enumerate() {
        let mut top_typical: Option<(usize, usize, Generator)> = None;
        let mut top_positive: Option<usize> = None;
        for (idx, &v) in path.iter().enumerate() {
            if decs[v].degree() > 0 {
                top_positive = Some(idx);
            }
            if let Some((len, s)) = typical_at(m, &infos, v) {
                // the whole divisor must lie on this path
                if idx + len <= path.len() && (1..len).all(|k| path[idx + k] == v + k) {
                    top_typical = Some((idx, len, s));
                }
            }
        }
        if top_typical.is_none() && top_positive.is_none() {
            continue;
        }
        let (idx, len, source) = top_typical?;
        if top_positive.is_some_and(|p| p > idx) {
            return None;
        }
        let root = path[idx];
        return Some(EffectiveData {
            monomial: m.clone(),
            divisor: DivisorRef {
                root,
                vertices: (root..root + len).collect(),
            },
            source,
            leaf: l + 1,
        });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeoperad::parse_monomial;

    fn mono(s: &str) -> TreeMonomial {
        parse_monomial(s).unwrap()
    }

    #[test]
    fn typical_shapes() {
        assert_eq!(typical_source(&mono("m3(m2(1,2),3,4)")), Some(Generator::m(4)));
        assert_eq!(typical_source(&mono("T1(m2(T1(1),2))")), Some(Generator::t(2)));
        assert!(!is_typical(&mono("m2(1,m2(2,3))")));
        assert!(!is_typical(&mono("m2(m2(1,2),m2(3,4))")));
        assert!(!is_typical(&mono("T1(m2(1,T1(2)))")));
    }

    #[test]
    fn effective_examples() {
        let e = effective_divisor(&mono("m2(m2(1,2),3)")).unwrap();
        assert_eq!(e.divisor.vertices, vec![0, 1]);
        assert_eq!(e.source, Generator::m(3));
        assert!(effective_divisor(&mono("m2(1,m2(2,3))")).is_none());
        // the upper of two overlapping divisors wins
        let e = effective_divisor(&mono("m2(m2(m2(1,2),3),4)")).unwrap();
        assert_eq!(e.divisor.vertices, vec![1, 2]);
        // a positive-degree vertex to the left blocks everything
        assert!(effective_divisor(&mono("m2(m3(1,2,3),m2(m2(4,5),6))")).is_none());
        // a positive-degree vertex below on the left edge does not
        let e = effective_divisor(&mono("m3(m2(m2(1,2),3),4,5)")).unwrap();
        assert_eq!(e.divisor.root, 1);
        // positive-degree vertex above the divisor root blocks it
        assert!(effective_divisor(&mono("m2(m2(m3(1,2,3),4),5)")).is_none());
        // the divisor root may have positive degree
        let e = effective_divisor(&mono("T2(m2(T1(1),2),3)")).unwrap();
        assert_eq!(e.source, Generator::t(3));
        // degree-zero monomial without typical divisors
        assert!(effective_divisor(&mono("T1(T1(1))")).is_none());
    }

    #[test]
    fn pictured_examples() {
        let t1 = mono("m2(1,m4(T3(m2(T1(m2(2,3)),m3(m2(4,5),6,7)),8,9),10,11,12))");
        let e = effective_divisor(&t1).unwrap();
        assert_eq!(e.divisor.vertices, vec![2, 3, 4]);
        assert_eq!(e.source, Generator::t(4));
        assert_eq!(e.leaf, 2);
        let t2 = mono("T2(1,m4(T3(m2(T1(m2(2,3)),m3(m2(4,5),6,7)),8,9),10,11,12))");
        assert!(effective_divisor(&t2).is_none());
        let t3 = mono("m2(1,m4(T3(m2(T1(m3(2,3,4)),m3(m2(5,6),7,8)),9,10),11,12,13))");
        assert!(effective_divisor(&t3).is_none());
    }

    #[test]
    fn stacked_typical_divisors() {
        let m = mono("T1(m2(T1(m2(T1(1),2)),3))");
        let e = effective_divisor(&m).unwrap();
        assert_eq!(e.divisor.vertices, vec![2, 3, 4]);
        assert_eq!(e.leaf, 1);
    }
}
