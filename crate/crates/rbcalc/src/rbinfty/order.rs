//! The graded path-lexicographic order on tree monomials.
//!
//! Monomials compare by arity, then total degree, then by their path
//! sequences: the words read from the root to each leaf, left to right.
//! Words compare by length first (longer is greater), then letterwise with
//! T1 < m2 < T2 < m3 < ... .

use std::cmp::Ordering;

use crate::freeoperad::{Generator, TreeMonomial};
use crate::trees::PlanarTree;

pub type PathSequence = Vec<Vec<Generator>>;

pub fn path_sequence(m: &TreeMonomial) -> PathSequence {
    m.tree()
        .leaf_paths()
        .into_iter()
        .map(|p| p.into_iter().map(|v| m.decorations()[v]).collect())
        .collect()
}

/// A flat key whose lexicographic order is the monomial order:
/// `[arity, degree, len(w1), letters(w1).., len(w2), ..]`.
pub(crate) fn order_key(tree: &PlanarTree, decorations: &[crate::freeoperad::Generator]) -> Vec<i64> {
    let paths = tree.leaf_paths();
    let mut key = Vec::with_capacity(2 + paths.iter().map(|p| p.len() + 1).sum::<usize>());
    key.push(paths.len() as i64);
    key.push(decorations.iter().map(Generator::degree).sum());
    for p in paths {
        key.push(p.len() as i64);
        key.extend(p.into_iter().map(|v| decorations[v].rank()));
    }
    key
}

pub fn compare(a: &TreeMonomial, b: &TreeMonomial) -> Ordering {
    a.cmp(b)
}

/// The reference comparison, spelled out rule by rule.
pub fn compare_by_rules(a: &TreeMonomial, b: &TreeMonomial) -> Ordering {
    a.arity()
        .cmp(&b.arity())
        .then(a.degree().cmp(&b.degree()))
        .then_with(|| {
            let (pa, pb) = (path_sequence(a), path_sequence(b));
            for (x, y) in pa.iter().zip(&pb) {
                let c = x.len().cmp(&y.len()).then_with(|| {
                    x.iter()
                        .map(Generator::rank)
                        .cmp(y.iter().map(Generator::rank))
                });
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
}
