//! Planar reduced rooted trees.
//!
//! A tree is stored as its preorder token sequence: a vertex of arity `a`
//! is the token `a`, followed by its inputs left to right; a leaf is `0`.
//! Vertices are addressed by their 0-based position in planar (preorder)
//! order, leaves by their 1-based position from the left.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("leaf index {index} out of range for arity {arity}")]
    LeafOutOfRange { index: usize, arity: usize },
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("cannot parse tree {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarTree {
    tokens: Vec<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Input {
    /// 1-based leaf number.
    Leaf(usize),
    /// Planar index of the child vertex.
    Vertex(usize),
}

#[derive(Debug, Clone)]
pub struct VertexInfo {
    pub arity: usize,
    /// Parent vertex and the 0-based input slot we sit in.
    pub parent: Option<(usize, usize)>,
    pub inputs: Vec<Input>,
    /// Number of vertices in the subtree rooted here (including itself).
    pub subtree_size: usize,
}

/// A connected set of vertices, referenced by planar indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorRef {
    pub root: usize,
    /// Sorted planar indices, `root` first.
    pub vertices: Vec<usize>,
}

/// `images[p]` is the vertex that lands in position `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl PlanarTree {
    pub fn corolla(arity: usize) -> Self {
        assert!(arity >= 1, "reduced trees have no nullary vertices");
        let mut tokens = vec![arity as u16];
        tokens.extend(std::iter::repeat_n(0, arity));
        PlanarTree { tokens }
    }

    pub(crate) fn from_tokens(tokens: Vec<u16>) -> Self {
        debug_assert!(Self::tokens_valid(&tokens));
        PlanarTree { tokens }
    }

    pub(crate) fn tokens(&self) -> &[u16] {
        &self.tokens
    }

    fn tokens_valid(tokens: &[u16]) -> bool {
        if tokens.first().is_none_or(|&t| t == 0) {
            return false;
        }
        let mut open: i64 = 1;
        for (i, &t) in tokens.iter().enumerate() {
            if open == 0 {
                return false;
            }
            open += t as i64 - 1;
            if open == 0 && i + 1 != tokens.len() {
                return false;
            }
        }
        open == 0
    }

    pub fn weight(&self) -> usize {
        self.tokens.iter().filter(|&&t| t != 0).count()
    }

    pub fn arity(&self) -> usize {
        self.tokens.iter().filter(|&&t| t == 0).count()
    }

    /// Vertex arities in planar order.
    pub fn vertex_arities(&self) -> Vec<usize> {
        self.tokens
            .iter()
            .filter(|&&t| t != 0)
            .map(|&t| t as usize)
            .collect()
    }

    /// Planar order; identical to `0..weight` by construction.
    pub fn planar_order(&self) -> Vec<usize> {
        (0..self.weight()).collect()
    }

    pub fn vertices(&self) -> Vec<VertexInfo> {
        let mut infos: Vec<VertexInfo> = Vec::with_capacity(self.tokens.len());
        // stack of (vertex, next slot)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut leaf = 0;
        for &t in &self.tokens {
            let parent = stack.last().map(|&(v, s)| (v, s));
            if let Some(&(v, _)) = stack.last() {
                let input = if t == 0 {
                    leaf += 1;
                    Input::Leaf(leaf)
                } else {
                    Input::Vertex(infos.len())
                };
                infos[v].inputs.push(input);
                stack.last_mut().unwrap().1 += 1;
            } else if t == 0 {
                unreachable!("tree token stream starts with a leaf");
            }
            if t != 0 {
                infos.push(VertexInfo {
                    arity: t as usize,
                    parent,
                    inputs: Vec::with_capacity(t as usize),
                    subtree_size: 1,
                });
                stack.push((infos.len() - 1, 0));
            }
            while let Some(&(v, s)) = stack.last() {
                if s == infos[v].arity {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        let size = infos[v].subtree_size;
                        infos[p].subtree_size += size;
                    }
                } else {
                    break;
                }
            }
        }
        infos
    }

    /// For each leaf (left to right), the vertices on the path from the root.
    pub fn leaf_paths(&self) -> Vec<Vec<usize>> {
        let infos = self.vertices();
        let mut paths = vec![Vec::new(); self.arity()];
        fn walk(infos: &[VertexInfo], v: usize, path: &mut Vec<usize>, out: &mut [Vec<usize>]) {
            path.push(v);
            for input in &infos[v].inputs {
                match *input {
                    Input::Leaf(l) => out[l - 1] = path.clone(),
                    Input::Vertex(c) => walk(infos, c, path, out),
                }
            }
            path.pop();
        }
        walk(&infos, 0, &mut Vec::new(), &mut paths);
        paths
    }

    /// Number of vertices preceding leaf `leaf_index` in planar order.
    pub fn vertices_before_leaf(&self, leaf_index: usize) -> usize {
        let mut leaves = 0;
        let mut verts = 0;
        for &t in &self.tokens {
            if t == 0 {
                leaves += 1;
                if leaves == leaf_index {
                    return verts;
                }
            } else {
                verts += 1;
            }
        }
        verts
    }

    pub fn graft(&self, leaf_index: usize, top: &PlanarTree) -> Result<PlanarTree, TreeError> {
        let arity = self.arity();
        if leaf_index == 0 || leaf_index > arity {
            return Err(TreeError::LeafOutOfRange {
                index: leaf_index,
                arity,
            });
        }
        let mut tokens = Vec::with_capacity(self.tokens.len() + top.tokens.len() - 1);
        let mut leaves = 0;
        for &t in &self.tokens {
            if t == 0 {
                leaves += 1;
                if leaves == leaf_index {
                    tokens.extend_from_slice(&top.tokens);
                    continue;
                }
            }
            tokens.push(t);
        }
        Ok(PlanarTree { tokens })
    }

    pub fn check_divisor(&self, d: &DivisorRef) -> Result<(), TreeError> {
        let infos = self.vertices();
        let n = infos.len();
        if d.vertices.is_empty() || d.vertices.iter().any(|&v| v >= n) {
            return Err(TreeError::InvalidDivisor("vertex out of range".into()));
        }
        if d.vertices.windows(2).any(|w| w[0] >= w[1]) || d.vertices[0] != d.root {
            return Err(TreeError::InvalidDivisor("vertices not sorted from root".into()));
        }
        for &v in &d.vertices[1..] {
            match infos[v].parent {
                Some((p, _)) if d.vertices.binary_search(&p).is_ok() => {}
                _ => return Err(TreeError::InvalidDivisor(format!("vertex {v} disconnected"))),
            }
        }
        Ok(())
    }

    /// All connected vertex subsets, grouped by root in planar order.
    pub fn divisors(&self) -> Vec<DivisorRef> {
        let infos = self.vertices();
        fn rooted(infos: &[VertexInfo], r: usize) -> Vec<Vec<usize>> {
            let mut acc: Vec<Vec<usize>> = vec![vec![r]];
            for input in &infos[r].inputs {
                if let Input::Vertex(c) = *input {
                    let below = rooted(infos, c);
                    let mut next = Vec::with_capacity(acc.len() * (below.len() + 1));
                    for set in &acc {
                        next.push(set.clone());
                        for b in &below {
                            let mut s = set.clone();
                            s.extend_from_slice(b);
                            next.push(s);
                        }
                    }
                    acc = next;
                }
            }
            acc
        }
        let mut out = Vec::new();
        for r in 0..infos.len() {
            for mut set in rooted(&infos, r) {
                set.sort_unstable();
                out.push(DivisorRef {
                    root: r,
                    vertices: set,
                });
            }
        }
        out
    }

    /// Contracts the divisor into a single vertex. Also returns, for each
    /// vertex of `self`, its planar index in the quotient.
    pub fn quotient_with_map(&self, d: &DivisorRef) -> Result<(PlanarTree, Vec<usize>), TreeError> {
        self.check_divisor(d)?;
        let infos = self.vertices();
        let in_d = |v: usize| d.vertices.binary_search(&v).is_ok();
        let mut tokens = Vec::new();
        let mut map = vec![usize::MAX; infos.len()];
        let mut counter = 0;

        fn external(infos: &[VertexInfo], v: usize, in_d: &dyn Fn(usize) -> bool, out: &mut Vec<Input>) {
            for input in &infos[v].inputs {
                match *input {
                    Input::Vertex(c) if in_d(c) => external(infos, c, in_d, out),
                    other => out.push(other),
                }
            }
        }

        #[allow(clippy::too_many_arguments)]
        fn emit(
            infos: &[VertexInfo],
            v: usize,
            d: &DivisorRef,
            in_d: &dyn Fn(usize) -> bool,
            tokens: &mut Vec<u16>,
            map: &mut [usize],
            counter: &mut usize,
        ) {
            let inputs = if v == d.root {
                let mut ext = Vec::new();
                external(infos, v, in_d, &mut ext);
                for &u in &d.vertices {
                    map[u] = *counter;
                }
                ext
            } else {
                map[v] = *counter;
                infos[v].inputs.clone()
            };
            *counter += 1;
            tokens.push(inputs.len() as u16);
            for input in inputs {
                match input {
                    Input::Leaf(_) => tokens.push(0),
                    Input::Vertex(c) => emit(infos, c, d, in_d, tokens, map, counter),
                }
            }
        }

        emit(&infos, 0, d, &in_d, &mut tokens, &mut map, &mut counter);
        Ok((PlanarTree { tokens }, map))
    }

    pub fn quotient(&self, d: &DivisorRef) -> Result<PlanarTree, TreeError> {
        self.quotient_with_map(d).map(|(t, _)| t)
    }

    /// The divisor as a tree of its own.
    pub fn divisor_tree(&self, d: &DivisorRef) -> Result<PlanarTree, TreeError> {
        self.check_divisor(d)?;
        let infos = self.vertices();
        let mut tokens = Vec::new();
        fn emit(infos: &[VertexInfo], v: usize, d: &DivisorRef, tokens: &mut Vec<u16>) {
            tokens.push(infos[v].arity as u16);
            for input in &infos[v].inputs {
                match *input {
                    Input::Vertex(c) if d.vertices.binary_search(&c).is_ok() => emit(infos, c, d, tokens),
                    _ => tokens.push(0),
                }
            }
        }
        emit(&infos, d.root, d, &mut tokens);
        Ok(PlanarTree { tokens })
    }

    /// The reordering that lists the first vertices up to the divisor root,
    /// then the divisor in its planar order, then the rest in the planar
    /// order of the quotient.
    pub fn sigma(&self, d: &DivisorRef) -> Result<Permutation, TreeError> {
        let (_, map) = self.quotient_with_map(d)?;
        let i = d.root;
        let mut images: Vec<usize> = (0..i).collect();
        images.extend_from_slice(&d.vertices);
        let mut rest: Vec<usize> = (0..map.len())
            .filter(|v| *v > i && d.vertices.binary_search(v).is_err())
            .collect();
        rest.sort_by_key(|&v| map[v]);
        images.extend(rest);
        Ok(Permutation { images })
    }
}

/// All trees of the given weight and arity, in a fixed deterministic order.
pub fn enumerate_trees(weight: usize, arity: usize) -> Vec<PlanarTree> {
    let mut memo = HashMap::new();
    enumerate_tokens(weight, arity, &mut memo)
        .iter()
        .map(|t| PlanarTree { tokens: t.clone() })
        .collect()
}

type Memo = HashMap<(usize, usize), Vec<Vec<u16>>>;

fn enumerate_tokens(weight: usize, arity: usize, memo: &mut Memo) -> Vec<Vec<u16>> {
    if weight == 0 || arity == 0 {
        return Vec::new();
    }
    if let Some(v) = memo.get(&(weight, arity)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for root_arity in 1..=arity {
        // fill root_arity inputs using weight-1 further vertices and arity leaves
        let mut partial: Vec<(Vec<u16>, usize, usize)> = vec![(vec![root_arity as u16], weight - 1, arity)];
        for slot in 0..root_arity {
            let remaining_slots = root_arity - slot - 1;
            let mut next = Vec::new();
            for (tokens, w, a) in partial {
                // a leaf
                if a > remaining_slots {
                    let mut t = tokens.clone();
                    t.push(0);
                    next.push((t, w, a - 1));
                }
                // a subtree
                for sw in 1..=w {
                    for sa in 1..=a.saturating_sub(remaining_slots) {
                        for sub in enumerate_tokens(sw, sa, memo) {
                            let mut t = tokens.clone();
                            t.extend_from_slice(&sub);
                            next.push((t, w - sw, a - sa));
                        }
                    }
                }
            }
            partial = next;
        }
        out.extend(partial.into_iter().filter(|(_, w, a)| *w == 0 && *a == 0).map(|(t, _, _)| t));
    }
    memo.insert((weight, arity), out.clone());
    out
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(tokens: &[u16], pos: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let t = tokens[*pos];
            *pos += 1;
            if t == 0 {
                return write!(f, "_");
            }
            write!(f, "(")?;
            for k in 0..t {
                if k > 0 {
                    write!(f, ",")?;
                }
                go(tokens, pos, f)?;
            }
            write!(f, ")")
        }
        go(&self.tokens, &mut 0, f)
    }
}

impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanarTree{self}")
    }
}

impl FromStr for PlanarTree {
    type Err = TreeError;

    /// Parses the notation produced by `Display`, e.g. `((_,_),_)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || TreeError::Parse(s.to_string());
        fn node(chars: &[char], pos: &mut usize, out: &mut Vec<u16>) -> Option<()> {
            match chars.get(*pos)? {
                '_' => {
                    *pos += 1;
                    out.push(0);
                    Some(())
                }
                '(' => {
                    *pos += 1;
                    let at = out.len();
                    out.push(0);
                    let mut count = 0u16;
                    loop {
                        node(chars, pos, out)?;
                        count += 1;
                        match chars.get(*pos)? {
                            ',' => *pos += 1,
                            ')' => {
                                *pos += 1;
                                break;
                            }
                            _ => return None,
                        }
                    }
                    out[at] = count;
                    Some(())
                }
                _ => None,
            }
        }
        let mut tokens = Vec::new();
        let mut pos = 0;
        node(&chars, &mut pos, &mut tokens).ok_or_else(err)?;
        if pos != chars.len() || tokens[0] == 0 {
            return Err(err());
        }
        Ok(PlanarTree { tokens })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::permutations;
    use proptest::prelude::*;

    fn t(s: &str) -> PlanarTree {
        s.parse().unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_trees(1, 4), vec![PlanarTree::corolla(4)]);
        assert_eq!(enumerate_trees(2, 1), vec![t("((_))")]);
        assert_eq!(enumerate_trees(2, 3).len(), 6);
        assert!(enumerate_trees(3, 0).is_empty());
    }

    /// Counts from the functional equation F = x * sum_r (y + F)^r, truncated.
    fn count_oracle(max_w: usize, max_a: usize) -> Vec<Vec<u64>> {
        let mut f = vec![vec![0u64; max_a + 1]; max_w + 1];
        for _ in 0..=max_w {
            // g = y + F
            let mut g = f.clone();
            g[0][1] += 1;
            let mut next = vec![vec![0u64; max_a + 1]; max_w + 1];
            let mut power = g.clone();
            for _r in 1..=max_a {
                for w in 0..max_w {
                    for a in 0..=max_a {
                        next[w + 1][a] += power[w][a];
                    }
                }
                let mut p2 = vec![vec![0u64; max_a + 1]; max_w + 1];
                for w1 in 0..=max_w {
                    for a1 in 0..=max_a {
                        if power[w1][a1] == 0 {
                            continue;
                        }
                        for w2 in 0..=max_w - w1 {
                            for a2 in 0..=max_a - a1 {
                                p2[w1 + w2][a1 + a2] += power[w1][a1] * g[w2][a2];
                            }
                        }
                    }
                }
                power = p2;
            }
            f = next;
        }
        f
    }

    #[test]
    fn enumeration_counts_match_generating_function() {
        let oracle = count_oracle(5, 6);
        for w in 1..=5 {
            for a in 1..=6 {
                let trees = enumerate_trees(w, a);
                assert_eq!(trees.len() as u64, oracle[w][a], "weight {w} arity {a}");
                let mut dedup = trees.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), trees.len());
                assert!(trees.iter().all(|x| x.weight() == w && x.arity() == a));
            }
        }
    }

    #[test]
    fn planar_order_of_type_two_tree() {
        let tree = t("((_,_),(_),(_,_,_))");
        let infos = tree.vertices();
        assert_eq!(infos[0].arity, 3);
        assert_eq!(tree.vertex_arities(), vec![3, 2, 1, 3]);
        let comb = t("(((_,_),_),_)");
        assert_eq!(comb.vertices()[1].parent, Some((0, 0)));
        assert_eq!(comb.vertices()[2].parent, Some((1, 0)));
    }

    #[test]
    fn grafting_combs() {
        let c2 = PlanarTree::corolla(2);
        assert_eq!(c2.graft(1, &c2).unwrap(), t("((_,_),_)"));
        assert_eq!(c2.graft(2, &c2).unwrap(), t("(_,(_,_))"));
        assert!(c2.graft(3, &c2).is_err());
        assert!(c2.graft(0, &c2).is_err());
    }

    #[test]
    fn divisor_counts() {
        assert_eq!(PlanarTree::corolla(3).divisors().len(), 1);
        assert_eq!(t("((_),_)").divisors().len(), 3);
        assert_eq!(t("(((_)))").divisors().len(), 6);
    }

    #[test]
    fn quotients() {
        let ladder = t("(((_)))");
        let all = DivisorRef { root: 0, vertices: vec![0, 1, 2] };
        assert_eq!(ladder.quotient(&all).unwrap(), PlanarTree::corolla(1));
        let single = DivisorRef { root: 1, vertices: vec![1] };
        assert_eq!(ladder.quotient(&single).unwrap(), ladder);
        let top = DivisorRef { root: 1, vertices: vec![1, 2] };
        assert_eq!(ladder.quotient(&top).unwrap(), t("((_))"));
        let bad = DivisorRef { root: 0, vertices: vec![0, 2] };
        assert!(ladder.quotient(&bad).is_err());
        let tree = t("((_,_),(_,_))");
        let d = DivisorRef { root: 0, vertices: vec![0, 2] };
        assert_eq!(tree.quotient(&d).unwrap(), t("((_,_),_,_)"));
    }

    /// Planar order of the quotient read off the host: drop the non-root
    /// divisor vertices, keep everything else in place.
    fn sigma_oracle(tree: &PlanarTree, d: &DivisorRef) -> Vec<usize> {
        let n = tree.weight();
        let quotient_order: Vec<usize> = (0..n)
            .filter(|v| *v == d.root || !d.vertices.contains(v))
            .collect();
        let mut found = Vec::new();
        for p in permutations(n) {
            let i = d.root;
            let j = d.vertices.len();
            let fixes = (0..i).all(|k| p[k] == k);
            let block = p[i..i + j] == d.vertices[..];
            let rest_expected: Vec<usize> = quotient_order.iter().copied().filter(|v| *v > i).collect();
            let rest = p[i + j..] == rest_expected[..];
            if fixes && block && rest {
                found.push(p);
            }
        }
        assert_eq!(found.len(), 1);
        found.pop().unwrap()
    }

    #[test]
    fn sigma_matches_brute_force() {
        for w in 1..=4 {
            for a in 1..=4 {
                for tree in enumerate_trees(w, a) {
                    for d in tree.divisors() {
                        let s = tree.sigma(&d).unwrap();
                        assert_eq!(s.images, sigma_oracle(&tree, &d), "{tree} {d:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_trivial_cases() {
        let tree = t("((_,_),(_))");
        let whole = DivisorRef { root: 0, vertices: vec![0, 1, 2] };
        assert!(tree.sigma(&whole).unwrap().is_identity());
        let single = DivisorRef { root: 1, vertices: vec![1] };
        assert!(tree.sigma(&single).unwrap().is_identity());
    }

    #[test]
    fn quotient_weight_and_arity() {
        for w in 1..=5 {
            for a in 1..=3 {
                for tree in enumerate_trees(w, a) {
                    for d in tree.divisors() {
                        let q = tree.quotient(&d).unwrap();
                        assert_eq!(q.planar_order().len(), w - d.vertices.len() + 1);
                        assert_eq!(q.arity(), a);
                        let dt = tree.divisor_tree(&d).unwrap();
                        assert_eq!(q.vertex_arities()[d.root], dt.arity());
                    }
                }
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for tree in enumerate_trees(3, 3) {
            assert_eq!(t(&tree.to_string()), tree);
        }
        assert!("(_,".parse::<PlanarTree>().is_err());
        assert!("_".parse::<PlanarTree>().is_err());
    }

    fn arb_tree() -> impl Strategy<Value = PlanarTree> {
        (1usize..4, 1usize..5, any::<prop::sample::Index>()).prop_filter_map("nonempty", |(w, a, idx)| {
            let all = enumerate_trees(w, a);
            if all.is_empty() {
                None
            } else {
                Some(all[idx.index(all.len())].clone())
            }
        })
    }

    proptest! {
        #[test]
        fn graft_counts(base in arb_tree(), top in arb_tree(), pick in any::<prop::sample::Index>()) {
            let leaf = pick.index(base.arity()) + 1;
            let g = base.graft(leaf, &top).unwrap();
            prop_assert_eq!(g.arity(), base.arity() + top.arity() - 1);
            prop_assert_eq!(g.weight(), base.weight() + top.weight());
        }
    }
}
