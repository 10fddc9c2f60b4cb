//! Koszul signs of permutations of graded elements.

/// Sign picked up when graded elements with the given `degrees` (source order)
/// are rearranged so that position `t` holds source element `order[t]`.
/// Returns `true` for a minus sign.
pub fn koszul_negative(degrees: &[i64], order: &[usize]) -> bool {
    let mut odd = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] && degrees[order[a]] & 1 == 1 && degrees[order[b]] & 1 == 1 {
                odd = !odd;
            }
        }
    }
    odd
}

/// Parity of a permutation given as a list of images; `true` when odd.
pub fn parity_odd(order: &[usize]) -> bool {
    let mut odd = false;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                odd = !odd;
            }
        }
    }
    odd
}

/// The antisymmetric Koszul sign: signature times Koszul sign.
pub fn chi_negative(degrees: &[i64], order: &[usize]) -> bool {
    parity_odd(order) ^ koszul_negative(degrees, order)
}

pub fn minus_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// The (p, n-p) shuffles of `0..n`, each listed as its image sequence.
pub fn shuffles(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for first in combinations(n, p) {
        let rest: Vec<usize> = (0..n).filter(|x| !first.contains(x)).collect();
        let mut order = first;
        order.extend(rest);
        out.push(order);
    }
    out
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Compositions of `n` into `k` positive parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if n < k {
            return;
        }
        for first in 1..=n - (k - 1) {
            cur.push(first);
            rec(n - first, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapping_two_odd_elements_is_negative() {
        assert!(koszul_negative(&[1, 1], &[1, 0]));
        assert!(!koszul_negative(&[1, 2], &[1, 0]));
        assert!(chi_negative(&[0, 0], &[1, 0]));
        assert!(!chi_negative(&[1, 1], &[1, 0]));
    }

    #[test]
    fn koszul_sign_is_multiplicative() {
        let degs = [1i64, 0, 3, 1];
        for p in permutations(4) {
            for q in permutations(4) {
                // apply p, then q to the result
                let composed: Vec<usize> = q.iter().map(|&t| p[t]).collect();
                let permuted: Vec<i64> = p.iter().map(|&i| degs[i]).collect();
                assert_eq!(
                    koszul_negative(&degs, &composed),
                    koszul_negative(&degs, &p) ^ koszul_negative(&permuted, &q)
                );
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(shuffles(5, 2).len(), 10);
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
    }
}
