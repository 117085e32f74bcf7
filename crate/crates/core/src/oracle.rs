//! Definition-level brute-force references.
//!
//! Each function here re-derives a result straight from its definition by
//! exhaustive search, independently of the optimized routine it is used to
//! cross-check. They are exponential and meant for small inputs in tests.

use std::collections::BTreeSet;

use crate::metric::{distance_spectrum, UltraSpace};
use crate::perm::{PermGroup, Permutation};
use crate::scalar::Scalar;
use crate::tree::LabeledTree;

/// Distance matrix of a labeled tree by explicitly walking every path.
pub fn path_max_distances<S: Scalar>(tree: &LabeledTree<S>) -> Vec<Vec<S>> {
    let n = tree.len();
    let mut out = vec![vec![S::zero(); n]; n];
    for u in 0..n {
        // parent pointers of a BFS from u
        let mut parent = vec![usize::MAX; n];
        parent[u] = u;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            for &w in tree.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        for v in 0..n {
            if v == u {
                continue;
            }
            let mut best = tree.label(v).clone();
            let mut w = v;
            while w != u {
                w = parent[w];
                if *tree.label(w) > best {
                    best = tree.label(w).clone();
                }
            }
            out[u][v] = best;
        }
    }
    out
}

/// Tries every bijection.
pub fn labeled_tree_isomorphic_brute<S: Scalar>(
    t1: &LabeledTree<S>,
    t2: &LabeledTree<S>,
) -> Option<Permutation> {
    if t1.len() != t2.len() {
        return None;
    }
    let n = t1.len();
    Permutation::all(n).find(|f| {
        (0..n).all(|v| t2.label(f.apply(v)) == t1.label(v))
            && (0..n).all(|u| {
                (0..n).all(|v| t1.has_edge(u, v) == t2.has_edge(f.apply(u), f.apply(v)))
            })
    })
}

pub fn labeled_tree_automorphisms_brute<S: Scalar>(tree: &LabeledTree<S>) -> PermGroup {
    let n = tree.len();
    let elements: BTreeSet<Permutation> = Permutation::all(n)
        .filter(|f| {
            (0..n).all(|v| tree.label(f.apply(v)) == tree.label(v))
                && (0..n).all(|u| (0..n).all(|v| tree.has_edge(u, v) == tree.has_edge(f.apply(u), f.apply(v))))
        })
        .collect();
    PermGroup::from_elements_unchecked(n, elements)
}

pub fn isometry_group_brute<S: Scalar>(space: &UltraSpace<S>) -> PermGroup {
    let n = space.len();
    let elements: BTreeSet<Permutation> = Permutation::all(n)
        .filter(|f| (0..n).all(|x| (0..n).all(|y| space.dist(x, y) == space.dist(f.apply(x), f.apply(y)))))
        .collect();
    PermGroup::from_elements_unchecked(n, elements)
}

/// `d(x₀, x) <= d(y, x)` for every `x`, `y` with `x₀ != x != y`.
pub fn is_hub_brute<S: Scalar>(space: &UltraSpace<S>, hub: usize) -> bool {
    let n = space.len();
    (0..n).all(|x| {
        (0..n).all(|y| hub == x || x == y || space.dist(hub, x) <= space.dist(y, x))
    })
}

pub fn hubs_brute<S: Scalar>(space: &UltraSpace<S>) -> Vec<usize> {
    (0..space.len()).filter(|&h| is_hub_brute(space, h)).collect()
}

/// All `k`-element subsets of `0..m`, each sorted.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Weak similarity straight from the definition: some bijection `Φ` and
/// some strictly increasing `f: D(to) → D(from)` with
/// `d(x, y) = f(ρ(Φx, Φy))` for all `x`, `y`.
pub fn weakly_similar_brute<S: Scalar>(from: &UltraSpace<S>, to: &UltraSpace<S>) -> bool {
    let n = from.len();
    if to.len() != n {
        return false;
    }
    let domain = distance_spectrum(to).all;
    let codomain = distance_spectrum(from).all;
    if domain.len() > codomain.len() {
        return false;
    }
    // a strictly increasing f is a choice of |domain| increasing codomain values
    let increasing_maps = combinations(codomain.len(), domain.len());
    Permutation::all(n).any(|phi| {
        increasing_maps.iter().any(|choice| {
            let f = |v: &S| {
                let k = domain.iter().position(|d| d == v).expect("value in D(to)");
                &codomain[choice[k]]
            };
            (0..n).all(|x| (0..n).all(|y| from.dist(x, y) == f(to.dist(phi.apply(x), phi.apply(y)))))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
