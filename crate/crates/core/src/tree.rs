//! Vertex-labeled trees and star graphs, and the ultrametric they induce.
//!
//! For a labeled tree `T(l)` the induced distance between distinct vertices
//! is the largest label on the unique path joining them (endpoints
//! included). It is an ultrametric exactly when every edge has an endpoint
//! with positive label.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::metric::UltraSpace;
use crate::perm::{PermGroup, Permutation};
use crate::scalar::{rank_of, sorted_distinct, Scalar};

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn check_labels<S: Scalar>(labels: &[S]) -> Result<()> {
    match labels.iter().position(|l| l.is_negative()) {
        Some(index) => Err(Error::NegativeValue { index }),
        None => Ok(()),
    }
}

/// A tree on the vertices `0..n` with a nonnegative label on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree<S> {
    labels: Vec<S>,
    /// Sorted, each pair `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl<S: Scalar> LabeledTree<S> {
    pub fn new(labels: Vec<S>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        check_labels(&labels)?;
        if edges.len() != n - 1 {
            return Err(Error::EdgeCount { vertices: n, expected: n - 1, found: edges.len() });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            normalized.push(normalize(u, v));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let tree = Self { labels, edges: normalized, adjacency };
        // n - 1 edges and connected implies acyclic.
        if tree.reachable_from(0).iter().any(|&r| !r) {
            return Err(Error::Disconnected);
        }
        Ok(tree)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(labels: Vec<S>) -> Result<Self> {
        let edges = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::new(labels, edges)
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[S] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &S {
        &self.labels[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&normalize(u, v)).is_ok()
    }

    /// Edges whose endpoints are both labeled 0.
    pub fn degenerate_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(u, v)| self.labels[u].is_zero() && self.labels[v].is_zero())
            .collect()
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.degenerate_edges().is_empty()
    }

    /// Vertices adjacent to every other vertex, when the tree is a star.
    /// Every vertex of a tree with at most two vertices qualifies.
    pub fn star_centers(&self) -> Vec<usize> {
        let n = self.len();
        (0..n).filter(|&v| self.degree(v) == n - 1).collect()
    }
}

/// Largest label on each path from `source`, as a row of the distance matrix.
fn path_maxima<S: Scalar>(tree: &LabeledTree<S>, source: usize, row: &mut [S]) {
    let mut stack = vec![(source, usize::MAX)];
    row[source] = tree.labels[source].clone();
    while let Some((v, parent)) = stack.pop() {
        for &w in tree.neighbors(v) {
            if w != parent {
                row[w] = S::max_of(&row[v], &tree.labels[w]);
                stack.push((w, v));
            }
        }
    }
    row[source] = S::zero();
}

/// The ultrametric induced by a non-degenerate labeled tree.
pub fn tree_ultrametric<S: Scalar>(tree: &LabeledTree<S>) -> Result<UltraSpace<S>> {
    if let Some(&(u, v)) = tree.degenerate_edges().first() {
        return Err(Error::DegenerateLabeling(u, v));
    }
    let n = tree.len();
    let mut rows = vec![vec![S::zero(); n]; n];
    for (source, row) in rows.iter_mut().enumerate() {
        path_maxima(tree, source, row);
    }
    UltraSpace::from_fn(n, |i, j| rows[i][j].clone())
}

/// A labeled star graph: `center` is adjacent to every other vertex and
/// there are no other edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledStar<S> {
    center: usize,
    labels: Vec<S>,
}

impl<S: Scalar> LabeledStar<S> {
    pub fn new(center: usize, labels: Vec<S>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        if center >= n {
            return Err(Error::IndexOutOfRange { index: center, n });
        }
        check_labels(&labels)?;
        Ok(Self { center, labels })
    }

    /// Reads a star off a tree. `center` picks among several structural
    /// centers (trees with two vertices); otherwise the lowest one is used.
    pub fn from_tree(tree: &LabeledTree<S>, center: Option<usize>) -> Result<Self> {
        let centers = tree.star_centers();
        let chosen = match center {
            Some(c) if centers.contains(&c) => c,
            Some(c) => return Err(Error::NotAStar { center: c }),
            None => *centers.first().ok_or(Error::NotAStar { center: 0 })?,
        };
        Self::new(chosen, tree.labels.clone())
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[S] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &S {
        &self.labels[v]
    }

    pub fn center_label(&self) -> &S {
        &self.labels[self.center]
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| v != self.center)
    }

    /// Same star with a different center label.
    pub fn with_center_label(&self, label: S) -> Result<Self> {
        let mut labels = self.labels.clone();
        labels[self.center] = label;
        Self::new(self.center, labels)
    }

    pub fn to_tree(&self) -> LabeledTree<S> {
        let edges = self.leaves().map(|v| normalize(self.center, v)).collect();
        LabeledTree::new(self.labels.clone(), edges).expect("a star is a tree")
    }

    pub fn is_non_degenerate(&self) -> bool {
        self.center_label().is_positive() || self.leaves().all(|v| self.labels[v].is_positive())
    }
}

/// Closed form of [`tree_ultrametric`] on a star:
/// `d(c, x) = max(l(c), l(x))`, `d(x, y) = max(l(x), l(c), l(y))`.
pub fn star_ultrametric<S: Scalar>(star: &LabeledStar<S>) -> Result<UltraSpace<S>> {
    if !star.is_non_degenerate() {
        let c = star.center;
        let leaf = star.leaves().find(|&v| star.labels[v].is_zero()).expect("degenerate edge");
        let (u, v) = normalize(c, leaf);
        return Err(Error::DegenerateLabeling(u, v));
    }
    let c = star.center;
    let lc = &star.labels[c];
    UltraSpace::from_fn(star.len(), |i, j| {
        let m = S::max_of(&star.labels[i], &star.labels[j]);
        if i == c || j == c {
            m
        } else {
            S::max_of(&m, lc)
        }
    })
}

/// A labeled-tree isomorphism; `mapping.apply(v)` is the image of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeIsoWitness {
    pub mapping: Permutation,
}

/// Checks that `mapping` preserves edges in both directions and labels.
pub fn is_labeled_isomorphism<S: Scalar>(
    t1: &LabeledTree<S>,
    t2: &LabeledTree<S>,
    mapping: &Permutation,
) -> bool {
    let n = t1.len();
    if t2.len() != n || mapping.degree() != n {
        return false;
    }
    (0..n).all(|v| t2.label(mapping.apply(v)) == t1.label(v))
        && t1.edges().iter().all(|&(u, v)| t2.has_edge(mapping.apply(u), mapping.apply(v)))
}

/// Vertices minimizing the largest remaining component after removal.
fn centroids<S: Scalar>(tree: &LabeledTree<S>) -> Vec<usize> {
    let n = tree.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in tree.neighbors(v) {
            if !std::mem::replace(&mut seen[w], true) {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let heaviest: Vec<usize> = (0..n)
        .map(|v| {
            let below = tree
                .neighbors(v)
                .iter()
                .filter(|&&w| parent[w] == v)
                .map(|&w| size[w])
                .max()
                .unwrap_or(0);
            below.max(n - size[v])
        })
        .collect();
    let best = *heaviest.iter().min().expect("nonempty tree");
    (0..n).filter(|&v| heaviest[v] == best).collect()
}

const OPEN: u32 = 0;
const CLOSE: u32 = 1;

/// Bracket encodings of every subtree when rooted at `root`, with labels
/// folded in as ranks into the shared sorted label list. Children are
/// returned sorted by code.
struct RootedCodes {
    codes: Vec<Vec<u32>>,
    children: Vec<Vec<usize>>,
}

fn rooted_codes<S: Scalar>(tree: &LabeledTree<S>, root: usize, ranks: &[S]) -> RootedCodes {
    let n = tree.len();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in tree.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut codes: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut kids: Vec<usize> = tree.neighbors(v).iter().copied().filter(|&w| parent[w] == v && w != root).collect();
        kids.sort_by(|&a, &b| codes[a].cmp(&codes[b]));
        let rank = rank_of(ranks, tree.label(v)).expect("label is ranked") as u32;
        let mut code = vec![OPEN, rank + 2];
        for &k in &kids {
            code.extend_from_slice(&codes[k]);
        }
        code.push(CLOSE);
        codes[v] = code;
        children[v] = kids;
    }
    RootedCodes { codes, children }
}

/// Decides labeled-tree isomorphism by comparing centroid-rooted canonical
/// encodings, and builds an explicit witness when they agree.
pub fn labeled_tree_isomorphic<S: Scalar>(
    t1: &LabeledTree<S>,
    t2: &LabeledTree<S>,
) -> Option<TreeIsoWitness> {
    let n = t1.len();
    if t2.len() != n {
        return None;
    }
    let ranks = sorted_distinct(t1.labels().iter().chain(t2.labels()).cloned().collect());
    let best = |t: &LabeledTree<S>| {
        centroids(t)
            .into_iter()
            .map(|c| (c, rooted_codes(t, c, &ranks)))
            .min_by(|a, b| a.1.codes[a.0].cmp(&b.1.codes[b.0]))
            .expect("a tree has a centroid")
    };
    let (r1, c1) = best(t1);
    let (r2, c2) = best(t2);
    if c1.codes[r1] != c2.codes[r2] {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut stack = vec![(r1, r2)];
    while let Some((a, b)) = stack.pop() {
        image[a] = b;
        debug_assert_eq!(c1.children[a].len(), c2.children[b].len());
        stack.extend(c1.children[a].iter().copied().zip(c2.children[b].iter().copied()));
    }
    let mapping = Permutation::from_vec_unchecked(image);
    debug_assert!(is_labeled_isomorphism(t1, t2, &mapping));
    Some(TreeIsoWitness { mapping })
}

/// Appends to `out` every permutation fixing all points outside `classes`
/// and permuting each class among itself.
fn class_products(n: usize, classes: &[Vec<usize>]) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn recurse(
        classes: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut BTreeSet<Permutation>,
    ) {
        let Some((first, rest)) = classes.split_first() else {
            out.insert(Permutation::from_vec_unchecked(current.clone()));
            return;
        };
        for p in Permutation::all(first.len()) {
            for (k, &v) in first.iter().enumerate() {
                current[v] = first[p.apply(k)];
            }
            recurse(rest, current, out);
        }
        for &v in first {
            current[v] = v;
        }
    }
    recurse(classes, &mut current, &mut out);
    out
}

/// All self-isomorphisms of a labeled star graph.
///
/// With three or more vertices the center is fixed and leaves may be
/// permuted within classes of equal label. With two vertices the swap is a
/// graph automorphism, kept iff both labels agree.
pub fn labeled_star_automorphisms<S: Scalar>(star: &LabeledStar<S>) -> PermGroup {
    let n = star.len();
    match n {
        1 => PermGroup::trivial(1),
        2 => {
            let mut elements = BTreeSet::from([Permutation::identity(2)]);
            if star.labels[0] == star.labels[1] {
                elements.insert(Permutation::transposition(2, 0, 1));
            }
            PermGroup::from_elements_unchecked(2, elements)
        }
        _ => {
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for v in star.leaves() {
                match classes.iter_mut().find(|c| star.labels[c[0]] == star.labels[v]) {
                    Some(class) => class.push(v),
                    None => classes.push(vec![v]),
                }
            }
            classes.retain(|c| c.len() > 1);
            PermGroup::from_elements_unchecked(n, class_products(n, &classes))
        }
    }
}

/// A finite piece `x₁ - x₂ - ... - x_N` of a labeled ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayTruncation<S> {
    pub tree: LabeledTree<S>,
    /// Labels are positive and non-increasing along the path.
    pub monotone: bool,
}

pub fn ray_truncation<S: Scalar>(labels: &[S]) -> Result<RayTruncation<S>> {
    if labels.is_empty() {
        return Err(Error::EmptySequence);
    }
    let monotone =
        labels.iter().all(|l| l.is_positive()) && labels.windows(2).all(|w| w[0] >= w[1]);
    Ok(RayTruncation { tree: LabeledTree::path(labels.to_vec())?, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::scalar::Rational;

    fn z(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn zs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| z(x)).collect()
    }

    /// Vertex 1 is the center (label 0), leaves 0 and 2.
    fn triangle_star() -> LabeledStar<Rational> {
        LabeledStar::new(1, zs(&[2, 0, 1])).unwrap()
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(LabeledTree::<Rational>::new(vec![], vec![]), Err(Error::EmptyTree));
        assert!(matches!(LabeledTree::new(zs(&[1, 1, 1]), vec![(0, 1)]), Err(Error::EdgeCount { .. })));
        assert_eq!(LabeledTree::new(zs(&[1, 1]), vec![(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            LabeledTree::new(zs(&[1, 1, 1]), vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            LabeledTree::new(zs(&[1, 1, 1, 1]), vec![(0, 1), (1, 2), (2, 0)]),
            Err(Error::Disconnected)
        );
        assert_eq!(LabeledTree::path(zs(&[1, -1])), Err(Error::NegativeValue { index: 1 }));
    }

    #[test]
    fn non_degeneracy() {
        assert!(triangle_star().to_tree().is_non_degenerate());
        let bad = LabeledTree::path(zs(&[0, 0])).unwrap();
        assert_eq!(bad.degenerate_edges(), vec![(0, 1)]);
        assert!(LabeledTree::path(zs(&[0])).unwrap().is_non_degenerate());
        assert_eq!(tree_ultrametric(&bad), Err(Error::DegenerateLabeling(0, 1)));
        let bad_star = LabeledStar::new(0, zs(&[0, 0, 1])).unwrap();
        assert_eq!(star_ultrametric(&bad_star), Err(Error::DegenerateLabeling(0, 1)));
    }

    #[test]
    fn triangle_star_generates_the_triangle() {
        let space = tree_ultrametric(&triangle_star().to_tree()).unwrap();
        assert_eq!(space.dist(1, 0), &z(2));
        assert_eq!(space.dist(1, 2), &z(1));
        assert_eq!(space.dist(0, 2), &z(2));
        assert_eq!(star_ultrametric(&triangle_star()).unwrap(), space);
    }

    #[test]
    fn increasing_path_distances() {
        let path = LabeledTree::path(zs(&[1, 2, 3, 4])).unwrap();
        let space = tree_ultrametric(&path).unwrap();
        let expected = oracle::path_max_distances(&path);
        assert_eq!(space.to_matrix(), expected);
        assert_eq!(space.dist(0, 3), &z(4));
        assert_eq!(space.dist(0, 1), &z(2));
        assert_eq!(space.dist(1, 2), &z(3));
    }

    #[test]
    fn equal_leaf_star_is_equilateral() {
        let star = LabeledStar::new(0, vec![z(0), q(5, 2), q(5, 2), q(5, 2)]).unwrap();
        let space = star_ultrametric(&star).unwrap();
        assert!(space.pairs().all(|(i, j)| space.dist(i, j) == &q(5, 2)));
    }

    #[test]
    fn dominated_center_label_is_never_a_leaf_distance() {
        let star = LabeledStar::new(0, vec![q(1, 2), z(1), z(2), z(3)]).unwrap();
        let space = star_ultrametric(&star).unwrap();
        for i in 1..4 {
            for j in (i + 1)..4 {
                assert_ne!(space.dist(i, j), &q(1, 2));
            }
        }
    }

    #[test]
    fn harmonic_star_truncation() {
        // center labeled 0, leaves 1, 1/2, 1/3
        let star = LabeledStar::new(0, vec![z(0), z(1), q(1, 2), q(1, 3)]).unwrap();
        let space = star_ultrametric(&star).unwrap();
        assert_eq!(space.dist(2, 3), &q(1, 2));
        assert_eq!(space.dist(0, 2), &q(1, 2));
        assert_eq!(space.dist(0, 3), &q(1, 3));
    }

    #[test]
    fn star_matches_tree_formula() {
        let labels = vec![vec![z(0), z(1), z(1), z(2)], vec![z(3), z(1), z(0), z(2)], vec![z(0)], vec![z(0), z(4)]];
        for labels in labels {
            for c in 0..labels.len() {
                let star = LabeledStar::new(c, labels.clone()).unwrap();
                match (star_ultrametric(&star), tree_ultrametric(&star.to_tree())) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b),
                    (Err(_), Err(_)) => {}
                    other => panic!("disagreement: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn increasing_path_and_star_are_not_isomorphic() {
        let labels = zs(&[1, 2, 3, 4]);
        let path = LabeledTree::path(labels.clone()).unwrap();
        let star = LabeledStar::new(0, labels).unwrap().to_tree();
        assert!(labeled_tree_isomorphic(&path, &star).is_none());
        assert!(oracle::labeled_tree_isomorphic_brute(&path, &star).is_none());
    }

    #[test]
    fn self_isomorphism_is_found() {
        let tree = LabeledTree::new(zs(&[1, 2, 3, 1, 2]), vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let w = labeled_tree_isomorphic(&tree, &tree).unwrap();
        assert!(is_labeled_isomorphism(&tree, &tree, &w.mapping));
    }

    #[test]
    fn permuted_three_leaf_stars_are_isomorphic() {
        let a = LabeledStar::new(0, zs(&[0, 1, 2, 3])).unwrap().to_tree();
        let b = LabeledStar::new(2, zs(&[3, 1, 0, 2])).unwrap().to_tree();
        let w = labeled_tree_isomorphic(&a, &b).unwrap();
        assert!(is_labeled_isomorphism(&a, &b, &w.mapping));
        assert!(oracle::labeled_tree_isomorphic_brute(&a, &b).is_some());
        let c = LabeledStar::new(2, zs(&[3, 1, 0, 3])).unwrap().to_tree();
        assert!(labeled_tree_isomorphic(&a, &c).is_none());
    }

    #[test]
    fn bicentroid_trees() {
        // path of 4 has two centroids; reversed labels must still match
        let a = LabeledTree::path(zs(&[1, 2, 2, 3])).unwrap();
        let b = LabeledTree::path(zs(&[3, 2, 2, 1])).unwrap();
        let w = labeled_tree_isomorphic(&a, &b).unwrap();
        assert_eq!(w.mapping.images(), &[3, 2, 1, 0]);
    }

    #[test]
    fn star_automorphism_examples() {
        let d = z(5);
        let two = LabeledStar::new(1, vec![d, z(0)]).unwrap();
        let g = labeled_star_automorphisms(&two);
        assert_eq!(g.order(), 1);
        assert!(!g.contains(&Permutation::transposition(2, 0, 1)));

        let equal = LabeledStar::new(0, zs(&[0, 7, 7, 7, 7])).unwrap();
        assert_eq!(labeled_star_automorphisms(&equal).order(), 24);

        let mixed = LabeledStar::new(0, zs(&[0, 1, 1, 2])).unwrap();
        let g = labeled_star_automorphisms(&mixed);
        assert_eq!(g.order(), 2);
        assert_eq!(g, oracle::labeled_tree_automorphisms_brute(&mixed.to_tree()));

        assert_eq!(labeled_star_automorphisms(&LabeledStar::new(0, zs(&[3])).unwrap()).order(), 1);
    }

    #[test]
    fn ray_truncations() {
        let ray = ray_truncation(&[z(1), q(1, 2), q(1, 3), q(1, 4)]).unwrap();
        assert!(ray.monotone);
        let space = tree_ultrametric(&ray.tree).unwrap();
        for (i, j) in space.pairs() {
            assert_eq!(space.dist(i, j), &q(1, (i.min(j) + 1) as i64));
        }
        assert!(!ray_truncation(&zs(&[1, 2])).unwrap().monotone);
        assert!(!ray_truncation(&zs(&[1, 0])).unwrap().monotone);
        assert_eq!(ray_truncation::<Rational>(&[]), Err(Error::EmptySequence));
    }

    #[test]
    fn from_tree_detects_centers() {
        let star = triangle_star();
        let tree = star.to_tree();
        assert_eq!(LabeledStar::from_tree(&tree, None).unwrap(), star);
        assert!(LabeledStar::from_tree(&tree, Some(0)).is_err());
        let pair = LabeledTree::path(zs(&[1, 0])).unwrap();
        assert_eq!(LabeledStar::from_tree(&pair, Some(1)).unwrap().center(), 1);
        let path = LabeledTree::path(zs(&[1, 1, 1, 1])).unwrap();
        assert!(LabeledStar::from_tree(&path, None).is_err());
    }
}
