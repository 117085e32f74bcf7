//! Exhaustive generation of finite ultrametric spaces up to weak similarity,
//! and random instance generation.
//!
//! A weak-similarity class of `n`-point ultrametric spaces is the same thing
//! as a rank matrix up to relabeling, which in turn is a dendrogram whose
//! internal nodes carry levels `1..=k`. Classes are generated from
//! unlabeled dendrogram shapes and all admissible level assignments, then
//! deduplicated by canonical rank matrix. [`brute_force_classes`] reaches
//! the same set by filtering raw matrices.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::UltraSpace;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::similarity::RankMatrix;
use crate::tree::{star_ultrametric, LabeledStar, LabeledTree};

/// Largest `n` accepted by [`enumerate_classes`] by default.
pub const DEFAULT_ENUMERATION_BOUND: usize = 7;
/// Largest `n` accepted by [`brute_force_classes`].
pub const BRUTE_FORCE_BOUND: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DendroNode {
    Leaf(usize),
    Internal { children: Vec<usize>, level: u32 },
}

/// A rooted tree whose leaves are the points `0..n` and whose internal nodes
/// have at least two children and levels strictly increasing towards the
/// root, using every level in `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dendrogram {
    nodes: Vec<DendroNode>,
    points: usize,
    levels: u32,
}

impl Dendrogram {
    pub fn new(nodes: Vec<DendroNode>, root: usize) -> Result<Self> {
        if root >= nodes.len() {
            return Err(Error::InvalidDendrogram("root out of range"));
        }
        let mut seen = vec![false; nodes.len()];
        let mut leaves = Vec::new();
        let mut used_levels = BTreeSet::new();
        let mut stack = vec![(root, u32::MAX)];
        while let Some((v, parent_level)) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidDendrogram("node reached twice"));
            }
            match &nodes[v] {
                DendroNode::Leaf(p) => leaves.push(*p),
                DendroNode::Internal { children, level } => {
                    if children.len() < 2 {
                        return Err(Error::InvalidDendrogram("internal node with fewer than two children"));
                    }
                    if *level == 0 || *level >= parent_level {
                        return Err(Error::InvalidDendrogram("levels must increase towards the root"));
                    }
                    used_levels.insert(*level);
                    for &c in children {
                        if c >= nodes.len() {
                            return Err(Error::InvalidDendrogram("child out of range"));
                        }
                        stack.push((c, *level));
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidDendrogram("unreachable node"));
        }
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::InvalidDendrogram("leaves must be the points 0..n, once each"));
        }
        let levels = used_levels.len() as u32;
        if used_levels.iter().copied().ne(1..=levels) {
            return Err(Error::InvalidDendrogram("levels must form the range 1..=k"));
        }
        Ok(Self { nodes, points: leaves.len(), levels })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// `f(x, y, level)` for every pair of points whose lowest common
    /// ancestor has `level`.
    fn for_each_split(&self, mut f: impl FnMut(usize, usize, u32)) {
        fn leaves_below(nodes: &[DendroNode], v: usize, out: &mut Vec<usize>) {
            match &nodes[v] {
                DendroNode::Leaf(p) => out.push(*p),
                DendroNode::Internal { children, .. } => {
                    children.iter().for_each(|&c| leaves_below(nodes, c, out))
                }
            }
        }
        for node in &self.nodes {
            if let DendroNode::Internal { children, level } = node {
                let groups: Vec<Vec<usize>> = children
                    .iter()
                    .map(|&c| {
                        let mut out = Vec::new();
                        leaves_below(&self.nodes, c, &mut out);
                        out
                    })
                    .collect();
                for (a, ga) in groups.iter().enumerate() {
                    for gb in &groups[a + 1..] {
                        for &x in ga {
                            for &y in gb {
                                f(x, y, *level);
                            }
                        }
                    }
                }
            }
        }
    }

    /// Distance = level of the lowest common ancestor.
    pub fn rank_matrix(&self) -> RankMatrix {
        let n = self.points;
        let mut ranks = vec![0u32; n * n];
        self.for_each_split(|x, y, level| {
            ranks[x * n + y] = level;
            ranks[y * n + x] = level;
        });
        RankMatrix::from_flat_unchecked(n, ranks)
    }
}

/// Realizes a dendrogram with `heights[level - 1]` as the distance for
/// pairs split at `level`. Heights must be positive and strictly increasing.
pub fn dendrogram_to_space<S: Scalar>(d: &Dendrogram, heights: &[S]) -> Result<UltraSpace<S>> {
    if heights.len() < d.levels as usize
        || heights.first().is_some_and(|h| !h.is_positive())
        || heights.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::NonMonotoneHeights);
    }
    let n = d.points;
    let mut dist = vec![vec![S::zero(); n]; n];
    d.for_each_split(|x, y, level| {
        dist[x][y] = heights[level as usize - 1].clone();
        dist[y][x] = heights[level as usize - 1].clone();
    });
    UltraSpace::new(dist)
}

/// One weak-similarity class, represented by its canonical rank matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalClass {
    pub id: usize,
    pub ranks: RankMatrix,
}

impl CanonicalClass {
    pub fn realize<S: Scalar>(&self) -> UltraSpace<S> {
        self.ranks.realize()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationConfig {
    pub bound: usize,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self { bound: DEFAULT_ENUMERATION_BOUND, jobs: 0 }
    }
}

/// Unlabeled dendrogram shape: a leaf or an internal node with at least two
/// children, children listed in a canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    Leaf,
    Node(Vec<Shape>),
}

/// All shapes with `n` leaves, indexed by leaf count.
fn shapes_up_to(n: usize) -> Vec<Vec<Shape>> {
    let mut table: Vec<Vec<Shape>> = vec![Vec::new(), vec![Shape::Leaf]];
    for m in 2..=n {
        let mut out = Vec::new();
        let mut parts: Vec<Shape> = Vec::new();
        // parts listed by non-increasing size; equal sizes by non-decreasing index
        fn fill(
            table: &[Vec<Shape>],
            remaining: usize,
            max_size: usize,
            min_index: usize,
            parts: &mut Vec<Shape>,
            out: &mut Vec<Shape>,
        ) {
            if remaining == 0 {
                if parts.len() >= 2 {
                    out.push(Shape::Node(parts.clone()));
                }
                return;
            }
            for size in (1..=max_size.min(remaining)).rev() {
                let start = if size == max_size { min_index } else { 0 };
                for index in start..table[size].len() {
                    parts.push(table[size][index].clone());
                    fill(table, remaining - size, size, index, parts, out);
                    parts.pop();
                }
            }
        }
        // a single part of size m would be a unary root
        fill(&table, m, m - 1, 0, &mut parts, &mut out);
        table.push(out);
    }
    table
}

/// A shape laid out with points `0..n` in depth-first order.
struct Layout {
    points: usize,
    /// For each internal node: its internal children and its child leaf groups.
    internal_children: Vec<Vec<usize>>,
    groups: Vec<Vec<Vec<usize>>>,
}

impl Layout {
    fn new(shape: &Shape) -> Self {
        let mut layout = Layout { points: 0, internal_children: Vec::new(), groups: Vec::new() };
        layout.visit(shape);
        layout
    }

    /// Returns (leaves below, internal index if internal).
    fn visit(&mut self, shape: &Shape) -> (Vec<usize>, Option<usize>) {
        match shape {
            Shape::Leaf => {
                self.points += 1;
                (vec![self.points - 1], None)
            }
            Shape::Node(children) => {
                let id = self.internal_children.len();
                self.internal_children.push(Vec::new());
                self.groups.push(Vec::new());
                let mut all = Vec::new();
                for c in children {
                    let (leaves, internal) = self.visit(c);
                    if let Some(k) = internal {
                        self.internal_children[id].push(k);
                    }
                    all.extend_from_slice(&leaves);
                    self.groups[id].push(leaves);
                }
                (all, Some(id))
            }
        }
    }

    fn ranks(&self, levels: &[u32]) -> RankMatrix {
        let n = self.points;
        let mut ranks = vec![0u32; n * n];
        for (node, groups) in self.groups.iter().enumerate() {
            for (a, ga) in groups.iter().enumerate() {
                for gb in &groups[a + 1..] {
                    for &x in ga {
                        for &y in gb {
                            ranks[x * n + y] = levels[node];
                            ranks[y * n + x] = levels[node];
                        }
                    }
                }
            }
        }
        RankMatrix::from_flat_unchecked(n, ranks)
    }

    /// Calls `f` with every surjective level assignment onto `1..=k` that is
    /// strictly increasing from child to parent. Level `k + 1` is built from
    /// a nonempty set of nodes whose internal children are all placed.
    fn for_each_leveling(&self, mut f: impl FnMut(&[u32])) {
        let m = self.internal_children.len();
        let mut levels = vec![0u32; m];
        fn go(layout: &Layout, level: u32, placed: usize, levels: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
            let m = levels.len();
            if placed == m {
                f(levels);
                return;
            }
            let available: Vec<usize> = (0..m)
                .filter(|&v| {
                    levels[v] == 0
                        && layout.internal_children[v].iter().all(|&c| levels[c] != 0 && levels[c] < level)
                })
                .collect();
            for mask in 1u32..(1 << available.len()) {
                let chosen: Vec<usize> =
                    (0..available.len()).filter(|b| mask & (1 << b) != 0).map(|b| available[b]).collect();
                chosen.iter().for_each(|&v| levels[v] = level);
                go(layout, level + 1, placed + chosen.len(), levels, f);
                chosen.iter().for_each(|&v| levels[v] = 0);
            }
        }
        go(self, 1, 0, &mut levels, &mut f);
    }
}

fn classes_of_shape(shape: &Shape) -> BTreeSet<RankMatrix> {
    let layout = Layout::new(shape);
    let mut out = BTreeSet::new();
    layout.for_each_leveling(|levels| {
        out.insert(layout.ranks(levels).canonical().0);
    });
    out
}

fn number_classes(set: BTreeSet<RankMatrix>) -> Vec<CanonicalClass> {
    set.into_iter().enumerate().map(|(id, ranks)| CanonicalClass { id, ranks }).collect()
}

/// One representative per weak-similarity class of `n`-point ultrametric
/// spaces, ordered by canonical rank matrix. The order does not depend on
/// the number of worker threads.
pub fn enumerate_classes(n: usize, config: EnumerationConfig) -> Result<Vec<CanonicalClass>> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > config.bound {
        return Err(Error::SizeBound { n, bound: config.bound });
    }
    if n == 1 {
        return Ok(number_classes(BTreeSet::from([RankMatrix::from_flat_unchecked(1, vec![0])])));
    }
    let shapes = shapes_up_to(n).swap_remove(n);
    let collect = || {
        shapes
            .par_iter()
            .map(classes_of_shape)
            .reduce(BTreeSet::new, |mut a, mut b| {
                a.append(&mut b);
                a
            })
    };
    let set = if config.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .expect("thread pool")
            .install(collect)
    } else {
        collect()
    };
    Ok(number_classes(set))
}

/// Number of unlabeled dendrogram shapes with `n` leaves.
pub fn shape_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    shapes_up_to(n)[n].len()
}

/// Reference enumeration: every symmetric matrix with off-diagonal entries
/// in `1..=k` (each value used, `k <= n(n-1)/2`) that satisfies the strong
/// triangle inequality, canonicalized and deduplicated.
pub fn brute_force_classes(n: usize) -> Result<Vec<CanonicalClass>> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if n > BRUTE_FORCE_BOUND {
        return Err(Error::SizeBound { n, bound: BRUTE_FORCE_BOUND });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let max_value = pairs.len() as u32;
    struct Search {
        n: usize,
        pairs: Vec<(usize, usize)>,
        max_value: u32,
        ranks: Vec<u32>,
        counts: Vec<u32>,
        found: BTreeSet<RankMatrix>,
    }
    impl Search {
        fn isosceles(a: u32, b: u32, c: u32) -> bool {
            let mut s = [a, b, c];
            s.sort_unstable();
            s[1] == s[2]
        }

        fn go(&mut self, t: usize) {
            let n = self.n;
            let top = (1..=self.max_value).rev().find(|&v| self.counts[v as usize] > 0).unwrap_or(0);
            let missing = (1..=top).filter(|&v| self.counts[v as usize] == 0).count();
            let remaining = self.pairs.len() - t;
            if missing > remaining {
                return;
            }
            if t == self.pairs.len() {
                if missing == 0 {
                    let ranks = RankMatrix::from_flat_unchecked(n, self.ranks.clone());
                    self.found.insert(ranks.canonical().0);
                }
                return;
            }
            let (i, j) = self.pairs[t];
            for v in 1..=self.max_value {
                let ok = (0..i).all(|k| Self::isosceles(self.ranks[k * n + i], self.ranks[k * n + j], v));
                if !ok {
                    continue;
                }
                self.ranks[i * n + j] = v;
                self.ranks[j * n + i] = v;
                self.counts[v as usize] += 1;
                self.go(t + 1);
                self.counts[v as usize] -= 1;
            }
            self.ranks[i * n + j] = 0;
            self.ranks[j * n + i] = 0;
        }
    }
    let mut search = Search {
        n,
        pairs,
        max_value,
        ranks: vec![0; n * n],
        counts: vec![0; max_value as usize + 1],
        found: BTreeSet::new(),
    };
    search.go(0);
    Ok(number_classes(search.found))
}

fn random_positive<S: Scalar, R: Rng>(rng: &mut R) -> S {
    S::from_ratio(rng.gen_range(1..=6), rng.gen_range(1..=3))
}

/// Strictly increasing positive heights.
fn random_heights<S: Scalar, R: Rng>(rng: &mut R, count: usize) -> Vec<S> {
    let mut out: Vec<S> = Vec::with_capacity(count);
    for _ in 0..count {
        let step = random_positive::<S, R>(rng);
        let next = match out.last() {
            Some(prev) => prev.clone() + step,
            None => step,
        };
        out.push(next);
    }
    out
}

/// Random ultrametric by recursive random partition: the root splits the
/// points into random nonempty groups, and every group with two or more
/// points becomes a subtree with a strictly smaller random level. Heights
/// are random increasing rationals. Deterministic for a fixed seed.
pub fn random_ultrametric<S: Scalar>(n: usize, seed: u64, max_levels: u32) -> Result<UltraSpace<S>> {
    random_ultrametric_with(&mut ChaCha8Rng::seed_from_u64(seed), n, max_levels)
}

/// The generator behind every seeded function in this module.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_ultrametric_with<S: Scalar, R: Rng>(
    rng: &mut R,
    n: usize,
    max_levels: u32,
) -> Result<UltraSpace<S>> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    let top = max_levels.max(1);
    let heights: Vec<S> = random_heights(rng, top as usize);
    let mut level = vec![0u32; n * n];
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    // `group` splits at `parent`; level 1 must split into singletons
    fn split<R: Rng>(rng: &mut R, group: &[usize], parent: u32, n: usize, level: &mut [u32]) {
        let count = if parent == 1 { group.len() } else { rng.gen_range(2..=group.len()) };
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (k, &p) in group.iter().enumerate() {
            let slot = if k < count { k } else { rng.gen_range(0..count) };
            parts[slot].push(p);
        }
        for (a, pa) in parts.iter().enumerate() {
            for pb in &parts[a + 1..] {
                for &x in pa {
                    for &y in pb {
                        level[x * n + y] = parent;
                        level[y * n + x] = parent;
                    }
                }
            }
        }
        for part in parts.iter().filter(|p| p.len() > 1) {
            let child = rng.gen_range(1..parent);
            split(rng, part, child, n, level);
        }
    }
    if n > 1 {
        split(rng, &points, top, n, &mut level);
    }
    UltraSpace::from_fn(n, |i, j| heights[level[i * n + j] as usize - 1].clone())
}

/// A random nondegenerate labeled star on `n` vertices with a random center.
/// Leaf labels are drawn from a small pool so that ties occur.
pub fn random_star<S: Scalar, R: Rng>(rng: &mut R, n: usize, zero_center: bool) -> LabeledStar<S> {
    assert!(n >= 1);
    let pool: Vec<S> = (0..rng.gen_range(1..=n.max(1))).map(|_| random_positive(rng)).collect();
    let center = rng.gen_range(0..n);
    let labels = (0..n)
        .map(|v| {
            if v == center {
                if zero_center || rng.gen_bool(0.5) {
                    S::zero()
                } else {
                    random_positive(rng)
                }
            } else {
                pool[rng.gen_range(0..pool.len())].clone()
            }
        })
        .collect();
    LabeledStar::new(center, labels).expect("valid star")
}

/// A random space generated by a labeled star (center label 0).
pub fn random_us_space<S: Scalar, R: Rng>(rng: &mut R, n: usize) -> UltraSpace<S> {
    star_ultrametric(&random_star(rng, n, true)).expect("nondegenerate star")
}

/// A random tree (random attachment, shuffled vertex ids) with a random
/// nondegenerate labeling that uses 0 for roughly a third of the vertices.
pub fn random_labeled_tree<S: Scalar, R: Rng>(rng: &mut R, n: usize) -> LabeledTree<S> {
    assert!(n >= 1);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (ids[i], ids[rng.gen_range(0..i)])).collect();
    let mut zero = vec![false; n];
    for z in zero.iter_mut() {
        *z = rng.gen_bool(0.35);
    }
    for &(u, v) in &edges {
        if zero[u] && zero[v] {
            zero[u] = false;
        }
    }
    let labels = (0..n).map(|v| if zero[v] { S::zero() } else { random_positive(rng) }).collect();
    LabeledTree::new(labels, edges).expect("valid tree")
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::from_vec_unchecked(image)
}
