//! Weak similarity of finite ultrametric spaces.
//!
//! A weak similarity `Φ: X → Y` comes with a strictly increasing
//! `f: D(Y) → D(X)` such that `d(x, y) = f(ρ(Φx, Φy))`. For finite spaces
//! `f` is forced to be the order isomorphism between the sorted spectra, so
//! two spaces are weakly similar iff their rank matrices agree up to a
//! relabeling of points. `f(0) = 0` is forced as well: `d(x, x) = 0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{distance_spectrum, find_violations, subspace, UltraSpace};
use crate::perm::Permutation;
use crate::scalar::{rank_of, Scalar};
use crate::symmetry::profile_classes;

/// Distances replaced by their 1-based rank in the sorted nonzero spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankMatrix {
    n: usize,
    levels: u32,
    ranks: Vec<u32>,
}

impl RankMatrix {
    /// Validates a symmetric zero-diagonal rank matrix whose off-diagonal
    /// values are exactly `1..=k` for some `k`, and which satisfies the strong
    /// triangle inequality on ranks.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidRankMatrix("not square"));
        }
        let mut ranks = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r != rows[j][i] {
                    return Err(Error::InvalidRankMatrix("not symmetric"));
                }
                if (i == j) != (r == 0) {
                    return Err(Error::InvalidRankMatrix("zero exactly on the diagonal expected"));
                }
                ranks.push(r);
            }
        }
        let levels = ranks.iter().copied().max().unwrap_or(0);
        let mut seen = vec![false; levels as usize + 1];
        ranks.iter().for_each(|&r| seen[r as usize] = true);
        if seen.iter().any(|s| !s) && n > 1 {
            return Err(Error::InvalidRankMatrix("ranks must cover 1..=k"));
        }
        if !find_violations(n, |i, j| ranks[i * n + j]).is_empty() {
            return Err(Error::InvalidRankMatrix("strong triangle inequality fails on ranks"));
        }
        Ok(Self { n, levels, ranks })
    }

    /// Builds from a flat row-major matrix already known to be valid.
    pub(crate) fn from_flat_unchecked(n: usize, ranks: Vec<u32>) -> Self {
        let levels = ranks.iter().copied().max().unwrap_or(0);
        Self { n, levels, ranks }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct nonzero distances.
    pub fn levels(&self) -> u32 {
        self.levels
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.ranks[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.ranks.chunks(self.n.max(1)).map(|c| c.to_vec()).collect()
    }

    /// Upper triangle in column order: `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn upper_triangle(&self) -> Vec<u32> {
        (1..self.n).flat_map(|j| (0..j).map(move |i| self.get(i, j))).collect()
    }

    /// Sorted multiset of off-diagonal ranks, one entry per unordered pair.
    pub fn rank_multiset(&self) -> Vec<u32> {
        let mut v = self.upper_triangle();
        v.sort_unstable();
        v
    }

    /// Realizes rank `r` as distance `r`.
    pub fn realize<S: Scalar>(&self) -> UltraSpace<S> {
        UltraSpace::from_fn(self.n, |i, j| S::from_int(self.get(i, j) as i64))
            .expect("rank matrices are ultrametric")
    }

    /// Point `i` becomes point `image[i]`.
    pub fn relabeled(&self, perm: &Permutation) -> Self {
        let n = self.n;
        let inv = perm.inverse();
        let ranks = (0..n * n).map(|k| self.get(inv.apply(k / n), inv.apply(k % n))).collect();
        Self { n, levels: self.levels, ranks }
    }

    /// Lexicographically least [`upper_triangle`](Self::upper_triangle) over
    /// all relabelings, together with the relabeling that attains it.
    pub fn canonical(&self) -> (RankMatrix, Permutation) {
        let n = self.n;
        let mut search = CanonSearch {
            matrix: self,
            order: Vec::with_capacity(n),
            used: vec![false; n],
            current: Vec::with_capacity(n * n.saturating_sub(1) / 2),
            best: None,
        };
        search.run();
        let (_, order) = search.best.expect("at least one ordering");
        // order[t] = original point placed at position t
        let mut image = vec![0; n];
        for (t, &p) in order.iter().enumerate() {
            image[p] = t;
        }
        let perm = Permutation::from_vec_unchecked(image);
        (self.relabeled(&perm), perm)
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical().0 == *self
    }
}

struct CanonSearch<'a> {
    matrix: &'a RankMatrix,
    order: Vec<usize>,
    used: Vec<bool>,
    current: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let n = self.matrix.n;
        if self.order.len() == n {
            let improves = match &self.best {
                Some((best, _)) => self.current < *best,
                None => true,
            };
            if improves {
                self.best = Some((self.current.clone(), self.order.clone()));
            }
            return;
        }
        let t = self.order.len();
        for p in 0..n {
            if self.used[p] {
                continue;
            }
            let mark = self.current.len();
            for &q in &self.order {
                self.current.push(self.matrix.get(q, p));
            }
            let keep = match &self.best {
                Some((best, _)) => self.current[..] <= best[..self.current.len()],
                None => true,
            };
            if keep {
                self.used[p] = true;
                self.order.push(p);
                self.run();
                self.order.pop();
                self.used[p] = false;
            }
            self.current.truncate(mark);
            debug_assert_eq!(self.order.len(), t);
        }
    }
}

pub fn rank_matrix<S: Scalar>(space: &UltraSpace<S>) -> RankMatrix {
    let spectrum = distance_spectrum(space);
    let n = space.len();
    let ranks = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            if i == j {
                0
            } else {
                rank_of(&spectrum.nonzero, space.dist(i, j)).expect("distance in spectrum") as u32 + 1
            }
        })
        .collect();
    RankMatrix::from_flat_unchecked(n, ranks)
}

/// A point map `Φ: X → Y` with `d(x, y) = f(ρ(Φx, Φy))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakSimilarity<S> {
    pub phi: Permutation,
    /// `f` listed as `(ρ-value, d-value)` pairs sorted by input, starting
    /// with `(0, 0)`.
    pub f: Vec<(S, S)>,
}

impl<S: Scalar> WeakSimilarity<S> {
    pub fn apply_f(&self, value: &S) -> Option<&S> {
        self.f.iter().find(|(input, _)| input == value).map(|(_, out)| out)
    }

    /// Checks the defining equation and strict monotonicity of `f` exactly.
    pub fn verify(&self, from: &UltraSpace<S>, to: &UltraSpace<S>) -> bool {
        let n = from.len();
        if to.len() != n || self.phi.degree() != n {
            return false;
        }
        let increasing = self.f.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
        let covers_domain = distance_spectrum(to).all.len() == self.f.len();
        increasing
            && covers_domain
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    self.apply_f(to.dist(self.phi.apply(x), self.phi.apply(y)))
                        == Some(from.dist(x, y))
                })
            })
    }

    /// The inverse similarity `Y → X`.
    pub fn inverse(&self) -> WeakSimilarity<S> {
        WeakSimilarity {
            phi: self.phi.inverse(),
            f: self.f.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

/// Some `Φ` with `a[x][y] = b[Φx][Φy]`, by backtracking over points with
/// equal sorted rank rows.
pub fn rank_isomorphism(a: &RankMatrix, b: &RankMatrix) -> Option<Permutation> {
    let n = a.len();
    if b.len() != n || a.levels() != b.levels() || a.rank_multiset() != b.rank_multiset() {
        return None;
    }
    let class = profile_classes(
        2 * n,
        |k| if k < n { a.rows()[k].clone() } else { b.rows()[k - n].clone() },
        |p| p.sort_unstable(),
    );
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        a: &RankMatrix,
        b: &RankMatrix,
        class: &[usize],
        x: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || class[x] != class[n + y] {
                continue;
            }
            if (0..x).all(|p| a.get(p, x) == b.get(image[p], y)) {
                image[x] = y;
                used[y] = true;
                if extend(a, b, class, x + 1, image, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    extend(a, b, &class, 0, &mut image, &mut used).then(|| Permutation::from_vec_unchecked(image))
}

pub fn weakly_similar<S: Scalar>(from: &UltraSpace<S>, to: &UltraSpace<S>) -> Option<WeakSimilarity<S>> {
    if from.len() != to.len() {
        return None;
    }
    let phi = rank_isomorphism(&rank_matrix(from), &rank_matrix(to))?;
    let f = distance_spectrum(to).all.into_iter().zip(distance_spectrum(from).all).collect();
    let witness = WeakSimilarity { phi, f };
    debug_assert!(witness.verify(from, to));
    Some(witness)
}

fn four_point<S: Scalar>(ac: i64) -> UltraSpace<S> {
    // points A, B, C, D = 0, 1, 2, 3; B-C is forced to 3 by d(A,B) = 3 > d(A,C)
    let d = |v| S::from_int(v);
    let rows = vec![
        vec![d(0), d(3), d(ac), d(3)],
        vec![d(3), d(0), d(3), d(2)],
        vec![d(ac), d(3), d(0), d(3)],
        vec![d(3), d(2), d(3), d(0)],
    ];
    UltraSpace::new(rows).expect("four-point model is ultrametric")
}

/// Four points A, B, C, D with `A-C: 1`, `B-D: 2` and every other pair at 3.
pub fn x4_space<S: Scalar>() -> UltraSpace<S> {
    four_point(1)
}

/// Four points A, B, C, D with `A-C: 2`, `B-D: 2` and every other pair at 3.
pub fn y4_space<S: Scalar>() -> UltraSpace<S> {
    four_point(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FourPointModel {
    X4,
    Y4,
}

impl FourPointModel {
    pub fn space<S: Scalar>(self) -> UltraSpace<S> {
        match self {
            FourPointModel::X4 => x4_space(),
            FourPointModel::Y4 => y4_space(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FourPointModel::X4 => "X4",
            FourPointModel::Y4 => "Y4",
        }
    }
}

/// A four-point subspace weakly similar to one of the two models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate<S> {
    pub subset: [usize; 4],
    pub target: FourPointModel,
    /// Maps subspace point `i` (that is, `subset[i]`) to a model point.
    pub witness: WeakSimilarity<S>,
}

impl<S: Scalar> ObstructionCertificate<S> {
    pub fn verify(&self, space: &UltraSpace<S>) -> bool {
        subspace(space, &self.subset)
            .is_ok_and(|sub| self.witness.verify(&sub.space, &self.target.space()))
    }
}

/// Outcome for one four-point subset during an obstruction scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetScan {
    pub subset: [usize; 4],
    pub matched: Option<FourPointModel>,
}

fn four_subsets(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn match_models<S: Scalar>(space: &UltraSpace<S>, subset: [usize; 4]) -> Option<FourPointModel> {
    let sub = subspace(space, &subset).expect("valid subset");
    let ranks = rank_matrix(&sub.space);
    [FourPointModel::X4, FourPointModel::Y4]
        .into_iter()
        .find(|m| rank_isomorphism(&ranks, &rank_matrix(&m.space::<S>())).is_some())
}

/// Every four-point subset in lexicographic order with its matching model.
pub fn scan_four_point_subsets<S: Scalar>(space: &UltraSpace<S>) -> Vec<SubsetScan> {
    four_subsets(space.len())
        .into_iter()
        .map(|subset| SubsetScan { subset, matched: match_models(space, subset) })
        .collect()
}

/// The lexicographically first four-point subspace weakly similar to X4 or
/// Y4, with a verified certificate.
pub fn contains_obstruction<S: Scalar>(space: &UltraSpace<S>) -> Option<ObstructionCertificate<S>> {
    four_subsets(space.len()).into_par_iter().find_map_first(|subset| {
        let target = match_models(space, subset)?;
        let sub = subspace(space, &subset).expect("valid subset");
        let witness = weakly_similar(&sub.space, &target.space())?;
        let cert = ObstructionCertificate { subset, target, witness };
        cert.verify(space).then_some(cert)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::scalar::Rational;

    type Q = Rational;

    fn z(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn b_c_distance_is_forced() {
        // Of the triple A, B, C: d(A,B) = 3, d(A,C) in {1, 2}; the two largest
        // sides must agree, so d(B,C) = 3.
        for ac in [1, 2] {
            let candidates: Vec<i64> = (1..=4)
                .filter(|&bc| {
                    let mut sides = [3, ac, bc];
                    sides.sort();
                    sides[1] == sides[2]
                })
                .collect();
            assert_eq!(candidates, vec![3]);
        }
    }

    #[test]
    fn models_are_valid_with_expected_spectra() {
        assert_eq!(distance_spectrum(&x4_space::<Q>()).nonzero, vec![z(1), z(2), z(3)]);
        assert_eq!(distance_spectrum(&y4_space::<Q>()).nonzero, vec![z(2), z(3)]);
    }

    #[test]
    fn model_rank_matrices() {
        let x = rank_matrix(&x4_space::<Q>());
        assert_eq!((x.get(0, 2), x.get(1, 3)), (1, 2));
        assert_eq!([x.get(0, 1), x.get(0, 3), x.get(1, 2), x.get(2, 3)], [3; 4]);
        let y = rank_matrix(&y4_space::<Q>());
        assert_eq!((y.get(0, 2), y.get(1, 3)), (1, 1));
        assert_eq!([y.get(0, 1), y.get(0, 3), y.get(1, 2), y.get(2, 3)], [2; 4]);
        let eq = rank_matrix(&UltraSpace::from_fn(4, |_, _| z(7)).unwrap());
        assert!(eq.upper_triangle().iter().all(|&r| r == 1));
    }

    #[test]
    fn rank_matrix_validation() {
        assert!(RankMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).is_ok());
        assert!(RankMatrix::from_rows(&[vec![0, 2], vec![2, 0]]).is_err());
        assert!(RankMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![2, 3, 0]]).is_err());
        assert!(RankMatrix::from_rows(&[vec![0]]).is_ok());
    }

    #[test]
    fn self_similarity_is_identity() {
        let x = x4_space::<Q>();
        let w = weakly_similar(&x, &x).unwrap();
        assert!(w.phi.is_identity());
        assert!(w.f.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn x4_is_not_weakly_similar_to_y4() {
        assert_eq!(rank_matrix(&x4_space::<Q>()).rank_multiset(), vec![1, 2, 3, 3, 3, 3]);
        assert_eq!(rank_matrix(&y4_space::<Q>()).rank_multiset(), vec![1, 1, 2, 2, 2, 2]);
        assert!(weakly_similar(&x4_space::<Q>(), &y4_space()).is_none());
        assert!(!oracle::weakly_similar_brute(&x4_space::<Q>(), &y4_space()));
    }

    #[test]
    fn doubling_is_a_weak_similarity() {
        let x = x4_space::<Q>();
        let doubled = x.map_distances(|d| *d * z(2)).unwrap();
        let w = weakly_similar(&x, &doubled).unwrap();
        for (input, output) in &w.f {
            assert_eq!(*output * z(2), *input);
        }
        assert!(w.verify(&x, &doubled));
        assert!(w.inverse().verify(&doubled, &x));
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let x = rank_matrix(&x4_space::<Q>());
        let (canon, perm) = x.canonical();
        assert_eq!(x.relabeled(&perm), canon);
        for p in Permutation::all(4) {
            assert_eq!(x.relabeled(&p).canonical().0, canon);
        }
        assert!(canon.is_canonical());
    }

    #[test]
    fn obstruction_scan() {
        let x = x4_space::<Q>();
        let cert = contains_obstruction(&x).unwrap();
        assert_eq!(cert.subset, [0, 1, 2, 3]);
        assert_eq!(cert.target, FourPointModel::X4);
        assert!(cert.verify(&x));
        let tri = UltraSpace::from_fn(3, |_, _| z(1)).unwrap();
        assert!(contains_obstruction(&tri).is_none());
        assert!(scan_four_point_subsets(&tri).is_empty());
    }
}
