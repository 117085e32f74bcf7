//! Finite ultrametric spaces over exact scalars.
//!
//! Points are the dense indices `0..n`. A [`UltraSpace`] can only be built
//! through validating constructors, so every value of the type satisfies
//! positivity off the diagonal and the strong triangle inequality.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{sorted_distinct, Infimum, Scalar};

/// A single failure found by [`validate_ultrametric`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Distinct points at distance zero (or a NaN distance).
    NonPositive { i: usize, j: usize },
    /// `d(i, j) > max(d(i, k), d(k, j))`.
    StrongTriangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive { i, j } => {
                write!(f, "d({i}, {j}) is not positive")
            }
            Violation::StrongTriangle { i, j, k } => {
                write!(f, "d({i}, {j}) > max(d({i}, {k}), d({k}, {j}))")
            }
        }
    }
}

/// Outcome of the metric checks, after the structural checks have passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_structure<S: Scalar>(matrix: &[Vec<S>]) -> Result<()> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NotSquare { row, expected: n, found: entries.len() });
        }
    }
    for i in 0..n {
        if !matrix[i][i].is_zero() {
            return Err(Error::NonzeroDiagonal { i });
        }
        for j in (i + 1)..n {
            if matrix[i][j] != matrix[j][i] {
                return Err(Error::Asymmetric { i, j });
            }
        }
    }
    Ok(())
}

/// Positivity and strong-triangle failures of a symmetric matrix given by
/// `d`. Shared by distance matrices and rank matrices.
pub(crate) fn find_violations<T: PartialOrd + Clone + Zero>(
    n: usize,
    d: impl Fn(usize, usize) -> T,
) -> Vec<Violation> {
    let mut violations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = d(i, j);
            if !(dij > T::zero()) {
                violations.push(Violation::NonPositive { i, j });
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let (a, b) = (d(i, k), d(k, j));
                let longest = if a < b { b } else { a };
                if dij > longest {
                    violations.push(Violation::StrongTriangle { i, j, k });
                }
            }
        }
    }
    violations
}

/// Checks a square, symmetric, zero-diagonal matrix for positivity and the
/// strong triangle inequality.
///
/// Structural problems (empty, non-square, asymmetric, nonzero diagonal) are
/// returned as `Err`; metric problems are listed in the `Ok` value.
pub fn validate_ultrametric<S: Scalar>(matrix: &[Vec<S>]) -> Result<Validation> {
    check_structure(matrix)?;
    let violations = find_violations(matrix.len(), |i, j| matrix[i][j].clone());
    Ok(Validation { violations })
}

/// A finite ultrametric space on the points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UltraSpace<S> {
    n: usize,
    dist: Vec<S>,
}

impl<S: Scalar> UltraSpace<S> {
    /// Validates `matrix` and wraps it.
    pub fn new(matrix: Vec<Vec<S>>) -> Result<Self> {
        let validation = validate_ultrametric(&matrix)?;
        if !validation.is_ok() {
            return Err(Error::NotUltrametric(validation.violations));
        }
        let n = matrix.len();
        Ok(Self { n, dist: matrix.into_iter().flatten().collect() })
    }

    /// Builds a space from a distance function on distinct pairs `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let mut dist = vec![S::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                dist[i * n + j] = v.clone();
                dist[j * n + i] = v;
            }
        }
        let violations = find_violations(n, |i, j| dist[i * n + j].clone());
        if !violations.is_empty() {
            return Err(Error::NotUltrametric(violations));
        }
        Ok(Self { n, dist })
    }

    pub fn singleton() -> Self {
        Self { n: 1, dist: vec![S::zero()] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always `false`; spaces are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> &S {
        &self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn to_matrix(&self) -> Vec<Vec<S>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Unordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j)))
    }

    /// Applies `f` to every nonzero distance and revalidates.
    pub fn map_distances<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<UltraSpace<T>> {
        UltraSpace::from_fn(self.n, |i, j| f(self.dist(i, j)))
    }

    /// The space transported along `image`: point `i` becomes `image[i]`.
    pub fn relabeled(&self, image: &[usize]) -> Result<Self> {
        let n = self.n;
        if image.len() != n {
            return Err(Error::SizeMismatch { expected: n, found: image.len() });
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in image.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(Error::NotAPermutation { n });
            }
            inverse[p] = i;
        }
        let mut dist = vec![S::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                dist[a * n + b] = self.dist(inverse[a], inverse[b]).clone();
            }
        }
        Ok(Self { n, dist })
    }
}

/// The realized distances of a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceSpectrum<S> {
    /// Every realized distance, sorted; always contains 0.
    pub all: Vec<S>,
    /// Realized distances without 0, sorted.
    pub nonzero: Vec<S>,
    /// `min(nonzero)`, or `+∞` for the singleton space.
    pub infimum: Infimum<S>,
}

pub fn distance_spectrum<S: Scalar>(space: &UltraSpace<S>) -> DistanceSpectrum<S> {
    let nonzero = sorted_distinct(space.pairs().map(|(i, j)| space.dist(i, j).clone()).collect());
    let infimum = match nonzero.first() {
        Some(v) => Infimum::Finite(v.clone()),
        None => Infimum::PositiveInfinity,
    };
    let mut all = Vec::with_capacity(nonzero.len() + 1);
    all.push(S::zero());
    all.extend(nonzero.iter().cloned());
    DistanceSpectrum { all, nonzero, infimum }
}

/// The space of nonnegative numbers with `d(p, q) = max(p, q)` for `p != q`,
/// restricted to the given points. Point `i` is `points[i]`.
pub fn dplus_space<S: Scalar>(points: &[S]) -> Result<UltraSpace<S>> {
    if points.is_empty() {
        return Err(Error::EmptySpace);
    }
    for (index, p) in points.iter().enumerate() {
        if p.is_negative() {
            return Err(Error::NegativeValue { index });
        }
        if points[..index].contains(p) {
            return Err(Error::DuplicatePoint { index });
        }
    }
    UltraSpace::from_fn(points.len(), |i, j| S::max_of(&points[i], &points[j]))
}

/// Subtracts `t` from every nonzero distance.
///
/// Requires `0 <= t < min D₀`. The identity map sends each distance to a
/// distance with the same relative order, so the isometry group is unchanged.
pub fn shift_space<S: Scalar>(space: &UltraSpace<S>, t: &S) -> Result<UltraSpace<S>> {
    if t.is_negative() {
        return Err(Error::NegativeValue { index: 0 });
    }
    let spectrum = distance_spectrum(space);
    if !spectrum.infimum.exceeds(t) {
        return Err(Error::ShiftCollapses);
    }
    UltraSpace::from_fn(space.len(), |i, j| space.dist(i, j).clone() - t.clone())
}

/// A restriction of a space to some of its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<S> {
    pub space: UltraSpace<S>,
    /// `parent[i]` is the index in the original space of subspace point `i`.
    pub parent: Vec<usize>,
}

pub fn subspace<S: Scalar>(space: &UltraSpace<S>, subset: &[usize]) -> Result<Subspace<S>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = space.len();
    let mut seen = vec![false; n];
    for &index in subset {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        if std::mem::replace(&mut seen[index], true) {
            return Err(Error::DuplicateIndex { index });
        }
    }
    let m = subset.len();
    let mut dist = vec![S::zero(); m * m];
    for a in 0..m {
        for b in 0..m {
            dist[a * m + b] = space.dist(subset[a], subset[b]).clone();
        }
    }
    Ok(Subspace { space: UltraSpace { n: m, dist }, parent: subset.to_vec() })
}
