//! Permutations of `0..n` and explicitly enumerated permutation groups.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `0..n`, stored as its image list: `i ↦ image[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &p in &image {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::NotAPermutation { n });
            }
        }
        Ok(Self { image })
    }

    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(image.clone()).is_ok());
        Self { image }
    }

    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(a, b);
        Self { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &p) in self.image.iter().enumerate() {
            inv[p] = i;
        }
        Self { image: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self { image: other.image.iter().map(|&i| self.image[i]).collect() }
    }

    /// Every permutation of `0..n` in lexicographic order of image lists.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations { next: Some((0..n).collect()) }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Lexicographic permutation iterator (next-permutation algorithm).
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (1..succ.len()).rev().find(|&i| succ[i - 1] < succ[i]) {
            let pivot = i - 1;
            let j = (i..succ.len()).rev().find(|&j| succ[j] > succ[pivot]).unwrap();
            succ.swap(pivot, j);
            succ[i..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { image: current })
    }
}

/// A permutation group given by its full element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: BTreeSet<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self { degree, elements: BTreeSet::from([Permutation::identity(degree)]) }
    }

    /// Wraps an element set, checking that it is a group.
    pub fn from_elements(degree: usize, elements: BTreeSet<Permutation>) -> Result<Self> {
        let group = Self { degree, elements };
        if group.elements.iter().any(|p| p.degree() != degree) || !group.is_closed() {
            return Err(Error::NotAGroup { degree });
        }
        Ok(group)
    }

    pub(crate) fn from_elements_unchecked(degree: usize, elements: BTreeSet<Permutation>) -> Self {
        Self { degree, elements }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &BTreeSet<Permutation> {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_subset_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.is_subset(&other.elements)
    }

    /// Contains the identity and is closed under composition and inverse.
    pub fn is_closed(&self) -> bool {
        self.elements.contains(&Permutation::identity(self.degree))
            && self.elements.iter().all(|a| self.elements.contains(&a.inverse()))
            && self
                .elements
                .iter()
                .all(|a| self.elements.iter().all(|b| self.elements.contains(&a.compose(b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::new(vec![1, 0]).is_ok());
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::new(vec![1, 2, 0]).unwrap();
        let b = Permutation::transposition(3, 0, 1);
        assert_eq!(a.compose(&b).images(), &[2, 1, 0]);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn enumerates_all_in_order() {
        let all: Vec<_> = Permutation::all(3).map(|p| p.images().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
    }

    #[test]
    fn group_closure() {
        let sym3: BTreeSet<_> = Permutation::all(3).collect();
        let g = PermGroup::from_elements(3, sym3).unwrap();
        assert_eq!(g.order(), 6);
        let not_group = BTreeSet::from([Permutation::identity(3), Permutation::new(vec![1, 2, 0]).unwrap()]);
        assert!(PermGroup::from_elements(3, not_group).is_err());
        assert!(PermGroup::trivial(3).is_subset_of(&g));
    }
}
