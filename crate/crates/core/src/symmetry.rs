//! Isometry groups of finite ultrametric spaces and their comparison with
//! automorphism groups of generating star graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::metric::UltraSpace;
pub use crate::perm::{PermGroup, Permutation};
use crate::scalar::Scalar;
use crate::tree::LabeledStar;

/// Largest space [`isometry_group`] will search without an explicit bound.
pub const DEFAULT_ISOMETRY_BOUND: usize = 10;

pub fn is_isometry<S: Scalar>(space: &UltraSpace<S>, f: &Permutation) -> bool {
    f.degree() == space.len()
        && space.pairs().all(|(i, j)| space.dist(i, j) == space.dist(f.apply(i), f.apply(j)))
}

/// Class id per point: points share an id iff their sorted distance rows agree.
pub(crate) fn profile_classes<T: Clone + PartialEq>(
    n: usize,
    mut row: impl FnMut(usize) -> Vec<T>,
    sort: impl Fn(&mut Vec<T>),
) -> Vec<usize> {
    let mut profiles: Vec<Vec<T>> = Vec::new();
    (0..n)
        .map(|i| {
            let mut p = row(i);
            sort(&mut p);
            match profiles.iter().position(|q| *q == p) {
                Some(id) => id,
                None => {
                    profiles.push(p);
                    profiles.len() - 1
                }
            }
        })
        .collect()
}

/// Every distance-preserving permutation, found by backtracking over
/// points with equal sorted distance profiles.
pub fn isometry_group<S: Scalar>(space: &UltraSpace<S>) -> Result<PermGroup> {
    isometry_group_bounded(space, DEFAULT_ISOMETRY_BOUND)
}

pub fn isometry_group_bounded<S: Scalar>(space: &UltraSpace<S>, bound: usize) -> Result<PermGroup> {
    let n = space.len();
    if n > bound {
        return Err(Error::SizeBound { n, bound });
    }
    let class = profile_classes(n, |i| space.row(i).to_vec(), |p| p.sort_by(|a, b| a.total_cmp(b)));
    let mut elements = BTreeSet::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(space, &class, 0, &mut image, &mut used, &mut elements);
    Ok(PermGroup::from_elements_unchecked(n, elements))
}

/// A bijection `f` with `b(f x, f y) = a(x, y)`, if one exists.
pub fn find_isometry<S: Scalar>(a: &UltraSpace<S>, b: &UltraSpace<S>) -> Option<Permutation> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let sorted_row = |s: &UltraSpace<S>, i: usize| {
        let mut r = s.row(i).to_vec();
        r.sort_by(|x, y| x.total_cmp(y));
        r
    };
    let rows_a: Vec<Vec<S>> = (0..n).map(|i| sorted_row(a, i)).collect();
    let rows_b: Vec<Vec<S>> = (0..n).map(|i| sorted_row(b, i)).collect();
    fn go<S: Scalar>(
        a: &UltraSpace<S>,
        b: &UltraSpace<S>,
        rows: (&[Vec<S>], &[Vec<S>]),
        x: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.len();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || rows.0[x] != rows.1[y] || !(0..x).all(|p| a.dist(p, x) == b.dist(image[p], y)) {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if go(a, b, rows, x + 1, image, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    go(a, b, (&rows_a, &rows_b), 0, &mut image, &mut used).then(|| Permutation::from_vec_unchecked(image))
}

fn extend<S: Scalar>(
    space: &UltraSpace<S>,
    class: &[usize],
    x: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut BTreeSet<Permutation>,
) {
    let n = space.len();
    if x == n {
        out.insert(Permutation::from_vec_unchecked(image.clone()));
        return;
    }
    for y in 0..n {
        if used[y] || class[y] != class[x] {
            continue;
        }
        if (0..x).all(|p| space.dist(p, x) == space.dist(image[p], y)) {
            image[x] = y;
            used[y] = true;
            extend(space, class, x + 1, image, used, out);
            used[y] = false;
        }
    }
    image[x] = usize::MAX;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupRelation {
    Equal,
    /// The star group is a proper subgroup of the isometry group.
    StarStrictlySmaller,
    /// Neither contains the other; impossible for a generating star.
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupComparison {
    pub relation: GroupRelation,
    /// Least element of the symmetric difference, if any.
    pub witness: Option<Permutation>,
}

pub fn compare_groups(iso_space: &PermGroup, iso_star: &PermGroup) -> Result<GroupComparison> {
    if iso_space.degree() != iso_star.degree() {
        return Err(Error::SizeMismatch { expected: iso_space.degree(), found: iso_star.degree() });
    }
    let extra_in_star = iso_star.elements().difference(iso_space.elements()).next().cloned();
    let extra_in_space = iso_space.elements().difference(iso_star.elements()).next().cloned();
    Ok(match (extra_in_star, extra_in_space) {
        (None, None) => GroupComparison { relation: GroupRelation::Equal, witness: None },
        (None, Some(w)) => {
            GroupComparison { relation: GroupRelation::StarStrictlySmaller, witness: Some(w) }
        }
        (Some(w), _) => GroupComparison { relation: GroupRelation::Incomparable, witness: Some(w) },
    })
}

/// The relabeling `l*` with center label 0 and every leaf label lowered by
/// `t`. Star automorphisms are unchanged for three or more vertices, since
/// the center is then fixed and equal leaf labels stay equal.
pub fn shifted_leaf_labeling<S: Scalar>(star: &LabeledStar<S>, t: &S) -> Result<LabeledStar<S>> {
    let labels = star
        .labels()
        .iter()
        .enumerate()
        .map(|(v, l)| if v == star.center() { S::zero() } else { l.clone() - t.clone() })
        .collect::<Vec<_>>();
    if let Some(index) = labels.iter().position(|l| l.is_negative()) {
        return Err(Error::NegativeValue { index });
    }
    LabeledStar::new(star.center(), labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::shift_space;
    use crate::oracle;
    use crate::scalar::Rational;
    use crate::similarity::x4_space;
    use crate::tree::{labeled_star_automorphisms, star_ultrametric};

    fn z(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn triangle() -> UltraSpace<Rational> {
        UltraSpace::new(vec![vec![z(0), z(2), z(2)], vec![z(2), z(0), z(1)], vec![z(2), z(1), z(0)]])
            .unwrap()
    }

    #[test]
    fn triangle_group() {
        let g = isometry_group(&triangle()).unwrap();
        assert_eq!(g, oracle::isometry_group_brute(&triangle()));
        assert_eq!(g.order(), 2);
        assert!(g.contains(&Permutation::transposition(3, 1, 2)));
    }

    #[test]
    fn equilateral_is_fully_symmetric() {
        let s = UltraSpace::from_fn(5, |_, _| z(3)).unwrap();
        assert_eq!(isometry_group(&s).unwrap().order(), 120);
    }

    #[test]
    fn x4_group_matches_brute_force() {
        let x4 = x4_space::<Rational>();
        let g = isometry_group(&x4).unwrap();
        assert_eq!(g, oracle::isometry_group_brute(&x4));
        // swap A,C and/or swap B,D
        assert_eq!(g.order(), 4);
        assert!(g.is_closed());
    }

    #[test]
    fn bound_is_enforced() {
        let s = UltraSpace::from_fn(4, |_, _| z(1)).unwrap();
        assert_eq!(isometry_group_bounded(&s, 3), Err(Error::SizeBound { n: 4, bound: 3 }));
    }

    #[test]
    fn shifted_x4_keeps_its_group() {
        let x4 = x4_space::<Rational>();
        let half = Rational::from_ratio(1, 2);
        let shifted = shift_space(&x4, &half).unwrap();
        let spectrum = crate::metric::distance_spectrum(&shifted);
        assert_eq!(spectrum.nonzero, vec![half, Rational::from_ratio(3, 2), Rational::from_ratio(5, 2)]);
        assert_eq!(isometry_group(&shifted).unwrap(), oracle::isometry_group_brute(&x4));
    }

    #[test]
    fn two_point_star_is_strictly_smaller() {
        let star = LabeledStar::new(1, vec![z(1), z(0)]).unwrap();
        let space = star_ultrametric(&star).unwrap();
        let cmp = compare_groups(&isometry_group(&space).unwrap(), &labeled_star_automorphisms(&star))
            .unwrap();
        assert_eq!(cmp.relation, GroupRelation::StarStrictlySmaller);
        assert_eq!(cmp.witness, Some(Permutation::transposition(2, 0, 1)));
    }

    #[test]
    fn positive_center_relabeling_gives_equal_groups() {
        // center label 1 ≤ min leaf; after l*, leaves (0, 1, 1, 2)-shifted
        let star = LabeledStar::new(0, vec![z(1), z(2), z(2), z(3)]).unwrap();
        let relabeled = shifted_leaf_labeling(&star, &z(2)).unwrap();
        assert_eq!(relabeled.labels(), &[z(0), z(0), z(0), z(1)]);
        let g = labeled_star_automorphisms(&star);
        assert_eq!(g, labeled_star_automorphisms(&relabeled));
        let cmp = compare_groups(&g, &labeled_star_automorphisms(&relabeled)).unwrap();
        assert_eq!(cmp.relation, GroupRelation::Equal);
        assert!(shifted_leaf_labeling(&star, &z(3)).is_err());
    }

    #[test]
    fn mismatched_degrees() {
        assert!(compare_groups(&PermGroup::trivial(2), &PermGroup::trivial(3)).is_err());
        let cmp = compare_groups(&PermGroup::trivial(2), &oracle::isometry_group_brute(
            &UltraSpace::from_fn(2, |_, _| z(1)).unwrap(),
        ))
        .unwrap();
        assert_eq!(cmp.relation, GroupRelation::Incomparable);
    }

    #[test]
    fn isometry_between_relabeled_copies() {
        let x = x4_space::<Rational>();
        let p = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let y = x.relabeled(p.images()).unwrap();
        let f = find_isometry(&x, &y).unwrap();
        assert!(x.pairs().all(|(i, j)| x.dist(i, j) == y.dist(f.apply(i), f.apply(j))));
        let brute = Permutation::all(4)
            .any(|g| x.pairs().all(|(i, j)| x.dist(i, j) == crate::similarity::y4_space::<Rational>().dist(g.apply(i), g.apply(j))));
        assert!(!brute);
        assert_eq!(find_isometry(&x, &crate::similarity::y4_space()), None);
        assert_eq!(find_isometry(&x, &triangle()), None);
    }
}
