//! Spaces generated by labeled star graphs.
//!
//! A finite ultrametric space is generated by some labeled star graph iff it
//! has a *hub*: a point `x₀` with `d(x₀, x) <= d(y, x)` whenever
//! `x₀ != x != y`. Hubs are exactly the possible star centers, and the
//! labeling `l(x₀) = 0`, `l(x) = d(x₀, x)` then generates the space.

use std::fmt;

use crate::error::{Error, Result};
use crate::metric::{distance_spectrum, UltraSpace};
use crate::perm::Permutation;
use crate::scalar::{Infimum, Scalar};
use crate::tree::{labeled_tree_isomorphic, star_ultrametric, LabeledStar, LabeledTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubReport {
    /// Every hub, ascending.
    pub hubs: Vec<usize>,
    pub is_us: bool,
}

impl HubReport {
    /// The hub used by default when several qualify.
    pub fn first(&self) -> Option<usize> {
        self.hubs.first().copied()
    }
}

/// Distance from each point to its nearest other point; `None` for a
/// singleton.
fn nearest_distances<S: Scalar>(space: &UltraSpace<S>) -> Vec<Option<S>> {
    let n = space.len();
    (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x)
                .map(|y| space.dist(x, y))
                .min_by(|a, b| a.total_cmp(b))
                .cloned()
        })
        .collect()
}

/// The hub condition is `d(x₀, x) = min_{y != x} d(y, x)` for every `x != x₀`.
pub fn find_hubs<S: Scalar>(space: &UltraSpace<S>) -> HubReport {
    let n = space.len();
    let nearest = nearest_distances(space);
    let hubs: Vec<usize> = (0..n)
        .filter(|&h| {
            (0..n).filter(|&x| x != h).all(|x| Some(space.dist(h, x)) == nearest[x].as_ref())
        })
        .collect();
    let is_us = !hubs.is_empty();
    HubReport { hubs, is_us }
}

pub fn is_hub<S: Scalar>(space: &UltraSpace<S>, point: usize) -> bool {
    let n = space.len();
    point < n
        && (0..n).filter(|&x| x != point).all(|x| {
            (0..n).filter(|&y| y != x).all(|y| space.dist(point, x) <= space.dist(y, x))
        })
}

/// The canonical generating star centered at `hub`: center label 0 and
/// every other point labeled by its distance to the hub.
pub fn synthesize_star<S: Scalar>(space: &UltraSpace<S>, hub: usize) -> Result<LabeledStar<S>> {
    if !is_hub(space, hub) {
        return Err(Error::NotAHub { point: hub });
    }
    LabeledStar::new(hub, space.row(hub).to_vec())
}

/// Exact equality of the induced ultrametric with `space`, vertex `i` of the
/// star corresponding to point `i`. Degenerate stars generate nothing.
pub fn is_generating<S: Scalar>(star: &LabeledStar<S>, space: &UltraSpace<S>) -> Result<bool> {
    if star.len() != space.len() {
        return Err(Error::SizeMismatch { expected: space.len(), found: star.len() });
    }
    Ok(star_ultrametric(star).is_ok_and(|generated| generated == *space))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWitness<S> {
    pub star: LabeledStar<S>,
    pub verified: bool,
}

impl<S: Scalar> GeneratorWitness<S> {
    pub fn check(star: LabeledStar<S>, space: &UltraSpace<S>) -> Result<Self> {
        let verified = is_generating(&star, space)?;
        Ok(Self { star, verified })
    }
}

/// Two different generating stars of the same space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonUniqueness<S> {
    Pair {
        /// Center labeled 0.
        zero_center: GeneratorWitness<S>,
        /// Center labeled `shift`, with `0 < shift < min D₀`.
        shifted_center: GeneratorWitness<S>,
        shift: S,
        /// The two stars coincide as labeled graphs.
        equal: bool,
        /// A labeled-tree isomorphism between them exists.
        isomorphic: bool,
    },
    /// Single point: every center label `t >= 0` generates the space, giving
    /// infinitely many pairwise non-isomorphic generating stars.
    SingletonFamily,
}

/// Builds the generating stars with center labels `0` and `min D₀ / 2` on
/// the lowest hub.
pub fn witness_nonuniqueness<S: Scalar>(space: &UltraSpace<S>) -> Result<NonUniqueness<S>> {
    let center = find_hubs(space).first().ok_or(Error::NotUs)?;
    witness_nonuniqueness_at(space, center)
}

/// As [`witness_nonuniqueness`], centered at the given hub.
pub fn witness_nonuniqueness_at<S: Scalar>(space: &UltraSpace<S>, center: usize) -> Result<NonUniqueness<S>> {
    if !is_hub(space, center) {
        return Err(Error::NotAHub { point: center });
    }
    let Infimum::Finite(least) = distance_spectrum(space).infimum else {
        return Ok(NonUniqueness::SingletonFamily);
    };
    let zero = synthesize_star(space, center)?;
    let shift = least.half();
    let shifted = zero.with_center_label(shift.clone())?;
    let equal = zero == shifted;
    let isomorphic = labeled_tree_isomorphic(&zero.to_tree(), &shifted.to_tree()).is_some();
    Ok(NonUniqueness::Pair {
        zero_center: GeneratorWitness::check(zero, space)?,
        shifted_center: GeneratorWitness::check(shifted, space)?,
        shift,
        equal,
        isomorphic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniquenessReason<S> {
    /// `D₀` is empty so its infimum is `+∞`, never 0.
    Singleton,
    /// `D₀` has the positive least element carried here; the center label can
    /// range over `[0, least)`.
    PositiveLeastDistance(S),
}

/// Answer to "is there exactly one generating labeled star graph?".
///
/// Both readings are reported: equality of labeled graphs, and equality up
/// to labeled-tree isomorphism. Uniqueness holds iff `inf D₀ = 0`, which
/// nonempty finite spaces never satisfy. (For the infinite space of
/// nonnegative reals with `d(p, q) = max(p, q)` the infimum is 0 and the
/// generator is unique; that case is outside what this crate represents.)
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uniqueness<S> {
    pub unique: bool,
    pub unique_up_to_isomorphism: bool,
    pub infimum: Infimum<S>,
    pub reason: UniquenessReason<S>,
}

impl<S: Scalar> fmt::Display for Uniqueness<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            UniquenessReason::Singleton => write!(
                f,
                "not unique: single point, inf D0 = +inf; every center label t >= 0 generates"
            ),
            UniquenessReason::PositiveLeastDistance(least) => write!(
                f,
                "not unique: inf D0 = {least} > 0; center labels 0 and {} both generate",
                least.half()
            ),
        }
    }
}

pub fn unique_generator<S: Scalar>(space: &UltraSpace<S>) -> Result<Uniqueness<S>> {
    if !find_hubs(space).is_us {
        return Err(Error::NotUs);
    }
    let infimum = distance_spectrum(space).infimum;
    let reason = match &infimum {
        Infimum::PositiveInfinity => UniquenessReason::Singleton,
        Infimum::Finite(least) => UniquenessReason::PositiveLeastDistance(least.clone()),
    };
    let unique = infimum.is_zero();
    Ok(Uniqueness { unique, unique_up_to_isomorphism: unique, infimum, reason })
}

/// Transports edges and labels along `f`: `{u, v}` is an edge of the result
/// iff `{f⁻¹(u), f⁻¹(v)}` is an edge of `tree`, and `l₂(w) = l₁(f⁻¹(w))`.
/// `f` is then a labeled-tree isomorphism from `tree` onto the result.
pub fn pushforward_tree<S: Scalar>(tree: &LabeledTree<S>, f: &Permutation) -> Result<LabeledTree<S>> {
    if f.degree() != tree.len() {
        return Err(Error::SizeMismatch { expected: tree.len(), found: f.degree() });
    }
    let inverse = f.inverse();
    let labels = (0..tree.len()).map(|w| tree.label(inverse.apply(w)).clone()).collect();
    let edges = tree.edges().iter().map(|&(u, v)| (f.apply(u), f.apply(v))).collect();
    LabeledTree::new(labels, edges)
}

/// Star analogue of [`pushforward_tree`]; the center moves to `f(center)`.
pub fn pushforward_star<S: Scalar>(star: &LabeledStar<S>, f: &Permutation) -> Result<LabeledStar<S>> {
    if f.degree() != star.len() {
        return Err(Error::SizeMismatch { expected: star.len(), found: f.degree() });
    }
    let inverse = f.inverse();
    let labels = (0..star.len()).map(|w| star.label(inverse.apply(w)).clone()).collect();
    LabeledStar::new(f.apply(star.center()), labels)
}

/// Swaps the center with a leaf of least label (lowest index on ties).
///
/// For a generating star with center label 0 this is always an isometry of
/// the space but never an automorphism of the labeled star, because it moves
/// the label-0 center onto a positively labeled leaf.
pub fn min_leaf_swap_isometry<S: Scalar>(
    space: &UltraSpace<S>,
    star: &LabeledStar<S>,
) -> Result<Permutation> {
    let n = space.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    if !star.center_label().is_zero() {
        return Err(Error::NonzeroCenterLabel);
    }
    if !is_generating(star, space)? {
        return Err(Error::NotGenerating);
    }
    let lightest = star
        .leaves()
        .reduce(|best, v| if star.label(v) < star.label(best) { v } else { best })
        .expect("at least one leaf");
    Ok(Permutation::transposition(n, star.center(), lightest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::dplus_space;
    use crate::oracle;
    use crate::scalar::Rational;
    use crate::similarity::{x4_space, y4_space};
    use crate::symmetry::is_isometry;
    use crate::tree::labeled_star_automorphisms;

    fn z(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn zs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| z(x)).collect()
    }

    fn triangle() -> UltraSpace<Rational> {
        UltraSpace::new(vec![zs(&[0, 2, 2]), zs(&[2, 0, 1]), zs(&[2, 1, 0])]).unwrap()
    }

    #[test]
    fn x4_and_y4_have_no_hub() {
        for s in [x4_space::<Rational>(), y4_space()] {
            let report = find_hubs(&s);
            assert!(report.hubs.is_empty());
            assert!(!report.is_us);
            assert!((0..4).all(|h| !oracle::is_hub_brute(&s, h)));
        }
    }

    #[test]
    fn small_spaces_are_us() {
        assert!(find_hubs(&triangle()).is_us);
        assert_eq!(find_hubs(&triangle()).hubs, vec![1, 2]);
        assert_eq!(find_hubs(&UltraSpace::<Rational>::singleton()).hubs, vec![0]);
    }

    #[test]
    fn dplus_sample_has_zero_as_hub() {
        let s = dplus_space(&zs(&[0, 1, 2])).unwrap();
        assert!(find_hubs(&s).hubs.contains(&0));
    }

    #[test]
    fn synthesize_examples() {
        let s = triangle();
        let star = synthesize_star(&s, 2).unwrap();
        assert_eq!(star.center(), 2);
        assert_eq!(star.labels(), &zs(&[2, 1, 0]));
        assert!(is_generating(&star, &s).unwrap());

        let one = synthesize_star(&UltraSpace::<Rational>::singleton(), 0).unwrap();
        assert_eq!(one.labels(), &[z(0)]);

        assert_eq!(synthesize_star(&x4_space::<Rational>(), 0), Err(Error::NotAHub { point: 0 }));
        assert_eq!(synthesize_star(&s, 0), Err(Error::NotAHub { point: 0 }));
    }

    #[test]
    fn is_generating_examples() {
        // the drawn star: center 1 labeled 0, leaves labeled 2 (vertex 0) and 1 (vertex 2)
        let drawn = UltraSpace::new(vec![zs(&[0, 2, 2]), zs(&[2, 0, 1]), zs(&[2, 1, 0])]).unwrap();
        let star = LabeledStar::new(1, zs(&[2, 0, 1])).unwrap();
        assert!(is_generating(&star, &drawn).unwrap());
        let raised = star.with_center_label(z(3)).unwrap();
        assert!(!is_generating(&raised, &drawn).unwrap());

        let pair = UltraSpace::from_fn(2, |_, _| z(4)).unwrap();
        let example = LabeledStar::new(1, zs(&[4, 0])).unwrap();
        assert!(is_generating(&example, &pair).unwrap());
        assert!(matches!(is_generating(&example, &drawn), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn nonuniqueness_examples() {
        let NonUniqueness::Pair { zero_center, shifted_center, shift, equal, isomorphic } =
            witness_nonuniqueness(&triangle()).unwrap()
        else {
            panic!("expected a pair");
        };
        assert_eq!(shift, Rational::from_ratio(1, 2));
        assert!(zero_center.verified && shifted_center.verified);
        assert_eq!(shifted_center.star.center_label(), &shift);
        assert!(!equal && !isomorphic);

        let pair = UltraSpace::from_fn(2, |_, _| z(1)).unwrap();
        let NonUniqueness::Pair { shift, .. } = witness_nonuniqueness(&pair).unwrap() else {
            panic!("expected a pair");
        };
        assert_eq!(shift, Rational::from_ratio(1, 2));

        assert_eq!(
            witness_nonuniqueness(&UltraSpace::<Rational>::singleton()).unwrap(),
            NonUniqueness::SingletonFamily
        );
        assert_eq!(witness_nonuniqueness(&x4_space::<Rational>()), Err(Error::NotUs));
    }

    #[test]
    fn uniqueness_examples() {
        let u = unique_generator(&triangle()).unwrap();
        assert!(!u.unique && !u.unique_up_to_isomorphism);
        assert_eq!(u.reason, UniquenessReason::PositiveLeastDistance(z(1)));
        assert!(u.to_string().contains("inf D0 = 1 > 0"));
        let u = unique_generator(&UltraSpace::<Rational>::singleton()).unwrap();
        assert!(!u.unique);
        assert_eq!(u.reason, UniquenessReason::Singleton);
        assert_eq!(u.infimum, Infimum::PositiveInfinity);
        assert_eq!(unique_generator(&y4_space::<Rational>()), Err(Error::NotUs));
    }

    #[test]
    fn pushforward_examples() {
        let s = triangle();
        let star = synthesize_star(&s, 2).unwrap();
        let tree = star.to_tree();
        assert_eq!(pushforward_tree(&tree, &Permutation::identity(3)).unwrap(), tree);

        // swapping the leaves labeled 2 and 1 is not an isometry
        let f = Permutation::transposition(3, 0, 1);
        assert!(!is_isometry(&s, &f));
        let pushed = pushforward_star(&star, &f).unwrap();
        assert!(!is_generating(&pushed, &s).unwrap());
        let pushed_tree = pushforward_tree(&tree, &f).unwrap();
        assert_eq!(pushed_tree, pushed.to_tree());
        assert!(crate::tree::is_labeled_isomorphism(&tree, &pushed_tree, &f));

        // swapping the two points at distance 1 is an isometry
        let g = Permutation::transposition(3, 1, 2);
        assert!(is_isometry(&s, &g));
        assert!(is_generating(&pushforward_star(&star, &g).unwrap(), &s).unwrap());
        assert!(pushforward_tree(&tree, &Permutation::identity(2)).is_err());
    }

    #[test]
    fn min_leaf_swap_examples() {
        let pair = UltraSpace::from_fn(2, |_, _| z(3)).unwrap();
        let star = LabeledStar::new(1, zs(&[3, 0])).unwrap();
        let f = min_leaf_swap_isometry(&pair, &star).unwrap();
        assert_eq!(f, Permutation::transposition(2, 0, 1));
        assert!(is_isometry(&pair, &f));
        assert!(!labeled_star_automorphisms(&star).contains(&f));

        let s = triangle();
        let star = synthesize_star(&s, 1).unwrap();
        let f = min_leaf_swap_isometry(&s, &star).unwrap();
        assert_eq!(f, Permutation::transposition(3, 1, 2));
        assert!(is_isometry(&s, &f));

        let tied = LabeledStar::new(0, zs(&[0, 1, 1, 2])).unwrap();
        let space = star_ultrametric(&tied).unwrap();
        let f = min_leaf_swap_isometry(&space, &tied).unwrap();
        assert_eq!(f, Permutation::transposition(4, 0, 1));
        assert!(oracle::isometry_group_brute(&space).contains(&f));

        assert_eq!(
            min_leaf_swap_isometry(&space, &tied.with_center_label(Rational::from_ratio(1, 2)).unwrap()),
            Err(Error::NonzeroCenterLabel)
        );
        let single = UltraSpace::<Rational>::singleton();
        assert!(matches!(
            min_leaf_swap_isometry(&single, &LabeledStar::new(0, zs(&[0])).unwrap()),
            Err(Error::TooFewPoints { .. })
        ));
    }
}
