//! Finite ultrametric spaces generated by vertex-labeled trees and star
//! graphs.
//!
//! A labeled tree induces the ultrametric "largest label on the path". This
//! crate validates ultrametrics, recognizes the spaces generated by labeled
//! stars (those with a hub), compares isometry groups with star
//! automorphism groups, decides weak similarity through rank matrices and
//! enumerates finite spaces up to weak similarity.
//!
//! Everything is generic over [`Scalar`]; exact rationals are the default.
//!
//! ```
//! use ultrastar::{find_hubs, star_ultrametric, synthesize_star, Rational, Star};
//!
//! let q = |n| Rational::from_integer(n);
//! let star = Star::new(0, vec![q(0), q(2), q(1)]).unwrap();
//! let space = star_ultrametric(&star).unwrap();
//! assert_eq!(space.dist(1, 2), &q(2));
//!
//! let hubs = find_hubs(&space);
//! assert!(hubs.is_us);
//! let again = synthesize_star(&space, hubs.hubs[0]).unwrap();
//! assert_eq!(star_ultrametric(&again).unwrap(), space);
//! ```

pub mod enumeration;
pub mod error;
pub mod lab;
pub mod metric;
pub mod oracle;
pub mod perm;
pub mod scalar;
pub mod similarity;
pub mod symmetry;
pub mod tree;
pub mod us;

pub use enumeration::{
    brute_force_classes, dendrogram_to_space, enumerate_classes, random_ultrametric, CanonicalClass, DendroNode,
    Dendrogram, EnumerationConfig,
};
pub use error::{Error, Result};
pub use lab::{ray_experiment, verify_sepjtg, ClassStatus, ConjectureReport, RayReport};
pub use metric::{
    distance_spectrum, dplus_space, shift_space, subspace, validate_ultrametric, DistanceSpectrum, UltraSpace,
    Validation, Violation,
};
pub use perm::{PermGroup, Permutation};
pub use scalar::{BigRatio, Infimum, Rational, Scalar};
pub use similarity::{
    contains_obstruction, rank_matrix, weakly_similar, x4_space, y4_space, FourPointModel, ObstructionCertificate,
    RankMatrix, WeakSimilarity,
};
pub use symmetry::{
    compare_groups, find_isometry, is_isometry, isometry_group, isometry_group_bounded, shifted_leaf_labeling, GroupComparison,
    GroupRelation,
};
pub use tree::{
    labeled_star_automorphisms, labeled_tree_isomorphic, ray_truncation, star_ultrametric, tree_ultrametric,
    LabeledStar, LabeledTree,
};
pub use us::{
    find_hubs, is_generating, is_hub, min_leaf_swap_isometry, pushforward_star, pushforward_tree, synthesize_star,
    unique_generator, witness_nonuniqueness, witness_nonuniqueness_at, HubReport, NonUniqueness, Uniqueness,
};

/// Exact space over `i64` rationals.
pub type Space = UltraSpace<Rational>;
pub type Tree = LabeledTree<Rational>;
pub type Star = LabeledStar<Rational>;

pub type SpaceF64 = UltraSpace<f64>;
pub type TreeF64 = LabeledTree<f64>;
pub type StarF64 = LabeledStar<f64>;

/// Exact space over arbitrary-precision rationals.
pub type BigSpace = UltraSpace<BigRatio>;
