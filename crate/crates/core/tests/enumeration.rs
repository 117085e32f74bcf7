use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultrastar::enumeration::{shape_count, DendroNode};
use ultrastar::oracle::weakly_similar_brute;
use ultrastar::*;

#[test]
fn fast_enumeration_matches_brute_force() {
    for n in 1..=5 {
        let fast = enumerate_classes(n, EnumerationConfig::default()).unwrap();
        let slow = brute_force_classes(n).unwrap();
        assert_eq!(fast, slow, "n = {n}");
    }
}

#[test]
fn class_counts_grow() {
    let counts: Vec<usize> =
        (1..=6).map(|n| enumerate_classes(n, EnumerationConfig::default()).unwrap().len()).collect();
    assert_eq!(&counts[..3], &[1, 1, 2]);
    // every shape contributes at least one class
    for (n, &c) in counts.iter().enumerate() {
        assert!(c >= shape_count(n + 1));
    }
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn representatives_are_pairwise_dissimilar() {
    for n in 2..=5 {
        let spaces: Vec<Space> =
            enumerate_classes(n, EnumerationConfig::default()).unwrap().iter().map(|c| c.realize()).collect();
        for (a, x) in spaces.iter().enumerate() {
            for y in &spaces[a + 1..] {
                assert!(weakly_similar(x, y).is_none());
            }
        }
    }
    let spaces: Vec<Space> =
        enumerate_classes(4, EnumerationConfig::default()).unwrap().iter().map(|c| c.realize()).collect();
    for (a, x) in spaces.iter().enumerate() {
        for (b, y) in spaces.iter().enumerate() {
            assert_eq!(weakly_similar_brute(x, y), a == b);
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let one = enumerate_classes(6, EnumerationConfig { jobs: 1, ..Default::default() }).unwrap();
    let many = enumerate_classes(6, EnumerationConfig { jobs: 8, ..Default::default() }).unwrap();
    assert_eq!(one, many);
}

#[test]
fn heights_do_not_change_the_class() {
    // ((0, 1)@1, (2, 3)@2, 4)@3
    let d = Dendrogram::new(
        vec![
            DendroNode::Leaf(0),
            DendroNode::Leaf(1),
            DendroNode::Leaf(2),
            DendroNode::Leaf(3),
            DendroNode::Leaf(4),
            DendroNode::Internal { children: vec![0, 1], level: 1 },
            DendroNode::Internal { children: vec![2, 3], level: 2 },
            DendroNode::Internal { children: vec![5, 6, 4], level: 3 },
        ],
        7,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let expected = rank_matrix(&dendrogram_to_space(&d, &[1, 2, 3].map(Rational::from_integer)).unwrap()).canonical().0;
    for _ in 0..50 {
        let mut h = Rational::from_integer(0);
        let heights: Vec<Rational> = (0..3)
            .map(|_| {
                h += Rational::new(rng.gen_range(1..20), rng.gen_range(1..7));
                h
            })
            .collect();
        let s = dendrogram_to_space(&d, &heights).unwrap();
        assert_eq!(rank_matrix(&s).canonical().0, expected);
    }
}

#[test]
fn random_spaces_land_in_enumerated_classes() {
    let classes: Vec<RankMatrix> =
        enumerate_classes(6, EnumerationConfig::default()).unwrap().into_iter().map(|c| c.ranks).collect();
    for seed in 0..200 {
        let s: Space = random_ultrametric(6, seed, 5).unwrap();
        let canon = rank_matrix(&s).canonical().0;
        assert!(classes.binary_search(&canon).is_ok());
    }
}
