//! Verification harnesses for the four-point characterization of spaces
//! generated by labeled stars, and for finite truncations of labeled rays.
//!
//! Over finite spaces, one direction always holds: a four-point subspace
//! weakly similar to X4 or Y4 has no hub, and having a hub is hereditary, so
//! an obstruction rules out a hub. The converse is checked class by class
//! and any failure is reported as a certificate rather than asserted away.

use std::fmt;

use rayon::prelude::*;

use crate::enumeration::{enumerate_classes, EnumerationConfig};
use crate::error::{Error, Result};
use crate::metric::{distance_spectrum, subspace, UltraSpace};
use crate::scalar::{Rational, Scalar};
use crate::similarity::{
    contains_obstruction, scan_four_point_subsets, weakly_similar, ObstructionCertificate, RankMatrix,
    SubsetScan,
};
use crate::tree::{ray_truncation, star_ultrametric, tree_ultrametric, LabeledStar, LabeledTree};
use crate::us::{find_hubs, HubReport};

/// Largest class size for which heredity is checked on every subset.
pub const HEREDITY_BOUND: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassStatus {
    UsNoObstruction,
    NonUsWithObstruction,
    /// Has a hub and an obstruction; contradicts a proven implication.
    ObstructionButUs,
    /// No hub and no obstruction; would refute the characterization.
    NonUsNoObstruction,
}

impl ClassStatus {
    pub fn is_consistent(self) -> bool {
        matches!(self, ClassStatus::UsNoObstruction | ClassStatus::NonUsWithObstruction)
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassStatus::UsNoObstruction => "us-no-obstruction",
            ClassStatus::NonUsWithObstruction => "non-us-with-obstruction",
            ClassStatus::ObstructionButUs => "obstruction-but-us",
            ClassStatus::NonUsNoObstruction => "non-us-no-obstruction",
        }
    }
}

impl fmt::Display for ClassStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub n: usize,
    pub id: usize,
    pub ranks: RankMatrix,
    pub hubs: HubReport,
    pub obstruction: Option<ObstructionCertificate<Rational>>,
    pub status: ClassStatus,
    /// Whether every nonempty subset has a hub; checked for classes with a
    /// hub and at most [`HEREDITY_BOUND`] points.
    pub hereditary: Option<bool>,
    /// The obstruction, if any, re-verified against the model space.
    pub certificate_verified: Option<bool>,
}

/// Everything needed to reproduce an inconsistent class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleCertificate {
    pub ranks: RankMatrix,
    pub hubs: HubReport,
    pub scan: Vec<SubsetScan>,
    pub status: ClassStatus,
}

impl CounterexampleCertificate {
    /// Recomputes hubs and the scan from the rank matrix.
    pub fn verify(&self) -> bool {
        let space: UltraSpace<Rational> = self.ranks.realize();
        find_hubs(&space) == self.hubs && scan_four_point_subsets(&space) == self.scan
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n_max: usize,
    pub classes: Vec<ClassReport>,
    pub counterexamples: Vec<CounterexampleCertificate>,
}

impl ConjectureReport {
    /// Obstruction implies no hub, for every class.
    pub fn provable_direction_holds(&self) -> bool {
        self.classes.iter().all(|c| c.status != ClassStatus::ObstructionButUs)
    }

    pub fn heredity_holds(&self) -> bool {
        self.classes.iter().all(|c| c.hereditary != Some(false))
    }

    pub fn certificates_verified(&self) -> bool {
        self.classes.iter().all(|c| c.certificate_verified != Some(false))
    }

    pub fn equivalence_holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// `(n, classes, us, non-us, inconsistent)` per size.
    pub fn summary(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        (1..=self.n_max)
            .map(|n| {
                let of_n: Vec<&ClassReport> = self.classes.iter().filter(|c| c.n == n).collect();
                let us = of_n.iter().filter(|c| c.hubs.is_us).count();
                let bad = of_n.iter().filter(|c| !c.status.is_consistent()).count();
                (n, of_n.len(), us, of_n.len() - us, bad)
            })
            .collect()
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "four-point characterization, n <= {}", self.n_max)?;
        for (n, total, us, non_us, bad) in self.summary() {
            writeln!(f, "n = {n}: {total} classes, {us} with hub, {non_us} without, {bad} inconsistent")?;
        }
        writeln!(
            f,
            "obstruction implies no hub: {}",
            if self.provable_direction_holds() { "holds" } else { "VIOLATED" }
        )?;
        writeln!(f, "heredity: {}", if self.heredity_holds() { "holds" } else { "VIOLATED" })?;
        writeln!(
            f,
            "certificates: {}",
            if self.certificates_verified() { "all verified" } else { "FAILED" }
        )?;
        if self.equivalence_holds() {
            write!(f, "no hub iff obstruction: holds for every class")
        } else {
            write!(f, "no hub iff obstruction: {} counterexample(s)", self.counterexamples.len())
        }
    }
}

fn all_subsets_have_hubs(space: &UltraSpace<Rational>) -> bool {
    let n = space.len();
    (1u32..(1 << n)).all(|mask| {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        find_hubs(&subspace(space, &subset).expect("valid subset").space).is_us
    })
}

fn check_class(n: usize, id: usize, ranks: RankMatrix) -> ClassReport {
    let space: UltraSpace<Rational> = ranks.realize();
    let hubs = find_hubs(&space);
    let obstruction = contains_obstruction(&space);
    let status = match (hubs.is_us, obstruction.is_some()) {
        (true, false) => ClassStatus::UsNoObstruction,
        (false, true) => ClassStatus::NonUsWithObstruction,
        (true, true) => ClassStatus::ObstructionButUs,
        (false, false) => ClassStatus::NonUsNoObstruction,
    };
    let hereditary = (hubs.is_us && n <= HEREDITY_BOUND).then(|| all_subsets_have_hubs(&space));
    let certificate_verified = obstruction.as_ref().map(|cert| {
        let sub = subspace(&space, &cert.subset).expect("valid subset").space;
        cert.verify(&space) && weakly_similar(&sub, &cert.target.space()).is_some()
    });
    ClassReport { n, id, ranks, hubs, obstruction, status, hereditary, certificate_verified }
}

/// Runs the characterization check on every weak-similarity class with at
/// most `n_max` points.
pub fn verify_sepjtg(n_max: usize, config: EnumerationConfig) -> Result<ConjectureReport> {
    if n_max > config.bound {
        return Err(Error::SizeBound { n: n_max, bound: config.bound });
    }
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for class in enumerate_classes(n, config)? {
            jobs.push((n, class.id, class.ranks));
        }
    }
    let run = || -> Vec<ClassReport> {
        jobs.into_par_iter().map(|(n, id, ranks)| check_class(n, id, ranks)).collect()
    };
    let classes = if config.jobs > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build().expect("thread pool").install(run)
    } else {
        run()
    };
    let counterexamples = classes
        .iter()
        .filter(|c| !c.status.is_consistent())
        .map(|c| CounterexampleCertificate {
            ranks: c.ranks.clone(),
            hubs: c.hubs.clone(),
            scan: scan_four_point_subsets(&c.ranks.realize::<Rational>()),
            status: c.status,
        })
        .collect();
    Ok(ConjectureReport { n_max, classes, counterexamples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayReport {
    pub n: usize,
    pub ray: LabeledTree<Rational>,
    pub space: UltraSpace<Rational>,
    pub hubs: HubReport,
    /// Least nonzero distance; `None` for a single point.
    pub min_distance: Option<Rational>,
    /// Center `0` with label 0 and leaf `i` with label `1/i`.
    pub star: LabeledStar<Rational>,
    pub star_space: UltraSpace<Rational>,
    /// Ray vertex `i` goes to star vertex `embedding[i]`.
    pub embedding: Vec<usize>,
    /// Pairs `(i, j)`, `i < j`, whose distances disagree under the embedding.
    pub mismatches: Vec<(usize, usize)>,
}

impl RayReport {
    pub fn last_vertex_is_hub(&self) -> bool {
        self.hubs.hubs.contains(&(self.n - 1))
    }

    pub fn embedding_verified(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for RayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hubs: Vec<String> = self.hubs.hubs.iter().map(|h| format!("x{}", h + 1)).collect();
        writeln!(f, "ray truncation with labels 1, 1/2, ..., 1/{}", self.n)?;
        writeln!(f, "hubs: {}", hubs.join(" "))?;
        match &self.min_distance {
            Some(d) => writeln!(f, "least nonzero distance: {d}")?,
            None => writeln!(f, "least nonzero distance: none (single point)")?,
        }
        writeln!(
            f,
            "embedding into the {}-vertex star: {}",
            self.star.len(),
            if self.embedding_verified() { "distance-preserving on every pair" } else { "FAILED" }
        )?;
        write!(f, "every finite truncation has a hub; the hub disappears only for the infinite ray")
    }
}

/// Truncates the ray with labels `1, 1/2, ..., 1/n`, locates its hubs and
/// checks the embedding `x_i -> leaf 1/i` into the star with center label 0.
pub fn ray_experiment(n: usize) -> Result<RayReport> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    let labels: Vec<Rational> = (1..=n as i64).map(|i| Rational::new(1, i)).collect();
    let ray = ray_truncation(&labels)?.tree;
    let space = tree_ultrametric(&ray)?;
    let hubs = find_hubs(&space);
    let min_distance = distance_spectrum(&space).infimum.finite().cloned();
    let mut star_labels = vec![Rational::from_int(0)];
    star_labels.extend(labels.iter().cloned());
    let star = LabeledStar::new(0, star_labels)?;
    let star_space = star_ultrametric(&star)?;
    let embedding: Vec<usize> = (1..=n).collect();
    let mismatches = space
        .pairs()
        .filter(|&(i, j)| space.dist(i, j) != star_space.dist(embedding[i], embedding[j]))
        .collect();
    Ok(RayReport { n, ray, space, hubs, min_distance, star, star_space, embedding, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes_have_no_obstructions() {
        let report = verify_sepjtg(3, EnumerationConfig::default()).unwrap();
        assert_eq!(report.classes.len(), 4);
        assert!(report.classes.iter().all(|c| c.status == ClassStatus::UsNoObstruction));
    }

    #[test]
    fn four_points_contain_both_models() {
        let report = verify_sepjtg(4, EnumerationConfig::default()).unwrap();
        let non_us: Vec<&ClassReport> = report.classes.iter().filter(|c| !c.hubs.is_us).collect();
        assert_eq!(non_us.len(), 2);
        for c in non_us {
            let cert = c.obstruction.as_ref().unwrap();
            assert_eq!(cert.subset, [0, 1, 2, 3]);
            assert_eq!(c.certificate_verified, Some(true));
        }
        assert!(report.provable_direction_holds() && report.heredity_holds());
    }

    #[test]
    fn ray_of_four() {
        let r = ray_experiment(4).unwrap();
        for (i, j) in r.space.pairs() {
            assert_eq!(r.space.dist(i, j), &Rational::new(1, (i.min(j) + 1) as i64));
        }
        assert!(r.last_vertex_is_hub());
        assert_eq!(r.min_distance, Some(Rational::new(1, 3)));
        assert!(r.embedding_verified());
    }

    #[test]
    fn ray_of_one() {
        let r = ray_experiment(1).unwrap();
        assert!(r.hubs.is_us && r.last_vertex_is_hub());
        assert_eq!(r.min_distance, None);
        assert_eq!(r.star.len(), 2);
    }

    #[test]
    fn counterexample_certificate_reverifies() {
        let ranks = crate::similarity::rank_matrix(&crate::similarity::x4_space::<Rational>());
        let space: UltraSpace<Rational> = ranks.realize();
        let cert = CounterexampleCertificate {
            ranks,
            hubs: find_hubs(&space),
            scan: scan_four_point_subsets(&space),
            status: ClassStatus::NonUsWithObstruction,
        };
        assert!(cert.verify());
    }
}
