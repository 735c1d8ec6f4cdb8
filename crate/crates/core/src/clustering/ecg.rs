//! Ensemble clustering: consensus-reweighted Louvain.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Partition};
use crate::rng::substream;

use super::louvain::{louvain_level_one, louvain_weighted};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcgConfig {
    /// Number of level-one Louvain runs in the ensemble.
    pub ensemble: usize,
    /// Weight of an edge whose endpoints are never co-clustered.
    pub min_weight: f64,
}

impl Default for EcgConfig {
    fn default() -> Self {
        EcgConfig { ensemble: 16, min_weight: 0.05 }
    }
}

/// ECG with `k` ensemble runs and the default minimum weight.
pub fn ecg<R: Rng + ?Sized>(g: &MultiGraph, k: usize, rng: &mut R) -> Result<Partition> {
    ecg_with(g, EcgConfig { ensemble: k, ..EcgConfig::default() }, rng)
}

/// Runs the ensemble on independent sub-streams (in parallel with the
/// `parallel` feature), reweights every edge by the fraction of runs that
/// co-cluster its endpoints and returns multi-level Louvain on the result.
pub fn ecg_with<R: Rng + ?Sized>(g: &MultiGraph, cfg: EcgConfig, rng: &mut R) -> Result<Partition> {
    if cfg.ensemble == 0 {
        return Err(Error::Domain("ensemble size must be positive"));
    }
    if !(0.0..=1.0).contains(&cfg.min_weight) {
        return Err(Error::Domain("minimum weight must lie in [0, 1]"));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let base: u64 = rng.random();
    let run = |i: usize| louvain_level_one(g, &mut substream(base, i as u64));

    #[cfg(feature = "parallel")]
    let ensemble: Vec<Partition> = {
        use rayon::prelude::*;
        (0..cfg.ensemble).into_par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let ensemble: Vec<Partition> = (0..cfg.ensemble).map(run).collect::<Result<_>>()?;

    let weights: Vec<f64> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (u, v) = (u as usize, v as usize);
            let together = ensemble.iter().filter(|p| p.part_of(u) == p.part_of(v)).count();
            cfg.min_weight + (1.0 - cfg.min_weight) * together as f64 / cfg.ensemble as f64
        })
        .collect();
    Ok(louvain_weighted(g, Some(&weights), rng)?.partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::ami;
    use crate::rng::substream;
    use crate::{build_abcd, AbcdParams};

    #[test]
    fn two_triangles() {
        let g = MultiGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        for seed in 0..10 {
            let p = ecg(&g, 8, &mut substream(seed, 0)).unwrap();
            assert!(p.same_as(&Partition::from_labels(alloc::vec![0, 0, 0, 1, 1, 1])));
        }
    }

    #[test]
    fn recovers_low_noise_ground_truth() {
        let a = build_abcd(&AbcdParams::reference(1000, 0.2), 11).unwrap();
        let p = ecg(&a.graph, 16, &mut substream(11, 99)).unwrap();
        assert!(ami(&p, &a.partition).unwrap() > 0.9);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = build_abcd(&AbcdParams::reference(1000, 0.5), 2).unwrap();
        let x = ecg(&a.graph, 4, &mut substream(5, 0)).unwrap();
        let y = ecg(&a.graph, 4, &mut substream(5, 0)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn bad_config() {
        let g = MultiGraph::from_edges(2, [(0, 1)]).unwrap();
        assert!(matches!(ecg(&g, 0, &mut substream(0, 0)), Err(Error::Domain(_))));
        let cfg = EcgConfig { ensemble: 2, min_weight: 1.5 };
        assert!(matches!(ecg_with(&g, cfg, &mut substream(0, 0)), Err(Error::Domain(_))));
    }
}
