//! The configuration (pairing) model and conflict-driven edge switching.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Origin};

/// Uniform perfect matching on `sum(weights)` points, node `i` owning
/// `weights[i]` of them, returned as `(u, v)` node pairs with `u <= v`.
///
/// Pairs are formed sequentially: the first unmatched point is matched with a
/// uniformly chosen other unmatched point, which yields every pairing with
/// equal probability in `O(W)` time.
pub fn pair_points<R: Rng + ?Sized>(weights: &[usize], rng: &mut R) -> Result<Vec<(u32, u32)>> {
    let total: usize = weights.iter().sum();
    if total % 2 == 1 {
        return Err(Error::Parity);
    }
    let mut points: Vec<u32> = Vec::with_capacity(total);
    for (v, &w) in weights.iter().enumerate() {
        points.extend(core::iter::repeat_n(v as u32, w));
    }
    let mut pairs = Vec::with_capacity(total / 2);
    let mut i = 0;
    while i < total {
        let j = rng.random_range(i + 1..total);
        points.swap(i + 1, j);
        let (a, b) = (points[i], points[i + 1]);
        pairs.push(if a <= b { (a, b) } else { (b, a) });
        i += 2;
    }
    Ok(pairs)
}

/// Random multigraph with degree sequence `weights` from the pairing model.
pub fn configuration_model<R: Rng + ?Sized>(weights: &[usize], rng: &mut R) -> Result<MultiGraph> {
    let pairs = pair_points(weights, rng)?;
    Ok(MultiGraph::from_canonical(
        weights.len(),
        pairs.into_iter().map(|(u, v)| (u, v, Origin::Unspecified)).collect(),
    ))
}

/// Switching ran out of sweeps; `graph` is the best multigraph reached.
#[derive(Debug, Clone)]
pub struct NotSimple {
    pub graph: MultiGraph,
    pub conflicts: usize,
}

impl From<NotSimple> for Error {
    fn from(e: NotSimple) -> Self {
        Error::NotSimple { conflicts: e.conflicts }
    }
}

fn conflict_weight(key: (u32, u32), mult: u32) -> i64 {
    if key.0 == key.1 {
        mult as i64
    } else {
        mult.saturating_sub(1) as i64
    }
}

fn key(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Switch attempts spent on one conflicting edge per sweep.
const ATTEMPTS_PER_EDGE: usize = 256;

/// Removes loops and parallel edges by degree-preserving switches.
///
/// Each sweep visits every edge that is a loop or a surplus parallel copy, pairs
/// it with a uniformly random edge of the same origin and rewires
/// `{a,b},{c,d}` into `{a,c},{b,d}` or `{a,d},{b,c}` unless that raises the
/// number of conflicts. Restricting partners to the same origin keeps each community
/// graph inside its community and preserves every per-graph degree sequence.
pub fn rewire_to_simple<R: Rng + ?Sized>(
    g: MultiGraph,
    rng: &mut R,
    max_sweeps: usize,
) -> core::result::Result<MultiGraph, NotSimple> {
    let n = g.node_count();
    let mut tagged = g.into_tagged();
    let mut mult: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for &(u, v, _) in &tagged {
        *mult.entry((u, v)).or_insert(0) += 1;
    }
    let mut conflicts: i64 = mult.iter().map(|(&k, &m)| conflict_weight(k, m)).sum();

    let mut classes: BTreeMap<Origin, Vec<usize>> = BTreeMap::new();
    for (i, &(_, _, o)) in tagged.iter().enumerate() {
        classes.entry(o).or_default().push(i);
    }

    let mut sweeps = 0;
    while conflicts > 0 && sweeps < max_sweeps {
        sweeps += 1;
        let bad: Vec<usize> = tagged
            .iter()
            .enumerate()
            .filter(|(_, &(u, v, _))| u == v || mult[&(u, v)] > 1)
            .map(|(i, _)| i)
            .collect();
        for e in bad {
            for _ in 0..ATTEMPTS_PER_EDGE {
                let (a, b, origin) = tagged[e];
                if a != b && mult[&(a, b)] <= 1 {
                    break;
                }
                let class = &classes[&origin];
                if class.len() < 2 {
                    break;
                }
                let f = class[rng.random_range(0..class.len())];
                if f == e {
                    continue;
                }
                let (c, d, _) = tagged[f];
                let (x, y) = if rng.random::<bool>() { (c, d) } else { (d, c) };
                let old = [key(a, b), key(c, d)];
                let new = [key(a, x), key(b, y)];

                let mut touched: Vec<(u32, u32)> = old.iter().chain(&new).copied().collect();
                touched.sort_unstable();
                touched.dedup();
                let before: i64 =
                    touched.iter().map(|k| conflict_weight(*k, *mult.get(k).unwrap_or(&0))).sum();
                for k in &old {
                    *mult.get_mut(k).unwrap() -= 1;
                }
                for k in &new {
                    *mult.entry(*k).or_insert(0) += 1;
                }
                let after: i64 =
                    touched.iter().map(|k| conflict_weight(*k, *mult.get(k).unwrap_or(&0))).sum();
                if after <= before {
                    conflicts += after - before;
                    tagged[e] = (new[0].0, new[0].1, origin);
                    tagged[f] = (new[1].0, new[1].1, origin);
                } else {
                    for k in &new {
                        *mult.get_mut(k).unwrap() -= 1;
                    }
                    for k in &old {
                        *mult.get_mut(k).unwrap() += 1;
                    }
                }
            }
            if conflicts == 0 {
                break;
            }
        }
    }
    let graph = MultiGraph::from_canonical(n, tagged);
    if conflicts == 0 {
        Ok(graph)
    } else {
        Err(NotSimple { graph, conflicts: conflicts as usize })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use crate::{build_abcd, AbcdParams};

    #[test]
    fn two_points_make_one_edge() {
        let g = configuration_model(&[1, 1], &mut substream(0, 0)).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = configuration_model(&[2], &mut substream(0, 0)).unwrap();
        assert_eq!(g.edges(), &[(0, 0)]);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn odd_total_is_rejected() {
        assert_eq!(configuration_model(&[1, 2], &mut substream(0, 0)), Err(Error::Parity));
    }

    #[test]
    fn three_matchings_of_four_points_are_equally_likely() {
        // Oracle: the 3 perfect matchings of {0,1,2,3}.
        let matchings = [
            [(0u32, 1u32), (2, 3)],
            [(0, 2), (1, 3)],
            [(0, 3), (1, 2)],
        ];
        let mut counts = [0usize; 3];
        let mut rng = substream(17, 0);
        let runs = 100_000;
        for _ in 0..runs {
            let g = configuration_model(&[1, 1, 1, 1], &mut rng).unwrap();
            let idx = matchings.iter().position(|m| g.edges() == m).unwrap();
            counts[idx] += 1;
        }
        for c in counts {
            let f = c as f64 / runs as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.01, "{counts:?}");
        }
    }

    #[test]
    fn pairings_of_six_points_are_uniform() {
        // Degrees [2, 2, 2]: 15 pairings of 6 labelled points; as multigraphs
        // these collapse to the triangle (8 pairings), a loop plus a double edge
        // at each of 3 nodes (2 each, 6 total) and three loops (1).
        let mut tri = 0usize;
        let mut loops3 = 0usize;
        let mut mixed = 0usize;
        let runs = 150_000;
        let mut rng = substream(23, 0);
        for _ in 0..runs {
            let g = configuration_model(&[2, 2, 2], &mut rng).unwrap();
            match g.edges().iter().filter(|(u, v)| u == v).count() {
                0 => tri += 1,
                3 => loops3 += 1,
                _ => mixed += 1,
            }
        }
        for (count, p) in [(tri, 8.0 / 15.0), (mixed, 6.0 / 15.0), (loops3, 1.0 / 15.0)] {
            let sigma = (p * (1.0 - p) / runs as f64).sqrt();
            assert!((count as f64 / runs as f64 - p).abs() < 3.0 * sigma + 1e-9);
        }
    }

    #[test]
    fn degrees_survive_pairing() {
        let w = [5usize, 0, 3, 3, 1, 2];
        for seed in 0..50 {
            let g = configuration_model(&w, &mut substream(seed, 0)).unwrap();
            assert_eq!(g.degrees(), &w);
        }
    }

    #[test]
    fn simple_graph_is_left_alone() {
        let g = MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let out = rewire_to_simple(g.clone(), &mut substream(0, 0), 10).unwrap();
        assert_eq!(out, g);
    }

    fn conflict_fraction(n: usize, seeds: u64) -> f64 {
        let p = AbcdParams::reference(n, 0.3);
        let (mut conflicted, mut total) = (0, 0);
        for seed in 0..seeds {
            let g = build_abcd(&p, seed).unwrap().graph;
            conflicted += g.conflicts();
            total += g.edge_count();
        }
        conflicted as f64 / total as f64
    }

    #[test]
    fn conflicts_are_rare_and_vanish_with_n() {
        // Dense small communities with heavy leaders keep the fraction at a
        // few percent for n = 10^4; it falls slowly as n grows.
        let small = conflict_fraction(10_000, 30);
        let large = conflict_fraction(100_000, 3);
        assert!(small < 0.05, "{small}");
        assert!(large < small, "{large} >= {small}");
    }

    #[test]
    fn switching_removes_conflicts_and_keeps_degrees() {
        let p = AbcdParams::reference(10_000, 0.3);
        for seed in 0..5 {
            let a = build_abcd(&p, seed).unwrap();
            let before = a.graph.degrees().to_vec();
            let out = rewire_to_simple(a.graph, &mut substream(seed, 99), 100).unwrap();
            assert!(out.is_simple());
            assert_eq!(out.degrees(), before.as_slice());
            for (&(u, v), &o) in out.edges().iter().zip(out.origins()) {
                if let Origin::Community(j) = o {
                    assert_eq!(a.partition.part_of(u as usize), j as usize);
                    assert_eq!(a.partition.part_of(v as usize), j as usize);
                }
            }
        }
    }

    #[test]
    fn hopeless_instances_report_remaining_conflicts() {
        // A single node with a loop cannot be made simple.
        let g = MultiGraph::from_edges(1, [(0, 0)]).unwrap();
        let err = rewire_to_simple(g, &mut substream(0, 0), 5).unwrap_err();
        assert_eq!(err.conflicts, 1);
        assert_eq!(err.graph.degrees(), &[2]);
        assert_eq!(Error::from(err), Error::NotSimple { conflicts: 1 });
    }
}
