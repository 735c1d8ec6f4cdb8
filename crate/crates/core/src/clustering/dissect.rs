//! Spanning-tree dissection: a constructive partition whose modularity has a
//! guaranteed lower bound on any graph.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{spanning_tree_from, MultiGraph, Partition, SpanningTree};
use crate::math::sqrt;
use crate::modularity::{modularity, ModularityReport};

/// Chunk-volume thresholds tried, as multiples of `sqrt(max_degree * volume)`.
const THRESHOLD_SCALES: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0];

/// Result of a dissection together with the bound it was checked against.
#[derive(Debug, Clone)]
pub struct TreeDissection {
    pub partition: Partition,
    pub report: ModularityReport,
    /// `2 n'/vol - 3 sqrt(max_deg/vol) - max_deg/vol`, `n'` the size of the
    /// largest component.
    pub bound: f64,
    /// Threshold that produced the kept partition.
    pub threshold: f64,
}

/// Modularity guaranteed by the dissection for a graph with these statistics.
pub fn lemma_bound(largest_component: usize, max_degree: usize, volume: usize) -> f64 {
    let (np, d, vol) = (largest_component as f64, max_degree as f64, volume as f64);
    2.0 * np / vol - 3.0 * sqrt(d / vol) - d / vol
}

#[derive(Clone, Copy, PartialEq)]
enum Fate {
    /// Chunk joins the parent's pending set.
    Merged,
    /// Chunk is a part of its own, or one of several chunks forming a part.
    Part(usize),
}

/// One bottom-up sweep with chunk threshold `t`. Returns labels for the
/// component nodes (indexed globally, `usize::MAX` elsewhere).
fn dissect(tree: &SpanningTree, children: &[Vec<usize>], degree: &[usize], t: f64) -> Vec<usize> {
    let n = degree.len();
    let mut fate = vec![Fate::Merged; n];
    let mut chunk = vec![0.0f64; n];
    let mut parts = 0usize;
    for &v in tree.order.iter().rev() {
        let mut pending = degree[v] as f64;
        let mut group: Vec<usize> = Vec::new();
        let mut group_vol = 0.0;
        for &c in &children[v] {
            if fate[c] != Fate::Merged {
                continue;
            }
            if pending + chunk[c] < t {
                pending += chunk[c];
            } else {
                group.push(c);
                group_vol += chunk[c];
                if group_vol >= t {
                    for &g in &group {
                        fate[g] = Fate::Part(parts);
                    }
                    parts += 1;
                    group.clear();
                    group_vol = 0.0;
                }
            }
        }
        pending += group_vol;
        if pending >= t || v == tree.root {
            fate[v] = Fate::Part(parts);
            parts += 1;
        } else {
            chunk[v] = pending;
        }
    }
    let mut label = vec![usize::MAX; n];
    for &v in &tree.order {
        label[v] = match fate[v] {
            Fate::Part(p) => p,
            Fate::Merged => label[tree.parent[v]],
        };
    }
    label
}

/// Dissects a random depth-first spanning tree of the largest component;
/// other nodes become singletons. Fails with [`Error::BoundViolated`] if the
/// result misses the guaranteed bound.
pub fn tree_dissect<R: Rng + ?Sized>(g: &MultiGraph, rng: &mut R) -> Result<TreeDissection> {
    tree_dissect_along(g, g, rng)
}

/// Like [`tree_dissect`], but the spanning tree is taken from the largest
/// component of `skeleton`, a spanning subgraph of `g` (such as its
/// background edges). Volumes and modularity are measured in `g`.
pub fn tree_dissect_along<R: Rng + ?Sized>(
    g: &MultiGraph,
    skeleton: &MultiGraph,
    rng: &mut R,
) -> Result<TreeDissection> {
    if g.edge_count() == 0 || skeleton.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if skeleton.node_count() != g.node_count() {
        return Err(Error::Precondition("skeleton must span the same nodes"));
    }
    let n = g.node_count();
    let component = skeleton.largest_component();
    let root = component[rng.random_range(0..component.len())];
    let tree = spanning_tree_from(skeleton, &skeleton.adjacency(), &component, root)?;
    let mut children = vec![Vec::new(); n];
    for &v in &tree.order[1..] {
        children[tree.parent[v]].push(v);
    }

    let vol = g.total_volume();
    let bound = lemma_bound(component.len(), g.max_degree(), vol);
    let base = sqrt(g.max_degree() as f64 * vol as f64);

    let mut best: Option<TreeDissection> = None;
    for scale in THRESHOLD_SCALES {
        let t = scale * base;
        let mut labels = dissect(&tree, &children, g.degrees(), t);
        let used = labels.iter().filter(|&&l| l != usize::MAX).max().map_or(0, |m| m + 1);
        for (fresh, l) in (used..).zip(labels.iter_mut().filter(|l| **l == usize::MAX)) {
            *l = fresh;
        }
        let partition = Partition::from_labels(labels);
        let report = modularity(g, &partition)?;
        if best.as_ref().is_none_or(|b| report.q > b.report.q) {
            best = Some(TreeDissection { partition, report, bound, threshold: t });
        }
    }
    let best = best.expect("at least one threshold");
    if best.report.q < bound - 1e-12 {
        return Err(Error::BoundViolated { q: best.report.q, bound });
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    fn path(n: usize) -> MultiGraph {
        MultiGraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    fn grid(side: usize) -> MultiGraph {
        let id = |r: usize, c: usize| r * side + c;
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                if c + 1 < side {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < side {
                    edges.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        MultiGraph::from_edges(side * side, edges).unwrap()
    }

    #[test]
    fn bound_formula() {
        let b = lemma_bound(100, 4, 400);
        assert!((b - (0.5 - 0.3 - 0.01)).abs() < 1e-12);
    }

    #[test]
    fn path_meets_bound_and_is_high() {
        let g = path(10_000);
        for seed in 0..5 {
            let d = tree_dissect(&g, &mut substream(seed, 0)).unwrap();
            assert!(d.report.q >= d.bound);
            assert!(d.report.q > 0.9);
        }
    }

    #[test]
    fn grid_meets_bound() {
        let g = grid(60);
        for seed in 0..5 {
            let d = tree_dissect(&g, &mut substream(seed, 0)).unwrap();
            assert!(d.report.q >= d.bound, "{} < {}", d.report.q, d.bound);
        }
    }

    #[test]
    fn isolated_nodes_become_singletons() {
        let mut edges: Vec<(usize, usize)> = (0..99).map(|i| (i, i + 1)).collect();
        edges.push((200, 201));
        let g = MultiGraph::from_edges(205, edges).unwrap();
        let d = tree_dissect(&g, &mut substream(3, 0)).unwrap();
        for v in 200..205 {
            for u in 0..100 {
                assert_ne!(d.partition.part_of(v), d.partition.part_of(u));
            }
        }
        assert_ne!(d.partition.part_of(200), d.partition.part_of(201));
    }

    #[test]
    fn cycle_is_cut_into_many_arcs() {
        let n = 5000usize;
        let g = MultiGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let d = tree_dissect(&g, &mut substream(0, 0)).unwrap();
        assert!(d.partition.num_parts() > 10);
        assert!(d.report.q > 0.9);
    }

    #[test]
    fn background_skeleton_on_noisy_abcd() {
        use crate::graph::Origin;
        use crate::{build_abcd, AbcdParams};
        let a = build_abcd(&AbcdParams::reference(20_000, 0.7), 1).unwrap();
        let background = a.graph.filter_edges(|o| o == Origin::Background);
        let d = tree_dissect_along(&a.graph, &background, &mut substream(1, 0)).unwrap();
        assert!(d.report.q >= d.bound);
        assert!(d.report.q > 0.1, "{}", d.report.q);
    }

    #[test]
    fn empty_graph_is_rejected() {
        assert_eq!(
            tree_dissect(&MultiGraph::empty(4), &mut substream(0, 0)).unwrap_err(),
            Error::EmptyGraph
        );
    }
}
