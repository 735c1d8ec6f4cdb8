//! Two-phase Louvain modularity optimisation on weighted multigraphs.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Partition};

const EPS: f64 = 1e-12;

/// Undirected weighted graph in compressed form. `self_loop[v]` holds the
/// diagonal entry `A_vv` (twice the loop weight) so that
/// `strength[v] = sum_u A_vu` and `total = sum_v strength[v] = 2m`.
#[derive(Debug, Clone)]
pub(crate) struct WeightedGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    self_loop: Vec<f64>,
    strength: Vec<f64>,
    total: f64,
}

impl WeightedGraph {
    /// `edges` are `(u, v, w)` with each undirected edge listed once.
    fn from_triples(n: usize, edges: impl IntoIterator<Item = (u32, u32, f64)>) -> Self {
        let mut self_loop = vec![0.0; n];
        let mut directed: Vec<(u32, u32, f64)> = Vec::new();
        for (u, v, w) in edges {
            if u == v {
                self_loop[u as usize] += 2.0 * w;
            } else {
                directed.push((u, v, w));
                directed.push((v, u, w));
            }
        }
        directed.sort_unstable_by_key(|a| (a.0, a.1));
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(directed.len());
        let mut weights: Vec<f64> = Vec::with_capacity(directed.len());
        let mut last: Option<(u32, u32)> = None;
        for (u, v, w) in directed {
            if last == Some((u, v)) {
                *weights.last_mut().unwrap() += w;
            } else {
                targets.push(v);
                weights.push(w);
                offsets[u as usize + 1] += 1;
                last = Some((u, v));
            }
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut strength = self_loop.clone();
        for v in 0..n {
            strength[v] += weights[offsets[v]..offsets[v + 1]].iter().sum::<f64>();
        }
        let total = strength.iter().sum();
        WeightedGraph { offsets, targets, weights, self_loop, strength, total }
    }

    pub(crate) fn from_multigraph(g: &MultiGraph, edge_weights: Option<&[f64]>) -> Self {
        let triples = g.edges().iter().enumerate().map(|(i, &(u, v))| {
            (u, v, edge_weights.map_or(1.0, |w| w[i]))
        });
        Self::from_triples(g.node_count(), triples)
    }

    fn len(&self) -> usize {
        self.strength.len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.targets[r.clone()].iter().map(|&t| t as usize).zip(self.weights[r].iter().copied())
    }

    /// Weighted modularity of `community` (compact ids).
    fn modularity(&self, community: &[usize]) -> f64 {
        let k = community.iter().copied().max().map_or(0, |m| m + 1);
        let mut inside = vec![0.0; k];
        let mut tot = vec![0.0; k];
        for v in 0..self.len() {
            let c = community[v];
            tot[c] += self.strength[v];
            inside[c] += self.self_loop[v];
            for (u, w) in self.neighbors(v) {
                if community[u] == c {
                    inside[c] += w;
                }
            }
        }
        inside
            .iter()
            .zip(&tot)
            .map(|(&i, &t)| i / self.total - (t / self.total) * (t / self.total))
            .sum()
    }

    /// Collapses communities into single nodes.
    fn aggregate(&self, community: &[usize], k: usize) -> WeightedGraph {
        let mut triples = Vec::new();
        for v in 0..self.len() {
            let cv = community[v] as u32;
            if self.self_loop[v] != 0.0 {
                triples.push((cv, cv, self.self_loop[v] / 2.0));
            }
            for (u, w) in self.neighbors(v) {
                if v < u {
                    let cu = community[u] as u32;
                    triples.push((cv.min(cu), cv.max(cu), w));
                }
            }
        }
        WeightedGraph::from_triples(k, triples)
    }
}

/// Local moving phase. Returns compact community ids and whether any node
/// moved.
fn local_moving<R: Rng + ?Sized>(g: &WeightedGraph, rng: &mut R) -> (Vec<usize>, bool) {
    let n = g.len();
    let mut community: Vec<usize> = (0..n).collect();
    let mut tot = g.strength.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut link = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut any_move = false;
    if g.total <= 0.0 {
        return (community, false);
    }
    loop {
        let mut moved = false;
        for &v in &order {
            let own = community[v];
            let k_v = g.strength[v];
            for (u, w) in g.neighbors(v) {
                let c = community[u];
                if link[c] == 0.0 {
                    touched.push(c);
                }
                link[c] += w;
            }
            tot[own] -= k_v;
            let gain = |c: usize, link: &[f64]| link[c] - k_v * tot[c] / g.total;
            let own_gain = gain(own, &link);
            let mut best = own;
            let mut best_gain = own_gain;
            for &c in &touched {
                let gc = gain(c, &link);
                if gc > best_gain + EPS || ((gc - best_gain).abs() <= EPS && c < best) {
                    best = c;
                    best_gain = gc;
                }
            }
            if best != own && best_gain <= own_gain + EPS {
                best = own;
            }
            tot[best] += k_v;
            if best != own {
                community[v] = best;
                moved = true;
                any_move = true;
            }
            for &c in &touched {
                link[c] = 0.0;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
    }
    let k = compact(&mut community);
    let _ = k;
    (community, any_move)
}

/// Renumbers ids to `0..k` by first appearance; returns `k`.
fn compact(ids: &mut [usize]) -> usize {
    let mut map = vec![usize::MAX; ids.len()];
    let mut next = 0;
    for id in ids.iter_mut() {
        if map[*id] == usize::MAX {
            map[*id] = next;
            next += 1;
        }
        *id = map[*id];
    }
    next
}

/// Final partition plus the modularity reached after every level.
#[derive(Debug, Clone)]
pub struct LouvainOutcome {
    pub partition: Partition,
    /// Modularity of the level partitions, starting from all singletons.
    pub level_modularity: Vec<f64>,
}

pub(crate) fn run_louvain<R: Rng + ?Sized>(g: &WeightedGraph, rng: &mut R) -> LouvainOutcome {
    let n = g.len();
    let mut node_comm: Vec<usize> = (0..n).collect();
    let mut level_modularity = vec![g.modularity(&node_comm)];
    let mut current = g.clone();
    loop {
        let (comm, moved) = local_moving(&current, rng);
        if !moved {
            break;
        }
        let k = comm.iter().copied().max().map_or(0, |m| m + 1);
        for c in node_comm.iter_mut() {
            *c = comm[*c];
        }
        level_modularity.push(current.modularity(&comm));
        if k == current.len() {
            break;
        }
        current = current.aggregate(&comm, k);
    }
    LouvainOutcome { partition: Partition::from_labels(node_comm), level_modularity }
}

/// Multi-level Louvain on the unweighted multigraph.
pub fn louvain<R: Rng + ?Sized>(g: &MultiGraph, rng: &mut R) -> Result<LouvainOutcome> {
    louvain_weighted(g, None, rng)
}

/// Multi-level Louvain with one weight per edge of `g` (all 1 when `None`).
pub fn louvain_weighted<R: Rng + ?Sized>(
    g: &MultiGraph,
    edge_weights: Option<&[f64]>,
    rng: &mut R,
) -> Result<LouvainOutcome> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if edge_weights.is_some_and(|w| w.len() != g.edge_count()) {
        return Err(Error::Precondition("one weight per edge"));
    }
    Ok(run_louvain(&WeightedGraph::from_multigraph(g, edge_weights), rng))
}

/// Only the first local-moving phase: the partition ECG builds its consensus on.
pub fn louvain_level_one<R: Rng + ?Sized>(g: &MultiGraph, rng: &mut R) -> Result<Partition> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (comm, _) = local_moving(&WeightedGraph::from_multigraph(g, None), rng);
    Ok(Partition::from_labels(comm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modularity::modularity;
    use crate::rng::substream;
    use crate::{build_abcd, AbcdParams};

    fn two_triangles() -> MultiGraph {
        MultiGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn separates_disjoint_triangles() {
        for seed in 0..20 {
            let out = louvain(&two_triangles(), &mut substream(seed, 0)).unwrap();
            assert!(out.partition.same_as(&Partition::from_labels(vec![0, 0, 0, 1, 1, 1])));
            let q = modularity(&two_triangles(), &out.partition).unwrap().q;
            assert!((q - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn single_triangle_stays_whole() {
        let g = MultiGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        for seed in 0..20 {
            let out = louvain(&g, &mut substream(seed, 0)).unwrap();
            assert_eq!(out.partition.num_parts(), 1);
        }
    }

    #[test]
    fn empty_graph_is_rejected() {
        assert_eq!(
            louvain(&MultiGraph::empty(3), &mut substream(0, 0)).unwrap_err(),
            Error::EmptyGraph
        );
    }

    #[test]
    fn weighted_modularity_agrees_with_unweighted_report() {
        let a = build_abcd(&AbcdParams::reference(1000, 0.3), 4).unwrap();
        let wg = WeightedGraph::from_multigraph(&a.graph, None);
        let q = modularity(&a.graph, &a.partition).unwrap().q;
        assert!((wg.modularity(a.partition.labels()) - q).abs() < 1e-12);
    }

    #[test]
    fn levels_never_lose_modularity() {
        for seed in 0..5 {
            let a = build_abcd(&AbcdParams::reference(3000, 0.5), seed).unwrap();
            let out = louvain(&a.graph, &mut substream(seed, 1)).unwrap();
            assert!(out.level_modularity.windows(2).all(|w| w[1] >= w[0] - 1e-12));
            let q = modularity(&a.graph, &out.partition).unwrap().q;
            assert!((q - out.level_modularity.last().unwrap()).abs() < 1e-9);
            assert!(q >= 0.0);
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = build_abcd(&AbcdParams::reference(2000, 0.4), 8).unwrap();
        let x = louvain(&a.graph, &mut substream(1, 0)).unwrap();
        let y = louvain(&a.graph, &mut substream(1, 0)).unwrap();
        assert_eq!(x.partition, y.partition);
    }
}
