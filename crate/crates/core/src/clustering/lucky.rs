//! Reassigning degree-one nodes whose only edge left their community.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, Partition};
use crate::weights::WeightSplit;

/// Degree-one nodes whose single edge is a background edge.
pub fn lucky_nodes(g: &MultiGraph, split: &WeightSplit) -> Result<Vec<usize>> {
    if split.z.len() != g.node_count() {
        return Err(Error::Precondition("weight split does not match the graph"));
    }
    Ok((0..g.node_count()).filter(|&v| g.degree(v) == 1 && split.z[v] == 1).collect())
}

/// Moves every lucky node into its neighbour's ground-truth community. Two
/// lucky nodes joined to each other both go to the lower community id.
pub fn lucky_repartition(
    g: &MultiGraph,
    ground_truth: &Partition,
    split: &WeightSplit,
) -> Result<Partition> {
    if ground_truth.node_count() != g.node_count() {
        return Err(Error::Precondition("partition does not match the graph"));
    }
    let lucky = lucky_nodes(g, split)?;
    let mut is_lucky = alloc::vec![false; g.node_count()];
    for &v in &lucky {
        is_lucky[v] = true;
    }
    let adj = g.adjacency();
    let mut labels = ground_truth.labels().to_vec();
    for &v in &lucky {
        let u = adj.neighbors(v)[0] as usize;
        labels[v] = if is_lucky[u] {
            ground_truth.part_of(u).min(ground_truth.part_of(v))
        } else {
            ground_truth.part_of(u)
        };
    }
    Ok(Partition::from_labels(labels))
}
