//! Multigraphs, partitions and the full ABCD assembly.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::assignment::{assign, Assignment};
use crate::error::{Error, Result};
use crate::pairing::pair_points;
use crate::params::AbcdParams;
use crate::rng::{substream, BACKGROUND_STREAM, COMMUNITY_STREAM_BASE, PIPELINE_STREAM};
use crate::sequences::{community_sizes, degree_sequence, CommunitySizes, DegreeSequence};
use crate::weights::{split_weights, WeightSplit};

/// Which of the `l + 1` independent graphs an edge came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Origin {
    Community(u32),
    Background,
    /// Edges read from a file or built by hand.
    Unspecified,
}

/// Undirected multigraph on nodes `0..n`; loops and parallel edges allowed.
///
/// Edges are kept as `(u, v)` with `u <= v`, sorted lexicographically (ties by
/// origin). A loop adds 2 to its node's degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    origins: Vec<Origin>,
    degree: Vec<usize>,
}

impl MultiGraph {
    pub fn empty(n: usize) -> Self {
        MultiGraph { n, edges: Vec::new(), origins: Vec::new(), degree: vec![0; n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_origins(n, edges.into_iter().map(|(u, v)| (u, v, Origin::Unspecified)))
    }

    pub fn with_origins<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Origin)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::Domain("node count exceeds u32 ids"));
        }
        let mut tagged = Vec::new();
        for (u, v, o) in edges {
            if u >= n || v >= n {
                return Err(Error::Domain("edge endpoint outside the node range"));
            }
            let (a, b) = if u <= v { (u, v) } else { (v, u) };
            tagged.push((a as u32, b as u32, o));
        }
        Ok(Self::from_canonical(n, tagged))
    }

    /// `edges` already hold `u <= v` and valid endpoints.
    pub(crate) fn from_canonical(n: usize, mut tagged: Vec<(u32, u32, Origin)>) -> Self {
        tagged.sort_unstable();
        let mut degree = vec![0; n];
        let mut edges = Vec::with_capacity(tagged.len());
        let mut origins = Vec::with_capacity(tagged.len());
        for (u, v, o) in tagged {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            edges.push((u, v));
            origins.push(o);
        }
        MultiGraph { n, edges, origins, degree }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Number of edges, counting every parallel copy and loop once.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Sum of degrees over `nodes`.
    pub fn volume<I: IntoIterator<Item = usize>>(&self, nodes: I) -> usize {
        nodes.into_iter().map(|v| self.degree[v]).sum()
    }

    /// `vol(V) = 2|E|`.
    pub fn total_volume(&self) -> usize {
        2 * self.edges.len()
    }

    /// Loops plus surplus parallel copies.
    pub fn conflicts(&self) -> usize {
        let mut count = 0;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if u == v || (i > 0 && self.edges[i - 1] == (u, v)) {
                count += 1;
            }
        }
        count
    }

    pub fn is_simple(&self) -> bool {
        self.conflicts() == 0
    }

    /// Edges whose origin satisfies `keep`, on the same node set.
    pub fn filter_edges<F: Fn(Origin) -> bool>(&self, keep: F) -> MultiGraph {
        let tagged = self
            .edges
            .iter()
            .zip(&self.origins)
            .filter(|(_, &o)| keep(o))
            .map(|(&(u, v), &o)| (u, v, o))
            .collect();
        Self::from_canonical(self.n, tagged)
    }

    pub fn adjacency(&self) -> Adjacency {
        Adjacency::new(self)
    }

    /// Connected components (loops ignored), each sorted, ordered by their
    /// smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = DisjointSet::new(self.n);
        for &(u, v) in &self.edges {
            if u != v {
                dsu.union(u as usize, v as usize);
            }
        }
        let mut index_of_root = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let r = dsu.find(v);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = out.len();
                out.push(Vec::new());
            }
            out[index_of_root[r]].push(v);
        }
        out
    }

    /// The largest component; ties go to the one with the smallest node.
    pub fn largest_component(&self) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for c in self.components() {
            if c.len() > best.len() {
                best = c;
            }
        }
        best
    }

    pub(crate) fn into_tagged(self) -> Vec<(u32, u32, Origin)> {
        self.edges.into_iter().zip(self.origins).map(|((u, v), o)| (u, v, o)).collect()
    }
}

/// Compressed neighbor lists. A node's list has exactly `degree` entries: a
/// loop at `v` lists `v` twice.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    fn new(g: &MultiGraph) -> Self {
        let mut offsets = vec![0; g.n + 1];
        for v in 0..g.n {
            offsets[v + 1] = offsets[v] + g.degree[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; g.total_volume()];
        for &(u, v) in &g.edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        Adjacency { offsets, targets }
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

#[derive(Clone, Debug)]
pub(crate) struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut node: usize) -> usize {
        let mut root = node;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[node] != root {
            let next = self.parent[node];
            self.parent[node] = root;
            node = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.rank[a] < self.rank[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
        true
    }
}

/// Depth-first spanning tree of one component.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    pub root: usize,
    /// Nodes in discovery (pre-)order; `order[0] == root`.
    pub order: Vec<usize>,
    /// `parent[v]` for tree nodes other than the root, `usize::MAX` elsewhere.
    pub parent: Vec<usize>,
}

impl SpanningTree {
    /// `(parent, child)` pairs in discovery order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.order[1..].iter().map(|&v| (self.parent[v], v)).collect()
    }
}

/// Spanning tree of `component` rooted at a uniformly random member.
pub fn spanning_tree<R: Rng + ?Sized>(
    g: &MultiGraph,
    component: &[usize],
    rng: &mut R,
) -> Result<SpanningTree> {
    if component.is_empty() {
        return Err(Error::NotConnected);
    }
    let root = component[rng.random_range(0..component.len())];
    spanning_tree_from(g, &g.adjacency(), component, root)
}

pub(crate) fn spanning_tree_from(
    g: &MultiGraph,
    adj: &Adjacency,
    component: &[usize],
    root: usize,
) -> Result<SpanningTree> {
    let mut inside = vec![false; g.n];
    for &v in component {
        inside[v] = true;
    }
    let mut parent = vec![usize::MAX; g.n];
    let mut seen = vec![false; g.n];
    let mut order = Vec::with_capacity(component.len());
    // Explicit DFS stack of (node, next neighbor slot).
    let mut stack = vec![(root, 0usize)];
    seen[root] = true;
    order.push(root);
    while let Some(top) = stack.last_mut() {
        let (v, slot) = *top;
        let nbrs = adj.neighbors(v);
        if slot == nbrs.len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let u = nbrs[slot] as usize;
        if inside[u] && !seen[u] {
            seen[u] = true;
            parent[u] = v;
            order.push(u);
            stack.push((u, 0));
        }
    }
    if order.len() != component.len() {
        return Err(Error::NotConnected);
    }
    Ok(SpanningTree { root, order, parent })
}

/// Assignment of every node to a part, with part ids compacted to
/// `0..num_parts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    part_of: Vec<usize>,
    num_parts: usize,
}

impl Partition {
    /// Relabels arbitrary ids to `0..k`, preserving their relative order.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let mut ids = labels.clone();
        ids.sort_unstable();
        ids.dedup();
        if ids.last().is_none_or(|&m| m + 1 == ids.len()) {
            return Partition { num_parts: ids.len(), part_of: labels };
        }
        let part_of = labels.iter().map(|l| ids.binary_search(l).unwrap()).collect();
        Partition { part_of, num_parts: ids.len() }
    }

    pub fn whole(n: usize) -> Self {
        Partition { part_of: vec![0; n], num_parts: usize::from(n > 0) }
    }

    pub fn singletons(n: usize) -> Self {
        Partition { part_of: (0..n).collect(), num_parts: n }
    }

    pub fn node_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn num_parts(&self) -> usize {
        self.num_parts
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.part_of
    }

    pub fn parts(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.num_parts];
        for (v, &p) in self.part_of.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_parts];
        for &p in &self.part_of {
            sizes[p] += 1;
        }
        sizes
    }

    /// Equal up to renaming parts.
    pub fn same_as(&self, other: &Partition) -> bool {
        if self.part_of.len() != other.part_of.len() || self.num_parts != other.num_parts {
            return false;
        }
        let mut fwd = vec![usize::MAX; self.num_parts];
        for (&a, &b) in self.part_of.iter().zip(&other.part_of) {
            if fwd[a] == usize::MAX {
                fwd[a] = b;
            } else if fwd[a] != b {
                return false;
            }
        }
        // Same part count and a total function between them: it is a bijection
        // iff it is injective.
        let mut hit = vec![false; self.num_parts];
        fwd.iter().all(|&b| !core::mem::replace(&mut hit[b], true))
    }
}

/// One generated ABCD graph with everything needed to analyse it.
#[derive(Debug, Clone)]
pub struct Abcd {
    pub params: AbcdParams,
    pub graph: MultiGraph,
    /// Ground truth: node -> community (communities by nonincreasing size).
    pub partition: Partition,
    pub split: WeightSplit,
    pub degrees: DegreeSequence,
    pub sizes: CommunitySizes,
    pub assignment: Assignment,
}

/// Runs the whole generator for `p` from master seed `seed`.
pub fn build_abcd(p: &AbcdParams, seed: u64) -> Result<Abcd> {
    let p = p.validate()?;
    let mut rng = substream(seed, PIPELINE_STREAM);
    let degrees = degree_sequence(&p, &mut rng)?;
    let sizes = community_sizes(&p, &mut rng)?;
    let assignment = assign(&degrees, &sizes, p.xi, &mut rng)?;
    let split = split_weights(&degrees, &assignment, p.xi, &mut rng);

    let members = members_of(&assignment, sizes.ell());
    let mut tagged = Vec::with_capacity(degrees.total() / 2);
    for (j, edges) in pair_communities(&members, &split.y, seed)?.into_iter().enumerate() {
        tagged.extend(edges.into_iter().map(|(u, v)| (u, v, Origin::Community(j as u32))));
    }
    let mut bg = substream(seed, BACKGROUND_STREAM);
    let background = pair_points(&split.z, &mut bg)?;
    tagged.extend(background.into_iter().map(|(u, v)| (u, v, Origin::Background)));

    let graph = MultiGraph::from_canonical(p.n, tagged);
    let partition = Partition::from_labels(assignment.community_of.clone());
    Ok(Abcd { params: p, graph, partition, split, degrees, sizes, assignment })
}

/// Members of every community, ascending.
pub fn members_of(assignment: &Assignment, ell: usize) -> Vec<Vec<usize>> {
    let mut members = vec![Vec::new(); ell];
    for (v, &j) in assignment.community_of.iter().enumerate() {
        members[j].push(v);
    }
    members
}

/// Pairs every community graph on its own stream; edges use global ids with
/// `u <= v`. Runs on the rayon pool when the `parallel` feature is enabled.
pub fn pair_communities(
    members: &[Vec<usize>],
    y: &[usize],
    seed: u64,
) -> Result<Vec<Vec<(u32, u32)>>> {
    let one = |(j, nodes): (usize, &Vec<usize>)| -> Result<Vec<(u32, u32)>> {
        let weights: Vec<usize> = nodes.iter().map(|&v| y[v]).collect();
        let mut rng = substream(seed, COMMUNITY_STREAM_BASE + j as u64);
        let local = pair_points(&weights, &mut rng)?;
        Ok(local
            .into_iter()
            .map(|(a, b)| {
                let (u, v) = (nodes[a as usize] as u32, nodes[b as usize] as u32);
                if u <= v {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect())
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        members.par_iter().enumerate().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        members.iter().enumerate().map(one).collect()
    }
}
