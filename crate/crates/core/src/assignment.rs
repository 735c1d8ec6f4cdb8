//! Uniform sampling of admissible node-to-community assignments.
//!
//! Node `i` of degree `w_i` may join community `j` only if
//! `ceil((1 - xi * phi) * w_i) <= c_j - 1`. Nodes are placed from the largest
//! degree down; each goes to an eligible community with probability
//! proportional to its remaining free spots. Because communities are sorted by
//! size, the eligible set is a prefix that only grows as degrees shrink, and a
//! Fenwick tree over free capacities gives `O(log l)` draws.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math::{ceil, snap};
use crate::sequences::{CommunitySizes, DegreeSequence};

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    /// Community index (into the sorted sizes) of every node.
    pub community_of: Vec<usize>,
    pub phi: f64,
}

/// `phi = 1 - sum_j (c_j / n)^2`.
pub fn compute_phi(sizes: &CommunitySizes, n: usize) -> f64 {
    let n = n as f64;
    1.0 - sizes
        .as_slice()
        .iter()
        .map(|&c| {
            let f = c as f64 / n;
            f * f
        })
        .sum::<f64>()
}

/// Smallest community size that may host a node of degree `w`.
pub fn min_admissible_size(w: usize, xi: f64, phi: f64) -> usize {
    ceil(snap((1.0 - xi * phi) * w as f64)) as usize + 1
}

pub fn assign<R: Rng + ?Sized>(
    degrees: &DegreeSequence,
    sizes: &CommunitySizes,
    xi: f64,
    rng: &mut R,
) -> Result<Assignment> {
    let n = degrees.len();
    if sizes.total() != n {
        return Err(Error::Precondition("community sizes must sum to the node count"));
    }
    let c = sizes.as_slice();
    let phi = compute_phi(sizes, n);
    let mut free = Fenwick::from_counts(c);
    let mut community_of = vec![0; n];

    for (node, &w) in degrees.as_slice().iter().enumerate() {
        let need = min_admissible_size(w, xi, phi);
        let eligible = c.partition_point(|&size| size >= need);
        let spots = free.prefix(eligible);
        if spots == 0 {
            return Err(Error::Infeasible { node: Some(node) });
        }
        let target = rng.random_range(0..spots);
        let j = free.find(target);
        debug_assert!(j < eligible);
        free.decrement(j);
        community_of[node] = j;
    }
    Ok(Assignment { community_of, phi })
}

/// Checks admissibility of every node and the occupancy of every community.
pub fn is_admissible(
    a: &Assignment,
    degrees: &DegreeSequence,
    sizes: &CommunitySizes,
    xi: f64,
) -> bool {
    let c = sizes.as_slice();
    if a.community_of.len() != degrees.len() {
        return false;
    }
    let mut occupancy = vec![0usize; c.len()];
    for (&j, &w) in a.community_of.iter().zip(degrees.as_slice()) {
        if j >= c.len() || c[j] < min_admissible_size(w, xi, a.phi) {
            return false;
        }
        occupancy[j] += 1;
    }
    occupancy.as_slice() == c
}

/// Binary indexed tree over nonnegative counts.
struct Fenwick {
    tree: Vec<usize>,
}

impl Fenwick {
    fn from_counts(counts: &[usize]) -> Self {
        let mut tree = vec![0; counts.len() + 1];
        tree[1..].copy_from_slice(counts);
        for k in 1..tree.len() {
            let parent = k + (k & k.wrapping_neg());
            if parent < tree.len() {
                tree[parent] += tree[k];
            }
        }
        Fenwick { tree }
    }

    /// Sum of the first `len` counts.
    fn prefix(&self, len: usize) -> usize {
        let mut k = len;
        let mut acc = 0;
        while k > 0 {
            acc += self.tree[k];
            k &= k - 1;
        }
        acc
    }

    fn decrement(&mut self, i: usize) {
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] -= 1;
            k += k & k.wrapping_neg();
        }
    }

    /// Index `i` with `prefix(i) <= target < prefix(i + 1)`.
    fn find(&self, mut target: usize) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = if n == 0 { 0 } else { 1 << (usize::BITS - 1 - n.leading_zeros()) };
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= target {
                target -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        pos
    }
}
