//! Splitting degrees into community and background parts.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::assignment::Assignment;
use crate::math::{ceil, floor, snap};
use crate::sequences::DegreeSequence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSplit {
    /// Community degree of every node.
    pub y: Vec<usize>,
    /// Background degree of every node.
    pub z: Vec<usize>,
    /// Leader (largest degree, lowest index on ties) of every community.
    pub leader_of: Vec<usize>,
}

/// Rounds `x >= 0` down with probability `1 - frac(x)` and up otherwise.
pub fn stochastic_round<R: Rng + ?Sized>(x: f64, rng: &mut R) -> usize {
    let x = snap(x);
    let base = floor(x);
    let frac = x - base;
    let up = frac > 0.0 && rng.random::<f64>() < frac;
    base as usize + usize::from(up)
}

/// Community degrees `y_i ~ round((1 - xi) w_i)`, with each community leader
/// rounded so that the community's total is even.
pub fn split_weights<R: Rng + ?Sized>(
    degrees: &DegreeSequence,
    assignment: &Assignment,
    xi: f64,
    rng: &mut R,
) -> WeightSplit {
    let w = degrees.as_slice();
    let ell = assignment.community_of.iter().map(|&j| j + 1).max().unwrap_or(0);
    let mut leader_of = vec![usize::MAX; ell];
    // Degrees are sorted, so the first member seen is the leader.
    for (node, &j) in assignment.community_of.iter().enumerate() {
        let lead = &mut leader_of[j];
        if *lead == usize::MAX || w[node] > w[*lead] {
            *lead = node;
        }
    }

    let mut y = vec![0; w.len()];
    let mut parity = vec![0usize; ell];
    for (node, &j) in assignment.community_of.iter().enumerate() {
        if leader_of[j] != node {
            y[node] = stochastic_round((1.0 - xi) * w[node] as f64, rng);
            parity[j] ^= y[node] & 1;
        }
    }

    for (j, &lead) in leader_of.iter().enumerate() {
        if lead == usize::MAX {
            continue;
        }
        let target = snap((1.0 - xi) * w[lead] as f64);
        let (lo, hi) = (floor(target) as usize, ceil(target) as usize);
        y[lead] = if lo != hi {
            if (lo & 1) == parity[j] {
                lo
            } else {
                hi
            }
        } else if (lo & 1) == parity[j] {
            lo
        } else {
            // Integral target with the wrong parity: move by one, either way
            // unless that would leave [0, w].
            let can_down = lo > 0;
            let can_up = lo < w[lead];
            match (can_down, can_up) {
                (true, true) => {
                    if rng.random::<bool>() {
                        lo + 1
                    } else {
                        lo - 1
                    }
                }
                (true, false) => lo - 1,
                (false, true) => lo + 1,
                (false, false) => lo,
            }
        };
    }

    let z = w.iter().zip(&y).map(|(&wi, &yi)| wi - yi).collect();
    WeightSplit { y, z, leader_of }
}
