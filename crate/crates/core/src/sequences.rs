//! Degree and community-size sequences.

use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::params::AbcdParams;
use crate::powerlaw::TruncatedPowerLaw;

/// Node degrees `w_1 >= w_2 >= ... >= w_n` with an even sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Sorts raw draws nonincreasingly and, if their sum is odd, lowers one
    /// node of the largest degree by one.
    pub fn from_draws(mut draws: Vec<usize>) -> Self {
        draws.sort_unstable_by(|a, b| b.cmp(a));
        let total: usize = draws.iter().sum();
        if total % 2 == 1 {
            // Any maximum-degree node will do; after the decrement the last of
            // them keeps the order sorted.
            let max = draws[0];
            let last_max = draws.partition_point(|&w| w == max) - 1;
            draws[last_max] -= 1;
        }
        DegreeSequence(draws)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

/// Community sizes `c_1 >= c_2 >= ... >= c_l` summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunitySizes(Vec<usize>);

impl CommunitySizes {
    /// Wraps sizes that are already known to sum to the node count.
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Domain("community sizes must be positive"));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CommunitySizes(sizes))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Number of communities `l`.
    pub fn ell(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub fn degree_distribution(p: &AbcdParams) -> Result<TruncatedPowerLaw> {
    TruncatedPowerLaw::new(p.gamma, p.delta, p.max_degree(), p.variant)
}

pub fn community_size_distribution(p: &AbcdParams) -> Result<TruncatedPowerLaw> {
    TruncatedPowerLaw::new(p.beta, p.s, p.max_community(), p.variant)
}

/// `n` i.i.d. degrees with the parity fix applied.
pub fn degree_sequence<R: Rng + ?Sized>(p: &AbcdParams, rng: &mut R) -> Result<DegreeSequence> {
    let dist = degree_distribution(p)?;
    Ok(DegreeSequence::from_draws(dist.sample(rng, p.n)))
}

/// Draws community sizes until they cover `n` nodes, then trims the overshoot.
pub fn community_sizes<R: Rng + ?Sized>(p: &AbcdParams, rng: &mut R) -> Result<CommunitySizes> {
    if p.n < p.s {
        return Err(Error::Infeasible { node: None });
    }
    let dist = community_size_distribution(p)?;
    let mut sizes = Vec::new();
    let mut total = 0;
    while total < p.n {
        let z = dist.sample_one(rng);
        sizes.push(z);
        total += z;
    }
    close_sizes(sizes, p.n, p.s, rng)
}

/// Trims a draw sequence whose last element pushed the total past `n`.
///
/// With overshoot `k` and last size `z`: nothing happens when `k = 0`; the last
/// community shrinks to `z - k` when that is still at least `s`; otherwise it
/// is removed and `z - k` distinct earlier communities, chosen uniformly,
/// grow by one. If fewer than `z - k` earlier communities exist, the extra
/// nodes are spread as evenly as possible.
pub fn close_sizes<R: Rng + ?Sized>(
    mut sizes: Vec<usize>,
    n: usize,
    s: usize,
    rng: &mut R,
) -> Result<CommunitySizes> {
    let total: usize = sizes.iter().sum();
    let z = *sizes.last().ok_or(Error::Infeasible { node: None })?;
    if total < n || total - z >= n {
        return Err(Error::Domain("only the last size may cross the node count"));
    }
    let k = total - n;
    if k > 0 {
        let rest = z - k;
        if rest >= s {
            *sizes.last_mut().unwrap() = rest;
        } else {
            sizes.pop();
            let m = sizes.len();
            if m == 0 {
                return Err(Error::Infeasible { node: None });
            }
            let (whole, extra) = (rest / m, rest % m);
            if whole > 0 {
                sizes.iter_mut().for_each(|c| *c += whole);
            }
            for i in index::sample(rng, m, extra) {
                sizes[i] += 1;
            }
        }
    }
    CommunitySizes::new(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn odd_sum_decrements_one_max_degree_node() {
        let d = DegreeSequence::from_draws(alloc::vec![3, 3, 3]);
        assert_eq!(d.as_slice(), &[3, 3, 2]);
        let d = DegreeSequence::from_draws(alloc::vec![2, 4]);
        assert_eq!(d.as_slice(), &[4, 2]);
        let d = DegreeSequence::from_draws(alloc::vec![5, 9, 5]);
        assert_eq!(d.as_slice(), &[8, 5, 5]);
    }

    #[test]
    fn resizes_last_community_when_large_enough() {
        let mut rng = substream(1, 0);
        let c = close_sizes(alloc::vec![50, 40, 15], 100, 10, &mut rng).unwrap();
        assert_eq!(c.as_slice(), &[50, 40, 10]);
        assert_eq!(c.total(), 100);
    }

    #[test]
    fn redistributes_when_remainder_is_too_small() {
        // 98 nodes placed, last draw z = 5 overshoots by k = 3, z - k = 2 < s = 4.
        let before = [30usize, 30, 20, 18];
        let mut seen = alloc::collections::BTreeSet::new();
        for seed in 0..200 {
            let mut rng = substream(seed, 0);
            let c = close_sizes(alloc::vec![30, 30, 20, 18, 5], 100, 4, &mut rng).unwrap();
            assert_eq!(c.total(), 100);
            assert_eq!(c.ell(), 4);
            // The result is `before` with exactly two distinct entries incremented.
            let mut matched = None;
            for i in 0..4 {
                for j in i + 1..4 {
                    let mut v = before.to_vec();
                    v[i] += 1;
                    v[j] += 1;
                    v.sort_unstable_by(|a, b| b.cmp(a));
                    if v == c.as_slice() {
                        matched = Some(v);
                    }
                }
            }
            seen.insert(matched.expect("two distinct communities grow by one"));
        }
        // {30,30}, {30,20}, {30,18}, {20,18} are all reachable.
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn exact_fit_keeps_everything() {
        let mut rng = substream(1, 0);
        let c = close_sizes(alloc::vec![60, 40], 100, 10, &mut rng).unwrap();
        assert_eq!(c.as_slice(), &[60, 40]);
    }

    #[test]
    fn too_few_nodes_for_one_community() {
        let p = AbcdParams { n: 40, ..AbcdParams::reference(1000, 0.2) };
        assert_eq!(
            community_sizes(&p, &mut substream(1, 0)),
            Err(Error::Infeasible { node: None })
        );
    }

    #[test]
    fn sequences_hold_their_invariants_across_seeds() {
        let p = AbcdParams::reference(1000, 0.2);
        let (d_max, s_max) = (p.max_degree(), p.max_community());
        for seed in 0..1000 {
            let mut rng = substream(seed, 0);
            let w = degree_sequence(&p, &mut rng).unwrap();
            assert_eq!(w.total() % 2, 0);
            assert!(w.as_slice().windows(2).all(|x| x[0] >= x[1]));
            let below = w.as_slice().iter().filter(|&&x| x < p.delta).count();
            assert!(below <= 1);
            assert!(w.as_slice().iter().all(|&x| x + 1 >= p.delta && x <= d_max));

            let c = community_sizes(&p, &mut rng).unwrap();
            assert_eq!(c.total(), p.n);
            assert!(c.as_slice().iter().all(|&x| x >= p.s && x < s_max + p.s));
            assert!(c.as_slice().windows(2).all(|x| x[0] >= x[1]));
        }
    }

    #[test]
    fn same_seed_same_sequences() {
        let p = AbcdParams::reference(5000, 0.2);
        let a = degree_sequence(&p, &mut substream(9, 0)).unwrap();
        let b = degree_sequence(&p, &mut substream(9, 0)).unwrap();
        assert_eq!(a, b);
        let a = community_sizes(&p, &mut substream(9, 0)).unwrap();
        let b = community_sizes(&p, &mut substream(9, 0)).unwrap();
        assert_eq!(a, b);
    }
}
