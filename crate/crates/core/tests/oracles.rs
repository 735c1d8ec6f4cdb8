//! Exhaustive-enumeration oracles on tiny instances.

use std::collections::BTreeMap;

use abcd_core::assignment::assign;
use abcd_core::clustering::louvain;
use abcd_core::rng::substream;
use abcd_core::sequences::{CommunitySizes, DegreeSequence};
use abcd_core::{modularity, MultiGraph, Partition};
use proptest::prelude::*;

/// All set partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn grow(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            prefix.push(label);
            grow(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), n, &mut out);
    out
}

/// Modularity scaled by `(2m)^2`, in exact integer arithmetic over node
/// pairs, with `A_vv` twice the number of loops at `v`.
fn scaled_modularity(n: usize, edges: &[(usize, usize)], labels: &[usize]) -> i64 {
    let mut a = vec![vec![0i64; n]; n];
    for &(u, v) in edges {
        if u == v {
            a[u][u] += 2;
        } else {
            a[u][v] += 1;
            a[v][u] += 1;
        }
    }
    let k: Vec<i64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: i64 = k.iter().sum();
    let mut total = 0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                total += two_m * a[i][j] - k[i] * k[j];
            }
        }
    }
    total
}

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 1..12)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modularity_matches_integer_oracle((n, edges) in graph_strategy()) {
        let g = MultiGraph::from_edges(n, edges.iter().copied()).unwrap();
        let two_m = 2.0 * edges.len() as f64;
        let mut best = f64::NEG_INFINITY;
        for labels in set_partitions(n) {
            let q = modularity(&g, &Partition::from_labels(labels.clone())).unwrap().q;
            let exact = scaled_modularity(n, &edges, &labels) as f64 / (two_m * two_m);
            prop_assert!((q - exact).abs() < 1e-12, "{} vs {}", q, exact);
            best = best.max(exact);
        }
        let found = louvain(&g, &mut substream(n as u64, 0)).unwrap();
        let q = modularity(&g, &found.partition).unwrap().q;
        prop_assert!(q <= best + 1e-12);
        prop_assert!(q >= -1e-12);
    }
}

#[test]
fn louvain_reaches_brute_force_optimum_on_small_examples() {
    let cases: [(usize, &[(usize, usize)]); 3] = [
        (6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]),
        (6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]),
        (3, &[(0, 1), (1, 2), (0, 2)]),
    ];
    for (n, edges) in cases {
        let g = MultiGraph::from_edges(n, edges.iter().copied()).unwrap();
        let two_m = 2.0 * edges.len() as f64;
        let best = set_partitions(n)
            .iter()
            .map(|l| scaled_modularity(n, edges, l) as f64 / (two_m * two_m))
            .fold(f64::NEG_INFINITY, f64::max);
        for seed in 0..10 {
            let p = louvain(&g, &mut substream(seed, 0)).unwrap().partition;
            assert!((modularity(&g, &p).unwrap().q - best).abs() < 1e-12);
        }
    }
}

/// Every labelling with the given community sizes in which each node's
/// community can absorb its internal degree.
fn admissible_assignments(degrees: &[usize], sizes: &[usize], xi: f64) -> Vec<Vec<usize>> {
    let n = degrees.len() as f64;
    let phi = 1.0 - sizes.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>();
    let ok = |w: usize, c: usize| (((1.0 - xi * phi) * w as f64 - 1e-9).ceil() as usize) < c;
    let mut out = Vec::new();
    let mut labels = vec![0; degrees.len()];
    fn fill(
        i: usize,
        labels: &mut Vec<usize>,
        left: &mut Vec<usize>,
        fits: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for j in 0..left.len() {
            if left[j] > 0 && fits(i, j) {
                left[j] -= 1;
                labels[i] = j;
                fill(i + 1, labels, left, fits, out);
                left[j] += 1;
            }
        }
    }
    let fits = |i: usize, j: usize| ok(degrees[i], sizes[j]);
    fill(0, &mut labels, &mut sizes.to_vec(), &fits, &mut out);
    out
}

/// Draws `runs` assignments and returns the chi-square statistic against the
/// uniform law on the enumerated support, plus the support size.
fn chi_square(degrees: &[usize], sizes: &[usize], xi: f64, runs: u64) -> (f64, usize) {
    let support = admissible_assignments(degrees, sizes, xi);
    let index: BTreeMap<Vec<usize>, usize> =
        support.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    assert_eq!(degrees.iter().sum::<usize>() % 2, 0);
    let w = DegreeSequence::from_draws(degrees.to_vec());
    let c = CommunitySizes::new(sizes.to_vec()).unwrap();
    let mut counts = vec![0u64; support.len()];
    let mut rng = substream(2024, 0);
    for _ in 0..runs {
        let a = assign(&w, &c, xi, &mut rng).unwrap();
        counts[index[&a.community_of]] += 1;
    }
    let expected = runs as f64 / support.len() as f64;
    let stat = counts.iter().map(|&k| (k as f64 - expected).powi(2) / expected).sum();
    (stat, support.len())
}

#[test]
fn two_community_assignment_is_uniform() {
    let (stat, support) = chi_square(&[3, 3, 1, 1, 1, 1], &[4, 2], 0.5, 100_000);
    assert_eq!(support, 6);
    // chi-square upper 0.001 quantile, 5 degrees of freedom
    assert!(stat < 20.515, "{stat}");
}

#[test]
fn three_community_assignment_is_uniform() {
    let (stat, support) = chi_square(&[3, 3, 2, 1, 1, 1, 1, 1, 1], &[4, 3, 2], 0.5, 100_000);
    assert_eq!(support, 150);
    // chi-square upper 0.001 quantile, 149 degrees of freedom
    assert!(stat < 208.086, "{stat}");
}

#[test]
fn equal_halves_admit_nothing() {
    assert!(admissible_assignments(&[3, 3, 1, 1, 1, 1], &[3, 3], 0.5).is_empty());
    let w = DegreeSequence::from_draws(vec![3, 3, 1, 1, 1, 1]);
    let c = CommunitySizes::new(vec![3, 3]).unwrap();
    assert!(assign(&w, &c, 0.5, &mut substream(0, 0)).is_err());
}
