//! Partition agreement: adjusted Rand index and adjusted mutual information.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Partition;
use crate::math::{exp, log};

/// Both agreement scores for one pair of partitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityScores {
    pub ari: f64,
    pub ami: f64,
}

impl SimilarityScores {
    pub fn between(a: &Partition, b: &Partition) -> Result<Self> {
        Ok(SimilarityScores { ari: ari(a, b)?, ami: ami(a, b)? })
    }
}

struct Contingency {
    n: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// Nonzero cells `(row, col, count)`.
    cells: Vec<(usize, usize, usize)>,
}

impl Contingency {
    fn new(a: &Partition, b: &Partition) -> Result<Self> {
        if a.node_count() != b.node_count() {
            return Err(Error::Precondition("partitions cover different node sets"));
        }
        let mut pairs: Vec<(usize, usize)> =
            a.labels().iter().copied().zip(b.labels().iter().copied()).collect();
        pairs.sort_unstable();
        let mut cells: Vec<(usize, usize, usize)> = Vec::new();
        for (r, c) in pairs {
            match cells.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += 1,
                _ => cells.push((r, c, 1)),
            }
        }
        let mut rows = vec![0; a.num_parts()];
        let mut cols = vec![0; b.num_parts()];
        for &(r, c, k) in &cells {
            rows[r] += k;
            cols[c] += k;
        }
        Ok(Contingency { n: a.node_count(), rows, cols, cells })
    }
}

fn pairs(k: usize) -> f64 {
    let k = k as f64;
    k * (k - 1.0) / 2.0
}

/// Adjusted Rand index; 1 when the partitions coincide.
pub fn ari(a: &Partition, b: &Partition) -> Result<f64> {
    let t = Contingency::new(a, b)?;
    if a.same_as(b) {
        return Ok(1.0);
    }
    let index: f64 = t.cells.iter().map(|&(_, _, k)| pairs(k)).sum();
    let row: f64 = t.rows.iter().map(|&k| pairs(k)).sum();
    let col: f64 = t.cols.iter().map(|&k| pairs(k)).sum();
    let expected = row * col / pairs(t.n);
    let max = (row + col) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

fn entropy(sizes: &[usize], n: usize) -> f64 {
    let n = n as f64;
    sizes
        .iter()
        .filter(|&&k| k > 0)
        .map(|&k| {
            let p = k as f64 / n;
            -p * log(p)
        })
        .sum()
}

/// Adjusted mutual information with arithmetic-mean normalisation and the
/// exact hypergeometric expectation.
pub fn ami(a: &Partition, b: &Partition) -> Result<f64> {
    let t = Contingency::new(a, b)?;
    if a.same_as(b) {
        return Ok(1.0);
    }
    if t.rows.len() == 1 || t.cols.len() == 1 {
        return Ok(0.0);
    }
    let n = t.n;
    let nf = n as f64;
    let mi: f64 = t
        .cells
        .iter()
        .map(|&(r, c, k)| {
            let k = k as f64;
            k / nf * log(nf * k / (t.rows[r] as f64 * t.cols[c] as f64))
        })
        .sum();

    let mut ln_fact = vec![0.0f64; n + 1];
    for i in 1..=n {
        ln_fact[i] = ln_fact[i - 1] + log(i as f64);
    }
    let mut emi = 0.0;
    for &ai in &t.rows {
        for &bj in &t.cols {
            let lo = (ai + bj).saturating_sub(n).max(1);
            let hi = ai.min(bj);
            let fixed = ln_fact[ai] + ln_fact[bj] + ln_fact[n - ai] + ln_fact[n - bj] - ln_fact[n];
            for nij in lo..=hi {
                let x = nij as f64;
                let ln_p = fixed
                    - ln_fact[nij]
                    - ln_fact[ai - nij]
                    - ln_fact[bj - nij]
                    - ln_fact[n + nij - ai - bj];
                emi += x / nf * log(nf * x / (ai as f64 * bj as f64)) * exp(ln_p);
            }
        }
    }
    let mean_h = (entropy(&t.rows, n) + entropy(&t.cols, n)) / 2.0;
    let mut denom = mean_h - emi;
    if denom.abs() < f64::EPSILON {
        denom = f64::EPSILON.copysign(denom);
    }
    Ok((mi - emi) / denom)
}
