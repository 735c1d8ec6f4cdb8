//! Truncated power laws on integer supports.
//!
//! Both variants are tabulated at construction: the normalized mass of every
//! support point, its upper tail and its cumulative sum. Sampling inverts the
//! cumulative table with a binary search, so draws are exact up to double
//! precision and cost `O(log(hi - lo))`.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::math::{pow, KahanSum};
use crate::params::Variant;

#[derive(Debug, Clone)]
pub struct TruncatedPowerLaw {
    exponent: f64,
    lo: usize,
    hi: usize,
    variant: Variant,
    pmf: Vec<f64>,
    /// `tail[i] = P(X >= lo + i)`
    tail: Vec<f64>,
    /// `cdf[i] = P(X <= lo + i)`, with the last entry forced to 1.
    cdf: Vec<f64>,
}

impl TruncatedPowerLaw {
    pub fn new(exponent: f64, lo: usize, hi: usize, variant: Variant) -> Result<Self> {
        if exponent.is_nan() || exponent <= 1.0 || exponent.is_infinite() {
            return Err(Error::Domain("power-law exponent must exceed 1"));
        }
        if lo == 0 || lo > hi {
            return Err(Error::Domain("power-law support must satisfy 1 <= lo <= hi"));
        }
        let pmf: Vec<f64> = match variant {
            Variant::Continuous => {
                let e = 1.0 - exponent;
                let norm = pow(lo as f64, e) - pow(hi as f64 + 1.0, e);
                (lo..=hi)
                    .map(|k| (pow(k as f64, e) - pow(k as f64 + 1.0, e)) / norm)
                    .collect()
            }
            Variant::Discrete => {
                let raw: Vec<f64> = (lo..=hi).map(|k| pow(k as f64, -exponent)).collect();
                let norm = raw.iter().copied().collect::<KahanSum>().value();
                raw.into_iter().map(|w| w / norm).collect()
            }
        };

        let mut tail = alloc::vec![0.0; pmf.len()];
        let mut acc = KahanSum::default();
        for (i, &p) in pmf.iter().enumerate().rev() {
            acc.add(p);
            tail[i] = acc.value();
        }
        if variant == Variant::Continuous {
            // Closed form avoids the accumulated error of the reverse sum.
            let e = 1.0 - exponent;
            let norm = pow(lo as f64, e) - pow(hi as f64 + 1.0, e);
            for (i, t) in tail.iter_mut().enumerate() {
                let k = (lo + i) as f64;
                *t = (pow(k, e) - pow(hi as f64 + 1.0, e)) / norm;
            }
        }

        let mut cdf = Vec::with_capacity(pmf.len());
        let mut acc = KahanSum::default();
        for &p in &pmf {
            acc.add(p);
            cdf.push(acc.value());
        }
        *cdf.last_mut().expect("support is nonempty") = 1.0;

        Ok(TruncatedPowerLaw { exponent, lo, hi, variant, pmf, tail, cdf })
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Normalized masses for `lo..=hi`.
    pub fn masses(&self) -> &[f64] {
        &self.pmf
    }

    pub fn pmf(&self, k: usize) -> Result<f64> {
        self.index(k).map(|i| self.pmf[i])
    }

    /// `P(X >= k)`.
    pub fn ccdf(&self, k: usize) -> Result<f64> {
        self.index(k).map(|i| self.tail[i])
    }

    /// `sum_k k * pmf(k)` by direct summation.
    pub fn mean(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(i, &p)| (self.lo + i) as f64 * p)
            .collect::<KahanSum>()
            .value()
    }

    /// Smallest support point whose cumulative probability exceeds `u`.
    pub fn quantile(&self, u: f64) -> usize {
        let i = self.cdf.partition_point(|&c| c <= u);
        self.lo + i.min(self.pmf.len() - 1)
    }

    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.quantile(rng.random::<f64>())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<usize> {
        (0..count).map(|_| self.sample_one(rng)).collect()
    }

    fn index(&self, k: usize) -> Result<usize> {
        if k < self.lo || k > self.hi {
            Err(Error::Domain("value outside the power-law support"))
        } else {
            Ok(k - self.lo)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use proptest::prelude::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn continuous_mass_matches_closed_form() {
        let d = TruncatedPowerLaw::new(2.5, 5, 31, Variant::Continuous).unwrap();
        // (5^-1.5 - 6^-1.5) / (5^-1.5 - 32^-1.5), evaluated independently
        let expected = (0.08944271909999159 - 0.06804138174397717)
            / (0.08944271909999159 - 0.005524271728019903);
        assert_close(d.pmf(5).unwrap(), expected, 1e-12);
        assert_close(d.pmf(5).unwrap(), 0.25503, 5e-6);
    }

    #[test]
    fn degenerate_support_is_a_point_mass() {
        for v in [Variant::Continuous, Variant::Discrete] {
            let d = TruncatedPowerLaw::new(2.5, 7, 7, v).unwrap();
            assert_eq!(d.pmf(7).unwrap(), 1.0);
            assert_eq!(d.ccdf(7).unwrap(), 1.0);
            assert_close(d.mean(), 7.0, 1e-12);
            let mut rng = substream(1, 0);
            assert!(d.sample(&mut rng, 100).iter().all(|&k| k == 7));
        }
    }

    #[test]
    fn outside_support_is_a_domain_error() {
        let d = TruncatedPowerLaw::new(2.5, 5, 31, Variant::Discrete).unwrap();
        assert!(matches!(d.pmf(4), Err(Error::Domain(_))));
        assert!(matches!(d.ccdf(32), Err(Error::Domain(_))));
        assert!(TruncatedPowerLaw::new(1.0, 5, 31, Variant::Discrete).is_err());
        assert!(TruncatedPowerLaw::new(2.5, 6, 5, Variant::Discrete).is_err());
    }

    #[test]
    fn ccdf_endpoints() {
        for v in [Variant::Continuous, Variant::Discrete] {
            let d = TruncatedPowerLaw::new(2.5, 5, 1000, v).unwrap();
            assert_close(d.ccdf(5).unwrap(), 1.0, 1e-12);
            assert_close(d.ccdf(1000).unwrap(), d.pmf(1000).unwrap(), 1e-15);
        }
    }

    #[test]
    fn ccdf_matches_summation_oracle() {
        for v in [Variant::Continuous, Variant::Discrete] {
            let d = TruncatedPowerLaw::new(2.5, 5, 1000, v).unwrap();
            let oracle: f64 = (50..=1000).map(|k| d.pmf(k).unwrap()).sum();
            assert_close(d.ccdf(50).unwrap(), oracle, 1e-12);
        }
    }

    #[test]
    fn mean_sits_inside_the_analytic_bracket() {
        // delta^2/(delta+1) * (g-1)/(g-2) = 12.5 and delta * (g-1)/(g-2) = 15
        for hi in [1000, 10_000, 100_000] {
            let d = TruncatedPowerLaw::new(2.5, 5, hi, Variant::Continuous).unwrap();
            let m = d.mean();
            assert!(m > 12.5 * 0.9 && m < 15.0, "mean {m} at hi {hi}");
        }
        let d = TruncatedPowerLaw::new(2.5, 5, 1_000_000, Variant::Continuous).unwrap();
        assert!(d.mean() > 12.5 * 0.99 && d.mean() < 15.0);
    }

    #[test]
    fn discrete_mean_is_below_continuous_mean() {
        let c = TruncatedPowerLaw::new(2.5, 5, 1000, Variant::Continuous).unwrap();
        let d = TruncatedPowerLaw::new(2.5, 5, 1000, Variant::Discrete).unwrap();
        let direct_c: f64 = (5..=1000).map(|k| k as f64 * c.pmf(k).unwrap()).sum();
        let direct_d: f64 = (5..=1000).map(|k| k as f64 * d.pmf(k).unwrap()).sum();
        assert!(direct_d < direct_c);
        assert!(d.mean() < c.mean());
    }

    #[test]
    fn empty_sample() {
        let d = TruncatedPowerLaw::new(2.5, 5, 31, Variant::Discrete).unwrap();
        assert!(d.sample(&mut substream(3, 0), 0).is_empty());
    }

    #[test]
    fn empirical_ccdf_converges() {
        let d = TruncatedPowerLaw::new(2.5, 5, 1000, Variant::Discrete).unwrap();
        let n = 1_000_000;
        let draws = d.sample(&mut substream(11, 0), n);
        let mut counts = alloc::vec![0usize; 1001];
        for &k in &draws {
            assert!((5..=1000).contains(&k));
            counts[k] += 1;
        }
        let mut above = n;
        let mut sup: f64 = 0.0;
        for (k, &count) in counts.iter().enumerate().skip(5) {
            let emp = above as f64 / n as f64;
            sup = sup.max((emp - d.ccdf(k).unwrap()).abs());
            above -= count;
        }
        assert!(sup < 0.005, "sup gap {sup}");
    }

    proptest! {
        #[test]
        fn masses_are_normalized(
            exponent in 1.05f64..3.5,
            lo in 1usize..60,
            width in 0usize..20_000,
            continuous in any::<bool>(),
        ) {
            let v = if continuous { Variant::Continuous } else { Variant::Discrete };
            let d = TruncatedPowerLaw::new(exponent, lo, lo + width, v).unwrap();
            let total: f64 = d.masses().iter().copied().collect::<KahanSum>().value();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(d.masses().iter().all(|&p| p >= 0.0));
        }

        #[test]
        fn ccdf_is_the_tail_sum(
            exponent in 1.05f64..3.5,
            lo in 1usize..60,
            width in 0usize..5_000,
            pick in 0.0f64..1.0,
            continuous in any::<bool>(),
        ) {
            let v = if continuous { Variant::Continuous } else { Variant::Discrete };
            let d = TruncatedPowerLaw::new(exponent, lo, lo + width, v).unwrap();
            let k = lo + ((width as f64) * pick) as usize;
            let tail: f64 = (k..=lo + width).map(|x| d.pmf(x).unwrap()).collect::<KahanSum>().value();
            prop_assert!((d.ccdf(k).unwrap() - tail).abs() < 1e-12);
        }

        #[test]
        fn quantile_is_monotone(u in 0.0f64..1.0, v in 0.0f64..1.0) {
            let d = TruncatedPowerLaw::new(2.5, 5, 500, Variant::Discrete).unwrap();
            let (a, b) = if u <= v { (u, v) } else { (v, u) };
            prop_assert!(d.quantile(a) <= d.quantile(b));
        }

        #[test]
        fn mean_decreases_with_exponent(e1 in 1.1f64..3.4, de in 0.0f64..0.5) {
            let a = TruncatedPowerLaw::new(e1, 3, 400, Variant::Continuous).unwrap();
            let b = TruncatedPowerLaw::new(e1 + de, 3, 400, Variant::Continuous).unwrap();
            prop_assert!(b.mean() <= a.mean() + 1e-12);
        }
    }
}
