//! Closed-form predictions: mean degrees, community counts, the background
//! degree law, expander constants and modularity predictions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ceil, floor, pow, sqrt, KahanSum};
use crate::params::{AbcdParams, Variant};
use crate::powerlaw::TruncatedPowerLaw;

/// Largest minimum degree accepted by [`xi0`].
pub const XI0_MAX_DELTA: usize = 10_000;

/// Community-count constant: `l ~ c_hat * n^(1 - tau(2 - beta))`.
pub fn c_hat(beta: f64, s: usize) -> f64 {
    (2.0 - beta) / ((beta - 1.0) * pow(s as f64, beta - 1.0))
}

/// Quantities derived once per parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryContext {
    pub params: AbcdParams,
    /// Mean of the continuous degree law.
    pub d: f64,
    /// Mean of the discrete degree law.
    pub d_hat: f64,
    pub c_hat: f64,
    /// Predicted number of communities.
    pub ell_pred: f64,
}

impl TheoryContext {
    pub fn new(params: &AbcdParams) -> Result<Self> {
        let p = params.validate()?;
        let d = degree_law(&p, Variant::Continuous)?.mean();
        let d_hat = degree_law(&p, Variant::Discrete)?.mean();
        let c = c_hat(p.beta, p.s);
        let ell_pred = c * pow(p.n as f64, 1.0 - p.tau * (2.0 - p.beta));
        Ok(TheoryContext { params: p, d, d_hat, c_hat: c, ell_pred })
    }
}

fn degree_law(p: &AbcdParams, variant: Variant) -> Result<TruncatedPowerLaw> {
    TruncatedPowerLaw::new(p.gamma, p.delta, p.max_degree(), variant)
}

fn community_law(p: &AbcdParams, variant: Variant) -> Result<TruncatedPowerLaw> {
    TruncatedPowerLaw::new(p.beta, p.s, p.max_community(), variant)
}

/// Probability mass of the background degree `k`, for consecutive `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BackgroundPmf {
    pub lo: usize,
    pub masses: Vec<f64>,
}

impl BackgroundPmf {
    pub fn get(&self, k: usize) -> f64 {
        k.checked_sub(self.lo).and_then(|i| self.masses.get(i)).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.masses.iter().enumerate().map(move |(i, &m)| (self.lo + i, m))
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, m)| k as f64 * m).collect::<KahanSum>().value()
    }
}

/// Law of `xi * w` rounded stochastically, for `w` drawn from the
/// continuous degree law.
pub fn background_pmf(params: &AbcdParams) -> Result<BackgroundPmf> {
    let p = params.validate()?;
    Ok(background_pmf_of(&degree_law(&p, Variant::Continuous)?, p.xi))
}

/// Same as [`background_pmf`] for an arbitrary degree law.
pub fn background_pmf_of(degrees: &TruncatedPowerLaw, xi: f64) -> BackgroundPmf {
    let lo = floor(xi * degrees.lo() as f64) as usize;
    let hi = ceil(xi * degrees.hi() as f64) as usize;
    let mut masses = vec![0.0; hi - lo + 1];
    for (i, &q) in (degrees.lo()..=degrees.hi()).zip(degrees.masses()) {
        let x = xi * i as f64;
        let k = floor(x);
        let frac = x - k;
        let k = k as usize - lo;
        masses[k] += (1.0 - frac) * q;
        if frac > 0.0 {
            masses[k + 1] += frac * q;
        }
    }
    BackgroundPmf { lo, masses }
}

/// Expansion constant of a community coupled with a `b`-regular expander of
/// multiplicity `a`.
pub fn c_ab(a: usize, b: usize) -> Result<f64> {
    if a < 1 {
        return Err(Error::Domain("a must be at least 1"));
    }
    if b < 3 {
        return Err(Error::Domain("b must be at least 3"));
    }
    let (a, b) = (a as f64, b as f64);
    let ab = a * b;
    Ok((b - 2.0 * sqrt(b - 1.0)) / (2.0 * b) * ab / (ab + b - 1.0) - (b - 1.0) / (ab + b - 1.0) - 0.011)
}

/// Noise threshold below which ground truth is asymptotically optimal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Xi0 {
    pub value: f64,
    pub a: usize,
    pub b: usize,
}

/// Exhaustive maximisation over `a >= 1, b >= 3, ab < delta`; ties go to the
/// lexicographically smallest `(a, b)`.
pub fn xi0(delta: usize) -> Result<Xi0> {
    if delta < 4 {
        return Err(Error::Domain("minimum degree must be at least 4"));
    }
    if delta > XI0_MAX_DELTA {
        return Err(Error::Domain("minimum degree above the scanned range"));
    }
    let mut best: Option<Xi0> = None;
    for a in 1..delta {
        let mut b = 3;
        while a * b < delta {
            let value = (1.0 - (a * b) as f64 / delta as f64)
                .min(c_ab(a, b)? / 4.0)
                .min(1.0 / 20.0);
            if best.is_none_or(|x| value > x.value) {
                best = Some(Xi0 { value, a, b });
            }
            b += 1;
        }
    }
    best.ok_or(Error::Domain("no admissible (a, b)"))
}

/// Which prediction to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    GroundTruthModularity,
    TreeDissection,
    LuckyImprovement,
    DegreeCcdf,
    CommunityCcdf,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Prediction {
    Value(f64),
    /// A positive constant exists but has no explicit value.
    LowerBoundOnly,
    /// `(k, P(X >= k))` points.
    Curve(Vec<(usize, f64)>),
}

/// Modularity gained by moving lucky nodes, for minimum degree one.
pub fn lucky_improvement(params: &AbcdParams) -> Result<f64> {
    let p = params.validate()?;
    if p.delta != 1 {
        return Err(Error::Domain("lucky improvement needs minimum degree 1"));
    }
    let law = degree_law(&p, Variant::Discrete)?;
    let ratio = law.pmf(1)? / law.mean();
    Ok(p.xi * ratio * (2.0 - ratio))
}

fn ccdf_curve(law: &TruncatedPowerLaw) -> Result<Vec<(usize, f64)>> {
    (law.lo()..=law.hi()).map(|k| Ok((k, law.ccdf(k)?))).collect()
}

pub fn predict(params: &AbcdParams, which: Quantity) -> Result<Prediction> {
    let p = params.validate()?;
    Ok(match which {
        Quantity::GroundTruthModularity => Prediction::Value(1.0 - p.xi),
        Quantity::TreeDissection => {
            if p.xi * p.delta as f64 >= 3.0 {
                Prediction::Value(2.0 / TheoryContext::new(&p)?.d_hat)
            } else {
                Prediction::LowerBoundOnly
            }
        }
        Quantity::LuckyImprovement => Prediction::Value(lucky_improvement(&p)?),
        Quantity::DegreeCcdf => Prediction::Curve(ccdf_curve(&degree_law(&p, Variant::Continuous)?)?),
        Quantity::CommunityCcdf => {
            Prediction::Curve(ccdf_curve(&community_law(&p, Variant::Continuous)?)?)
        }
    })
}
