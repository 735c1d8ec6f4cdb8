//! The eight ABCD model parameters.

use crate::error::{Error, Field, Result};
use crate::math::floor_pow;

/// Which truncated power law is used for degrees and community sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Mass of `k` proportional to the integral of `x^-exponent` over `[k, k+1)`.
    Continuous,
    /// Mass of `k` proportional to `k^-exponent`.
    #[default]
    Discrete,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Continuous => "continuous",
            Variant::Discrete => "discrete",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "continuous" => Some(Variant::Continuous),
            "discrete" => Some(Variant::Discrete),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcdParams {
    /// Number of nodes.
    pub n: usize,
    /// Degree exponent, in `(2, 3)`.
    pub gamma: f64,
    /// Minimum degree.
    pub delta: usize,
    /// Maximum degree is `floor(n^zeta)`; `zeta` in `(0, 1/(gamma-1)]`.
    pub zeta: f64,
    /// Community size exponent, in `(1, 2)`.
    pub beta: f64,
    /// Minimum community size, at least `delta + 1`.
    pub s: usize,
    /// Maximum community size is `floor(n^tau)`; `tau` in `(zeta, 1)`.
    pub tau: f64,
    /// Noise level, in `(0, 1)`.
    pub xi: f64,
    pub variant: Variant,
}

impl AbcdParams {
    /// Checks every range and returns the parameters unchanged, or the first
    /// violated constraint in declaration order.
    pub fn validate(self) -> Result<Self> {
        let p = &self;
        let open = |x: f64, lo: f64, hi: f64| x > lo && x < hi;
        if p.n == 0 {
            return Err(Error::Range(Field::N));
        }
        if !open(p.gamma, 2.0, 3.0) {
            return Err(Error::Range(Field::Gamma));
        }
        if p.delta < 1 {
            return Err(Error::Range(Field::Delta));
        }
        if !(p.zeta > 0.0 && p.zeta <= 1.0 / (p.gamma - 1.0)) {
            return Err(Error::Range(Field::Zeta));
        }
        if !open(p.beta, 1.0, 2.0) {
            return Err(Error::Range(Field::Beta));
        }
        if p.s < p.delta + 1 {
            return Err(Error::Range(Field::S));
        }
        if !open(p.tau, p.zeta, 1.0) {
            return Err(Error::Range(Field::Tau));
        }
        if !open(p.xi, 0.0, 1.0) {
            return Err(Error::Range(Field::Xi));
        }
        if p.max_degree() < p.delta {
            return Err(Error::Range(Field::MaxDegree));
        }
        if p.max_community() < p.s {
            return Err(Error::Range(Field::MaxCommunity));
        }
        Ok(self)
    }

    /// `D = floor(n^zeta)`.
    pub fn max_degree(&self) -> usize {
        floor_pow(self.n, self.zeta)
    }

    /// `S = floor(n^tau)`.
    pub fn max_community(&self) -> usize {
        floor_pow(self.n, self.tau)
    }

    /// Parameters used throughout the paper's simulations
    /// (`gamma = 2.5, delta = 5, zeta = 1/2, beta = 1.5, s = 50, tau = 3/4`).
    pub fn reference(n: usize, xi: f64) -> Self {
        AbcdParams {
            n,
            gamma: 2.5,
            delta: 5,
            zeta: 0.5,
            beta: 1.5,
            s: 50,
            tau: 0.75,
            xi,
            variant: Variant::Discrete,
        }
    }
}
