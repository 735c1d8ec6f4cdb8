//! Float helpers that behave identically with and without `std`.

pub(crate) use libm::{ceil, exp, fabs, floor, log, pow, round, sqrt};

/// Kahan-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

impl core::iter::FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// `floor(n^e)`, snapping to the nearest integer when `n^e` is within
/// rounding noise of it (so that `1e6^0.5` gives 1000, not 999).
pub(crate) fn floor_pow(n: usize, e: f64) -> usize {
    let x = pow(n as f64, e);
    let r = round(x);
    if fabs(x - r) <= 1e-9 * r.max(1.0) {
        r as usize
    } else {
        floor(x) as usize
    }
}

/// Snap `x` to an integer if it is within `1e-9` of one.
pub(crate) fn snap(x: f64) -> f64 {
    let r = round(x);
    if fabs(x - r) <= 1e-9 {
        r
    } else {
        x
    }
}
