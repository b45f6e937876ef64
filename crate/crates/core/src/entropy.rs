//! Entropies of discrete probability vectors.
//!
//! All logarithms are natural. Entries below [`ZERO_CUTOFF`] count as exact
//! zeros, so `0 ln 0 = 0` and `0^alpha = 0`. Near `alpha = 1` the Rényi and
//! Tsallis families are evaluated through `expm1`/`ln_1p` to avoid the
//! cancellation in their `1 - alpha` denominators; inside
//! [`ALPHA_ONE_WINDOW`] they return the Shannon entropy directly.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::{Error, Result};

/// Entries below this are treated as zero in entropy sums.
pub const ZERO_CUTOFF: f64 = 1e-15;

/// `|alpha - 1|` below this evaluates the Shannon limit.
pub const ALPHA_ONE_WINDOW: f64 = 1e-6;

/// Allowed negativity of an entry before it is rejected; smaller excursions
/// are clamped to zero.
pub const NEGATIVE_SLACK: f64 = 1e-12;

/// Allowed deviation of the total mass from one.
pub const SUM_TOL: f64 = 1e-9;

/// A nonnegative vector summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Argument("probability vector is empty".into()));
        }
        let mut probs = probs;
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() || *p < -NEGATIVE_SLACK {
                return Err(Error::Argument(format!("entry {i} = {p} is not a probability")));
            }
            if *p < 0.0 {
                *p = 0.0;
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::Argument(format!("entries sum to {total}, not 1")));
        }
        Ok(Self(probs))
    }

    pub fn uniform(n: usize) -> Self {
        let n = n.max(1);
        Self(alloc::vec![1.0 / n as f64; n])
    }

    pub fn point_mass(n: usize, at: usize) -> Self {
        let mut v = alloc::vec![0.0; n.max(at + 1)];
        v[at] = 1.0;
        Self(v)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Entries sorted in descending order.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.0.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

impl Deref for ProbVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for ProbVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Detector efficiency: the probability that an outcome is registered.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Efficiency(f64);

impl Efficiency {
    pub const PERFECT: Efficiency = Efficiency(1.0);

    pub fn new(kappa: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&kappa) {
            return Err(Error::Argument(format!("efficiency {kappa} outside [0, 1]")));
        }
        Ok(Self(kappa))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Argument(format!("entropic order alpha = {alpha} must be positive")));
    }
    Ok(())
}

fn near_one(alpha: f64) -> bool {
    (alpha - 1.0).abs() < ALPHA_ONE_WINDOW
}

/// `sum_i p_i^alpha - 1`, computed as `sum_i p_i expm1((alpha-1) ln p_i)
/// + (sum_i p_i - 1)` so it stays accurate as alpha approaches one.
fn power_sum_minus_one(p: &[f64], alpha: f64) -> f64 {
    let mut acc = 0.0;
    let mut mass = 0.0;
    for &x in p.iter().filter(|&&x| x >= ZERO_CUTOFF) {
        acc += x * ((alpha - 1.0) * x.ln()).exp_m1();
        mass += x;
    }
    acc + (mass - 1.0)
}

/// Shannon entropy `-sum p ln p`.
pub fn shannon(p: &ProbVector) -> f64 {
    shannon_slice(p)
}

pub(crate) fn shannon_slice(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x >= ZERO_CUTOFF).map(|&x| x * x.ln()).sum::<f64>()
}

/// Rényi entropy of order `alpha`.
pub fn renyi(p: &ProbVector, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Ok(shannon(p));
    }
    Ok(power_sum_minus_one(p, alpha).ln_1p() / (1.0 - alpha))
}

/// The `alpha -> 0` limit of the Rényi entropy: the log of the support size.
pub fn max_entropy(p: &ProbVector) -> f64 {
    (p.iter().filter(|&&x| x > 1e-12).count() as f64).ln()
}

/// Tsallis entropy of order `alpha`.
pub fn tsallis(p: &ProbVector, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Ok(shannon(p));
    }
    Ok(power_sum_minus_one(p, alpha) / (1.0 - alpha))
}

/// The alpha-logarithm `(y^(1-alpha) - 1) / (1 - alpha)`.
pub fn alpha_log(y: f64, alpha: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("alpha-logarithm of {y}")));
    }
    check_alpha(alpha)?;
    if near_one(alpha) {
        return Ok(y.ln());
    }
    Ok(((1.0 - alpha) * y.ln()).exp_m1() / (1.0 - alpha))
}

/// Binary Tsallis entropy `h_alpha(kappa)`; vanishes at both endpoints.
pub fn binary_tsallis(kappa: Efficiency, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let term = |x: f64| -> Result<f64> {
        if x < ZERO_CUTOFF {
            return Ok(0.0);
        }
        Ok(-x.powf(alpha) * alpha_log(x, alpha)?)
    };
    let k = kappa.value();
    Ok(term(k)? + term(1.0 - k)?)
}

/// Appends the no-click outcome: `(kappa p_1, ..., kappa p_d, 1 - kappa)`.
pub fn distort(p: &ProbVector, kappa: Efficiency) -> ProbVector {
    let k = kappa.value();
    let mut out: Vec<f64> = p.iter().map(|&x| k * x).collect();
    out.push(1.0 - k);
    ProbVector(out)
}
