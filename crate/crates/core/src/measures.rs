//! Probability distributions induced by graphs, and their Shannon and Rényi entropies.
//!
//! Two routes produce a [`Distribution`]:
//!
//! - partition based: `p_i = |X_i| / |X|` over the blocks of an [`OrbitPartition`];
//! - functional based: `p(v) = f(v) / Σ f` for a strictly positive vertex functional.
//!
//! Functional values are carried in natural-log space so that the exponential
//! j-sphere functional `β^(Σ c_j |S_j(v)|)` never overflows. All entropies are in bits.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::{distance_matrix, j_sphere_profile, Graph};
use crate::orbits::OrbitPartition;
use crate::scalar::{log_sum_exp, Scalar};

/// Distance from 1 below which `renyi_entropy` returns the Shannon entropy.
pub const RENYI_SHANNON_SWITCH: f64 = 1e-9;

/// Exponent magnitude (natural log) up to which linear-space values are rendered.
const LINEAR_RENDER_LIMIT: f64 = 600.0;

/// A strictly positive probability vector summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution<F> {
    p: Vec<F>,
}

impl<F: Scalar> Distribution<F> {
    /// Validates `p`: non-empty, every entry finite and `> 0`, and `|Σp − 1|` within tolerance.
    pub fn new(p: Vec<F>) -> Result<Self> {
        if p.is_empty() {
            return domain("distribution must have at least one atom");
        }
        if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x <= F::zero()) {
            return domain(format!("probabilities must be finite and > 0, got {bad}"));
        }
        let sum: F = p.iter().copied().sum();
        if (sum - F::one()).abs() > F::normalization_tol(p.len()) {
            return domain(format!("probabilities sum to {sum}, not 1"));
        }
        Ok(Self { p })
    }

    /// Normalizes positive weights into a distribution.
    pub fn from_weights(w: &[F]) -> Result<Self> {
        if w.iter().any(|x| !x.is_finite() || *x <= F::zero()) {
            return domain("weights must be finite and > 0");
        }
        let total: F = w.iter().copied().sum();
        Self::new(w.iter().map(|&x| x / total).collect())
    }

    pub fn uniform(size: usize) -> Result<Self> {
        if size == 0 {
            return domain("distribution must have at least one atom");
        }
        Self::new(vec![F::one() / F::count(size); size])
    }

    pub fn probs(&self) -> &[F] {
        &self.p
    }

    pub fn size(&self) -> usize {
        self.p.len()
    }

    /// `ln Σ p_i^α`, computed as a log-sum-exp of `α ln p_i`.
    pub fn ln_power_sum(&self, alpha: F) -> F {
        let terms: Vec<F> = self.p.iter().map(|&x| alpha * x.ln()).collect();
        log_sum_exp(&terms)
    }

    /// `Σ p_i^α`.
    pub fn power_sum(&self, alpha: F) -> F {
        self.ln_power_sum(alpha).exp()
    }
}

/// Maximum ratio and maximum difference between any two probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionStats<F> {
    /// `max_{i,k} p_i / p_k`
    pub rho: F,
    /// `max_{i,k} (p_i − p_k)`
    pub epsilon: F,
}

pub fn distribution_stats<F: Scalar>(d: &Distribution<F>) -> DistributionStats<F> {
    let (lo, hi) = d
        .probs()
        .iter()
        .fold((F::infinity(), F::neg_infinity()), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    DistributionStats {
        rho: hi / lo,
        epsilon: hi - lo,
    }
}

pub fn partition_distribution<F: Scalar>(part: &OrbitPartition) -> Result<Distribution<F>> {
    let total = F::count(part.total());
    Distribution::new(
        part.sizes()
            .into_iter()
            .map(|s| F::count(s) / total)
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalKind {
    Linear,
    Exponential,
}

/// Coefficients (and base, for the exponential kind) of a j-sphere functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSpec<F> {
    pub kind: FunctionalKind,
    /// `c_1..c_η`, one per sphere radius.
    pub coeffs: Vec<F>,
    /// Base `β`; only meaningful for [`FunctionalKind::Exponential`].
    pub beta: Option<F>,
}

impl<F: Scalar> FunctionalSpec<F> {
    pub fn linear(coeffs: Vec<F>) -> Self {
        Self {
            kind: FunctionalKind::Linear,
            coeffs,
            beta: None,
        }
    }

    pub fn exponential(coeffs: Vec<F>, beta: F) -> Self {
        Self {
            kind: FunctionalKind::Exponential,
            coeffs,
            beta: Some(beta),
        }
    }

    /// Default weights `c_j = η − j + 1`: strictly decreasing and pairwise distinct.
    pub fn default_coeffs(eta: usize) -> Vec<F> {
        (1..=eta).map(|j| F::count(eta - j + 1)).collect()
    }

    pub fn c_max(&self) -> F {
        self.coeffs.iter().copied().fold(F::neg_infinity(), F::max)
    }

    pub fn c_min(&self) -> F {
        self.coeffs.iter().copied().fold(F::infinity(), F::min)
    }

    fn validate(&self, eta: usize) -> Result<()> {
        if self.coeffs.len() != eta {
            return domain(format!(
                "expected {eta} coefficients (one per sphere radius), got {}",
                self.coeffs.len()
            ));
        }
        if self
            .coeffs
            .iter()
            .any(|c| !c.is_finite() || *c <= F::zero())
        {
            return domain("coefficients must be finite and > 0");
        }
        match (self.kind, self.beta) {
            (FunctionalKind::Linear, Some(_)) => {
                domain("beta only applies to the exponential functional")
            }
            (FunctionalKind::Exponential, None) => domain("exponential functional requires beta"),
            (FunctionalKind::Exponential, Some(b)) if !(b.is_finite() && b > F::zero()) => {
                domain("beta must be finite and > 0")
            }
            _ => Ok(()),
        }
    }
}

/// Vertex functional values kept in natural-log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValues<F> {
    /// `ln f(v)` per vertex.
    pub ln_values: Vec<F>,
    /// `f(v)` when every value is safely representable.
    pub values: Option<Vec<F>>,
    /// `ln S`, `S = Σ_v f(v)`.
    pub ln_total: F,
}

impl<F: Scalar> FunctionalValues<F> {
    /// Wraps natural-log values; all must be finite.
    pub fn from_ln(ln_values: Vec<F>) -> Result<Self> {
        if ln_values.is_empty() {
            return domain("functional needs at least one vertex");
        }
        if ln_values.iter().any(|x| !x.is_finite()) {
            return domain("functional values must be finite and > 0");
        }
        let limit = F::lit(LINEAR_RENDER_LIMIT).min(F::max_value().ln() - F::lit(8.0));
        let values = ln_values
            .iter()
            .all(|x| x.abs() < limit)
            .then(|| ln_values.iter().map(|x| x.exp()).collect());
        let ln_total = log_sum_exp(&ln_values);
        Ok(Self {
            ln_values,
            values,
            ln_total,
        })
    }

    /// Wraps strictly positive linear-space values.
    pub fn from_values(values: &[F]) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite() || *x <= F::zero()) {
            return domain("functional values must be finite and > 0");
        }
        Self::from_ln(values.iter().map(|x| x.ln()).collect())
    }

    pub fn len(&self) -> usize {
        self.ln_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_values.is_empty()
    }

    /// `S` in linear space (may be `inf` for huge exponential functionals).
    pub fn total(&self) -> F {
        self.ln_total.exp()
    }
}

fn sphere_weighted_sums<F: Scalar>(g: &Graph, spec: &FunctionalSpec<F>) -> Result<Vec<F>> {
    if g.n() == 0 {
        return domain("functional needs at least one vertex");
    }
    let d = distance_matrix(g);
    if !d.is_connected() {
        return domain("j-sphere functionals require a connected graph");
    }
    spec.validate(d.eta)?;
    (0..g.n())
        .map(|v| {
            let prof = j_sphere_profile(g, &d, v)?;
            Ok(prof
                .counts
                .iter()
                .zip(&spec.coeffs)
                .map(|(&cnt, &c)| c * F::count(cnt))
                .sum())
        })
        .collect()
}

/// `f(v) = Σ_j c_j |S_j(v)|`.
pub fn linear_functional_values<F: Scalar>(
    g: &Graph,
    spec: &FunctionalSpec<F>,
) -> Result<FunctionalValues<F>> {
    if spec.kind != FunctionalKind::Linear {
        return domain("expected a linear functional spec");
    }
    let sums = sphere_weighted_sums(g, spec)?;
    if g.n() == 1 {
        return domain("the linear functional vanishes on a single vertex");
    }
    FunctionalValues::from_values(&sums)
}

/// `f(v) = β^(Σ_j c_j |S_j(v)|)`, stored as `ln f(v) = exponent · ln β`.
pub fn exponential_functional_values<F: Scalar>(
    g: &Graph,
    spec: &FunctionalSpec<F>,
) -> Result<FunctionalValues<F>> {
    if spec.kind != FunctionalKind::Exponential {
        return domain("expected an exponential functional spec");
    }
    let sums = sphere_weighted_sums(g, spec)?;
    let ln_beta = spec.beta.expect("validated").ln();
    FunctionalValues::from_ln(sums.into_iter().map(|e| e * ln_beta).collect())
}

/// Dispatches on `spec.kind`.
pub fn functional_values<F: Scalar>(
    g: &Graph,
    spec: &FunctionalSpec<F>,
) -> Result<FunctionalValues<F>> {
    match spec.kind {
        FunctionalKind::Linear => linear_functional_values(g, spec),
        FunctionalKind::Exponential => exponential_functional_values(g, spec),
    }
}

/// `p(v) = f(v) / S`, normalized in log space.
pub fn distribution_from_values<F: Scalar>(fv: &FunctionalValues<F>) -> Result<Distribution<F>> {
    let raw: Vec<F> = fv
        .ln_values
        .iter()
        .map(|&x| (x - fv.ln_total).exp())
        .collect();
    if raw.iter().any(|&x| x <= F::zero()) {
        return domain("functional too skewed: some p(v) underflows to 0");
    }
    // one more pass removes the rounding left by exp
    let s: F = raw.iter().copied().sum();
    Distribution::new(raw.into_iter().map(|x| x / s).collect())
}

/// `−Σ p log₂ p`, in bits.
pub fn shannon_entropy<F: Scalar>(d: &Distribution<F>) -> F {
    let h: F = d.probs().iter().map(|&x| -x * x.log2()).sum();
    h.max(F::zero())
}

/// `log₂(Σ p^α) / (1 − α)`, in bits. Falls back to Shannon for `|α − 1| ≤ 1e-9`.
pub fn renyi_entropy<F: Scalar>(d: &Distribution<F>, alpha: F) -> Result<F> {
    if !(alpha.is_finite() && alpha > F::zero()) {
        return domain(format!("alpha must be finite and > 0, got {alpha}"));
    }
    if (alpha - F::one()).abs() <= F::lit(RENYI_SHANNON_SWITCH) {
        return Ok(shannon_entropy(d));
    }
    let h = d.ln_power_sum(alpha) / ((F::one() - alpha) * F::LN_2());
    Ok(h.max(F::zero()))
}
