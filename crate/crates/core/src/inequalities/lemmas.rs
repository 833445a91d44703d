//! Randomized checks of the three real-number lemmas the bounds rest on:
//! the mean-value sandwich for `x^r − y^r`, the simplified Minkowski
//! inequality, and the Jensen-gap bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::graph::mix_seed;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    L1,
    L2,
    L3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck<F> {
    pub lemma_id: LemmaId,
    /// Sampled inputs, flattened in the order documented on each `check_lemma*`.
    pub inputs: Vec<F>,
    pub satisfied: bool,
    /// Smallest gap in the inequality chain; negative on violation.
    pub margin: F,
}

/// `r y^(r−1)(x−y) < x^r − y^r < r x^(r−1)(x−y)` for `r < 0` or `r > 1`, reversed for `0 < r < 1`.
///
/// Inputs are recorded as `[x, y, r]`.
pub fn check_lemma1<F: Scalar>(x: F, y: F, r: F) -> Result<LemmaCheck<F>> {
    if !(x > F::zero() && y > F::zero()) || x == y {
        return domain("lemma 1 needs x, y > 0 and x != y");
    }
    if r == F::zero() || r == F::one() {
        return domain("lemma 1 needs r outside {0, 1}");
    }
    let mid = x.powf(r) - y.powf(r);
    let at_y = r * y.powf(r - F::one()) * (x - y);
    let at_x = r * x.powf(r - F::one()) * (x - y);
    let (lo, hi) = if r < F::zero() || r > F::one() {
        (at_y, at_x)
    } else {
        (at_x, at_y)
    };
    let margin = (mid - lo).min(hi - mid);
    Ok(LemmaCheck {
        lemma_id: LemmaId::L1,
        inputs: vec![x, y, r],
        satisfied: margin > F::zero(),
        margin,
    })
}

/// `(Σ_i (a_i + b_i + …)^r)^R ≤ Σ_vectors (Σ_i a_i^r)^R`, `R = 1` for `r ≤ 1` else `1/r`.
///
/// Inputs are recorded as `[r, v_1…, v_2…, …]`.
pub fn check_lemma2<F: Scalar>(vectors: &[Vec<F>], r: F) -> Result<LemmaCheck<F>> {
    if r <= F::zero() {
        return domain("lemma 2 needs r > 0");
    }
    let len = vectors.first().map_or(0, Vec::len);
    if len == 0 || vectors.iter().any(|v| v.len() != len) {
        return domain("lemma 2 needs non-empty vectors of equal length");
    }
    if vectors.iter().flatten().any(|x| *x < F::zero()) {
        return domain("lemma 2 needs non-negative entries");
    }
    let big_r = if r <= F::one() {
        F::one()
    } else {
        F::one() / r
    };
    let norm =
        |xs: &mut dyn Iterator<Item = F>| -> F { xs.map(|x| x.powf(r)).sum::<F>().powf(big_r) };
    let lhs = norm(&mut (0..len).map(|i| vectors.iter().map(|v| v[i]).sum::<F>()));
    let rhs: F = vectors.iter().map(|v| norm(&mut v.iter().copied())).sum();
    let margin = rhs - lhs;
    let tol = F::exact_tol() * rhs.max(F::one());
    let mut inputs = vec![r];
    inputs.extend(vectors.iter().flatten().copied());
    Ok(LemmaCheck {
        lemma_id: LemmaId::L2,
        inputs,
        satisfied: margin >= -tol,
        margin,
    })
}

/// `0 ≤ log₂(Σ p x) − Σ p log₂ x ≤ (1 / 2 ln 2) Σ_{k,i} p_k p_i (x_i − x_k)² / (x_k x_i)`.
///
/// Inputs are recorded as `[p…, x…]`.
pub fn check_lemma3<F: Scalar>(p: &[F], x: &[F]) -> Result<LemmaCheck<F>> {
    if p.is_empty() || p.len() != x.len() {
        return domain("lemma 3 needs equal-length non-empty p and x");
    }
    if p.iter().any(|v| *v < F::zero()) || x.iter().any(|v| *v <= F::zero()) {
        return domain("lemma 3 needs p >= 0 and x > 0");
    }
    let total: F = p.iter().copied().sum();
    if (total - F::one()).abs() > F::normalization_tol(p.len()) {
        return domain("lemma 3 needs p to sum to 1");
    }
    let mean: F = p.iter().zip(x).map(|(&pk, &xk)| pk * xk).sum();
    let mean_log: F = p.iter().zip(x).map(|(&pk, &xk)| pk * xk.log2()).sum();
    let gap = mean.log2() - mean_log;
    let mut acc = F::zero();
    for (&pk, &xk) in p.iter().zip(x) {
        for (&pi, &xi) in p.iter().zip(x) {
            acc = acc + pk * pi * (xi - xk) * (xi - xk) / (xk * xi);
        }
    }
    let bound = acc / (F::lit(2.0) * F::LN_2());
    let margin = gap.min(bound - gap);
    let tol = F::exact_tol() * bound.abs().max(F::one());
    let mut inputs = p.to_vec();
    inputs.extend_from_slice(x);
    Ok(LemmaCheck {
        lemma_id: LemmaId::L3,
        inputs,
        satisfied: margin >= -tol,
        margin,
    })
}

fn sample_r(rng: &mut ChaCha8Rng) -> f64 {
    // keep clear of the degenerate exponents 0 and 1
    match rng.gen_range(0..3) {
        0 => rng.gen_range(-3.0..-0.05),
        1 => rng.gen_range(0.05..0.95),
        _ => rng.gen_range(1.05..4.0),
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

/// Runs `trials` seeded samples of each lemma; returns `3 · trials` checks (L1, L2, L3 per trial).
pub fn lemma_checks(seed: u64, trials: usize) -> Result<Vec<LemmaCheck<f64>>> {
    if trials == 0 {
        return domain("lemma_checks needs trials >= 1");
    }
    let mut out = Vec::with_capacity(3 * trials);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, t as u64));

        let x = log_uniform(&mut rng, 0.05, 20.0);
        let mut y = log_uniform(&mut rng, 0.05, 20.0);
        if (x - y).abs() < 1e-3 * x.max(y) {
            y = x * 1.5;
        }
        out.push(check_lemma1(x, y, sample_r(&mut rng))?);

        let count = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=6);
        let vectors: Vec<Vec<f64>> = (0..count)
            .map(|_| {
                (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.15) {
                            0.0
                        } else {
                            rng.gen_range(0.0..5.0)
                        }
                    })
                    .collect()
            })
            .collect();
        out.push(check_lemma2(&vectors, rng.gen_range(0.05..4.0))?);

        let len = rng.gen_range(1..=8);
        let w: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = w.iter().sum();
        let p: Vec<f64> = if total > 0.0 {
            w.iter().map(|v| v / total).collect()
        } else {
            vec![1.0 / len as f64; len]
        };
        let xs: Vec<f64> = (0..len)
            .map(|_| log_uniform(&mut rng, 0.01, 100.0))
            .collect();
        out.push(check_lemma3(&p, &xs)?);
    }
    Ok(out)
}
