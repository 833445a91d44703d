use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::measures::{
    distribution_from_values, partition_distribution, renyi_entropy, Distribution, FunctionalValues,
};
use crate::orbits::OrbitPartition;
use crate::scalar::Scalar;

use super::{check_alpha, params, BoundReport, Direction, LogBase, TheoremId, Variant};

/// Sorted pointwise dominance: the ascending block sizes sit strictly below the
/// `k` smallest functional values. This gives an injection `X_i → v_i` with
/// `|X_i| < f(v_i)`.
fn sizes_dominated<F: Scalar>(sizes: &[usize], ln_values: &[F]) -> bool {
    if sizes.len() > ln_values.len() {
        return false;
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    let mut vals = ln_values.to_vec();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    sizes
        .iter()
        .zip(&vals)
        .all(|(&s, &lnf)| F::count(s).ln() < lnf)
}

/// Partition-based vs functional-based Rényi entropy.
///
/// For `α < 1`: `H_{α,Γ} < H_{α,f} + α/(1−α) · log₂(S/|X|)`.
/// For `α > 1`: `H_{α,Γ} > H_{α,f} − α/(α−1) · log₂(S/|X|)`.
pub fn thm3_partition_vs_functional<F: Scalar>(
    g: &Graph,
    part: &OrbitPartition,
    fv: &FunctionalValues<F>,
    alpha: F,
) -> Result<BoundReport<F>> {
    check_alpha(alpha)?;
    if !g.is_connected() {
        return domain("thm3 requires a connected graph");
    }
    let n = g.n();
    if part.total() != n || fv.len() != n {
        return domain("partition, functional and graph disagree on the vertex count");
    }
    let h_gamma = renyi_entropy(&partition_distribution(part)?, alpha)?;
    let h_f = renyi_entropy(&distribution_from_values(fv)?, alpha)?;
    let log_ratio = (fv.ln_total - F::count(n).ln()) / F::LN_2();
    // α/(1−α) is negative for α > 1, which turns this into the lower bound
    let bound = h_f + alpha / (F::one() - alpha) * log_ratio;
    let direction = if alpha < F::one() {
        Direction::Upper
    } else {
        Direction::Lower
    };
    let met = sizes_dominated(&part.sizes(), &fv.ln_values);
    Ok(BoundReport::evaluate(
        TheoremId::Thm3,
        Variant::Literal,
        alpha,
        h_gamma,
        bound,
        direction,
        met,
        params(&[
            ("S", fv.total()),
            ("ln_S", fv.ln_total),
            ("X_total", F::count(part.total())),
            ("k", F::count(part.k())),
            ("N", F::count(n)),
            ("renyi_f", h_f),
        ]),
    ))
}

/// Where `ψ` comes from in [`thm4_scaled_dominance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiSource<F> {
    /// A caller-supplied constant.
    Explicit(F),
    /// Corollary mode, `ψ = S₂ / S₁`, given the natural-log totals `ln S₁`, `ln S₂`.
    Totals { ln_s1: F, ln_s2: F },
}

/// Scaled dominance. If `p₁(v) ≤ ψ p₂(v)` for all `v`:
/// `H_{α,1} ≤ H_{α,2} + α/(1−α) log₂ ψ` (`α < 1`), `H_{α,1} ≥ H_{α,2} − α/(α−1) log₂ ψ` (`α > 1`).
pub fn thm4_scaled_dominance<F: Scalar>(
    d1: &Distribution<F>,
    d2: &Distribution<F>,
    psi: PsiSource<F>,
    alpha: F,
) -> Result<BoundReport<F>> {
    check_alpha(alpha)?;
    if d1.size() != d2.size() {
        return domain("thm4 needs distributions of equal size");
    }
    let (theorem, ln_psi, mut extra) = match psi {
        PsiSource::Explicit(psi) => {
            if !(psi.is_finite() && psi > F::zero()) {
                return domain("psi must be finite and > 0");
            }
            (TheoremId::Thm4, psi.ln(), Vec::new())
        }
        PsiSource::Totals { ln_s1, ln_s2 } => (
            TheoremId::Thm4Corollary,
            ln_s2 - ln_s1,
            vec![("ln_S1", ln_s1), ("ln_S2", ln_s2)],
        ),
    };
    let psi_value = ln_psi.exp();
    let tol = F::normalization_tol(d1.size());
    let met = d1
        .probs()
        .iter()
        .zip(d2.probs())
        .all(|(&a, &b)| a <= psi_value * b * (F::one() + tol));
    let h1 = renyi_entropy(d1, alpha)?;
    let h2 = renyi_entropy(d2, alpha)?;
    let bound = h2 + alpha / (F::one() - alpha) * ln_psi / F::LN_2();
    let direction = if alpha < F::one() {
        Direction::Upper
    } else {
        Direction::Lower
    };
    extra.extend([
        ("psi", psi_value),
        ("N", F::count(d1.size())),
        ("renyi_2", h2),
    ]);
    Ok(BoundReport::evaluate(
        theorem,
        Variant::Literal,
        alpha,
        h1,
        bound,
        direction,
        met,
        params(&extra),
    ))
}

/// Additive dominance. If `p₁(v) ≤ p₂(v) + φ` for all `v`:
///
/// - `α < 1`: `H_{α,1} < H_{α,2} + [κ] · N φ^α / ((1−α) Σ p₂^α)`;
/// - `α > 1`: `H_{α,1} > H_{α,2} − [κ] · α N^(1/α) φ / ((α−1) (Σ p₂^α)^(1/α))`;
///
/// with `κ = 1` for the literal form and `κ = 1/ln(base)` for the corrected
/// one. Entropies and logs are in `log_base` units.
pub fn thm5_additive_dominance<F: Scalar>(
    d1: &Distribution<F>,
    d2: &Distribution<F>,
    phi: F,
    alpha: F,
    variant: Variant,
    log_base: LogBase,
) -> Result<BoundReport<F>> {
    check_alpha(alpha)?;
    if d1.size() != d2.size() {
        return domain("thm5 needs distributions of equal size");
    }
    if !(phi.is_finite() && phi > F::zero()) {
        return domain("phi must be finite and > 0");
    }
    let n = F::count(d1.size());
    let tol = F::normalization_tol(d1.size());
    let met = d1
        .probs()
        .iter()
        .zip(d2.probs())
        .all(|(&a, &b)| a <= b + phi + tol);
    let h1 = log_base.from_bits(renyi_entropy(d1, alpha)?);
    let h2 = log_base.from_bits(renyi_entropy(d2, alpha)?);
    let power_sum = d2.power_sum(alpha);
    let kappa = match variant {
        Variant::Literal => F::one(),
        Variant::Corrected => F::one() / log_base.ln::<F>(),
    };
    let (bound, direction) = if alpha < F::one() {
        let term = n * phi.powf(alpha) / power_sum;
        (h2 + kappa * term / (F::one() - alpha), Direction::Upper)
    } else {
        let inv = F::one() / alpha;
        let term = n.powf(inv) * phi / power_sum.powf(inv);
        (
            h2 - kappa * alpha / (alpha - F::one()) * term,
            Direction::Lower,
        )
    };
    Ok(BoundReport::evaluate(
        TheoremId::Thm5,
        variant,
        alpha,
        h1,
        bound,
        direction,
        met,
        params(&[
            ("phi", phi),
            ("N", n),
            ("power_sum_2", power_sum),
            ("renyi_2", h2),
            ("log_base", log_base.value()),
        ]),
    ))
}
