use crate::error::Result;
use crate::measures::{distribution_stats, renyi_entropy, shannon_entropy, Distribution};
use crate::scalar::Scalar;

use super::{check_alpha, params, BoundReport, Direction, TheoremId, Variant};

/// `Σ_{i,k} p_k p_i (x_i − x_k)² / (x_k x_i)` with `x = p^(α−1)`.
///
/// Each term is `p_i p_k (2 sinh(t/2))²` with `t = (α−1) ln(p_i/p_k)`, which
/// stays finite where the raw powers would not.
fn jensen_pair_sum<F: Scalar>(d: &Distribution<F>, alpha: F) -> F {
    let a1 = alpha - F::one();
    let two = F::lit(2.0);
    let mut acc = F::zero();
    for &pi in d.probs() {
        for &pk in d.probs() {
            let t = a1 * (pi.ln() - pk.ln());
            let s = two * (t / two).sinh();
            acc = acc + pi * pk * s * s;
        }
    }
    acc
}

/// The Jensen-gap step: `|H_α − H| ≤ Σ_{i,k} p_k p_i (x_i − x_k)² / (x_k x_i) / (2 ln 2 |1 − α|)`.
///
/// Reported as `H_α − H ≤ B` for `α < 1` and `H_α − H ≥ −B` for `α > 1`.
pub fn jensen_gap_bound<F: Scalar>(d: &Distribution<F>, alpha: F) -> Result<BoundReport<F>> {
    check_alpha(alpha)?;
    let h = shannon_entropy(d);
    let h_alpha = renyi_entropy(d, alpha)?;
    let pair_sum = jensen_pair_sum(d, alpha);
    let b = pair_sum / (F::lit(2.0) * F::LN_2() * (F::one() - alpha).abs());
    let (bound, direction) = if alpha < F::one() {
        (b, Direction::Upper)
    } else {
        (-b, Direction::Lower)
    };
    Ok(BoundReport::evaluate(
        TheoremId::JensenGap,
        Variant::Literal,
        alpha,
        h_alpha - h,
        bound,
        direction,
        true,
        params(&[
            ("shannon", h),
            ("renyi", h_alpha),
            ("pair_sum", pair_sum),
            ("N", F::count(d.size())),
        ]),
    ))
}

/// Rényi entropy bounded by Shannon entropy. Returns two reports:
///
/// 1. the ordering `H_α ≥ H` (`α < 1`) or `H_α ≤ H` (`α > 1`);
/// 2. the refined bound, [`TheoremId::Thm1`] or with `use_epsilon` [`TheoremId::Cor1Epsilon`].
///
/// Literal, `0 < α < 1`: `H_α < H + N(N−1)(1−α)[ε²]ρ^(α−2) / (2 ln 2)`.
/// Literal, `α > 1`: `H_α > H − (α−1)N(N−1) / (2 ln 2 · ρ^(α−2))` (no `ε²`, as stated).
/// Corrected: `ρ^|α−2|` multiplied in both regimes, `ε²` in both when requested.
///
/// Applied to a partition distribution, `N` plays the role of the block count `k`.
pub fn thm1_renyi_shannon_bounds<F: Scalar>(
    d: &Distribution<F>,
    alpha: F,
    variant: Variant,
    use_epsilon: bool,
) -> Result<Vec<BoundReport<F>>> {
    check_alpha(alpha)?;
    let h = shannon_entropy(d);
    let h_alpha = renyi_entropy(d, alpha)?;
    let stats = distribution_stats(d);
    let n = F::count(d.size());
    let pairs = n * (n - F::one());
    let two_ln2 = F::lit(2.0) * F::LN_2();
    let below_one = alpha < F::one();
    let eps2 = stats.epsilon * stats.epsilon;

    let ordering = BoundReport::evaluate(
        TheoremId::Ordering,
        variant,
        alpha,
        h_alpha,
        h,
        if below_one {
            Direction::Lower
        } else {
            Direction::Upper
        },
        true,
        params(&[("N", n)]),
    );

    let penalty = match variant {
        Variant::Literal => {
            let rho_pow = stats.rho.powf(alpha - F::lit(2.0));
            if below_one {
                let e = if use_epsilon { eps2 } else { F::one() };
                pairs * (F::one() - alpha) * e * rho_pow / two_ln2
            } else {
                (alpha - F::one()) * pairs / (two_ln2 * rho_pow)
            }
        }
        Variant::Corrected => {
            let rho_pow = stats.rho.powf((alpha - F::lit(2.0)).abs());
            let e = if use_epsilon { eps2 } else { F::one() };
            (F::one() - alpha).abs() * pairs * e * rho_pow / two_ln2
        }
    };
    let (bound, direction) = if below_one {
        (h + penalty, Direction::Upper)
    } else {
        (h - penalty, Direction::Lower)
    };
    let refined = BoundReport::evaluate(
        if use_epsilon {
            TheoremId::Cor1Epsilon
        } else {
            TheoremId::Thm1
        },
        variant,
        alpha,
        h_alpha,
        bound,
        direction,
        true,
        params(&[
            ("N", n),
            ("rho", stats.rho),
            ("epsilon", stats.epsilon),
            ("shannon", h),
        ]),
    );
    Ok(vec![ordering, refined])
}
