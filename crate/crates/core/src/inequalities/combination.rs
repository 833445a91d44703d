use crate::error::{domain, Result};
use crate::measures::{distribution_from_values, renyi_entropy, FunctionalValues};
use crate::scalar::{log_add_exp, Scalar};

use super::{check_alpha, params, BoundReport, Direction, LogBase, TheoremId, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CombinationMode {
    /// Bound in terms of `H_{α,f₁}` alone.
    Single,
    /// Averaged bound in terms of `½ (H_{α,f₁} + H_{α,f₂})`.
    Symmetric,
}

/// Convex combination `f = c₁ f₁ + c₂ f₂` with `A_i = c_i S_i / (c₁ S₁ + c₂ S₂)`
/// and `R = Σ p₂^α / Σ p₁^α`.
///
/// Single, `α < 1`: `H_f < H₁ + α/(1−α) log A₁ + [κ] (A₂/A₁)^α R / (1−α)`.
/// Single, `α > 1`: `H_f > H₁ − α/(α−1) log A₁ − [κ] α/(α−1) (A₂/A₁) R^(1/α)`.
/// Symmetric forms average the two single bounds written from either side.
///
/// `κ = 1` (literal) or `1/ln(base)` (corrected); logs and entropies are in `log_base` units.
#[allow(clippy::too_many_arguments)]
pub fn thm6_convex_combination<F: Scalar>(
    fv1: &FunctionalValues<F>,
    fv2: &FunctionalValues<F>,
    c1: F,
    c2: F,
    alpha: F,
    variant: Variant,
    mode: CombinationMode,
    log_base: LogBase,
) -> Result<BoundReport<F>> {
    check_alpha(alpha)?;
    if fv1.len() != fv2.len() {
        return domain("thm6 needs both functionals on the same vertex set");
    }
    for c in [c1, c2] {
        if !(c.is_finite() && c > F::zero()) {
            return domain("combination weights c1, c2 must be finite and > 0");
        }
    }
    let (ln_c1, ln_c2) = (c1.ln(), c2.ln());
    let combined: Vec<F> = fv1
        .ln_values
        .iter()
        .zip(&fv2.ln_values)
        .map(|(&a, &b)| log_add_exp(ln_c1 + a, ln_c2 + b))
        .collect();
    let fv = FunctionalValues::from_ln(combined)?;
    let ln_s = log_add_exp(ln_c1 + fv1.ln_total, ln_c2 + fv2.ln_total);
    let ln_a1 = ln_c1 + fv1.ln_total - ln_s;
    let ln_a2 = ln_c2 + fv2.ln_total - ln_s;

    let d1 = distribution_from_values(fv1)?;
    let d2 = distribution_from_values(fv2)?;
    let h = log_base.from_bits(renyi_entropy(&distribution_from_values(&fv)?, alpha)?);
    let h1 = log_base.from_bits(renyi_entropy(&d1, alpha)?);
    let h2 = log_base.from_bits(renyi_entropy(&d2, alpha)?);
    let ln_ratio = d2.ln_power_sum(alpha) - d1.ln_power_sum(alpha);

    let base_ln = log_base.ln::<F>();
    let kappa = match variant {
        Variant::Literal => F::one(),
        Variant::Corrected => F::one() / base_ln,
    };
    let half = F::lit(0.5);
    let below_one = alpha < F::one();
    // x = (A₂/A₁)^α R for α < 1, (A₂/A₁) R^(1/α) for α > 1, kept in log space
    let ln_x = if below_one {
        alpha * (ln_a2 - ln_a1) + ln_ratio
    } else {
        (ln_a2 - ln_a1) + ln_ratio / alpha
    };
    let x = ln_x.exp();
    let (theorem, bound) = match (mode, below_one) {
        (CombinationMode::Single, true) => (
            TheoremId::Thm6,
            h1 + alpha / (F::one() - alpha) * ln_a1 / base_ln + kappa * x / (F::one() - alpha),
        ),
        (CombinationMode::Single, false) => {
            let k = alpha / (alpha - F::one());
            (TheoremId::Thm6, h1 - k * ln_a1 / base_ln - kappa * k * x)
        }
        (CombinationMode::Symmetric, true) => {
            let k = F::one() / (F::lit(2.0) * (F::one() - alpha));
            (
                TheoremId::Thm6Symmetric,
                half * (h1 + h2)
                    + alpha * k * (ln_a1 + ln_a2) / base_ln
                    + kappa * k * (x + x.recip()),
            )
        }
        (CombinationMode::Symmetric, false) => {
            let k = alpha / (F::lit(2.0) * (alpha - F::one()));
            (
                TheoremId::Thm6Symmetric,
                half * (h1 + h2) - k * (ln_a1 + ln_a2) / base_ln - kappa * k * (x + x.recip()),
            )
        }
    };
    let direction = if below_one {
        Direction::Upper
    } else {
        Direction::Lower
    };
    Ok(BoundReport::evaluate(
        theorem,
        variant,
        alpha,
        h,
        bound,
        direction,
        true,
        params(&[
            ("c1", c1),
            ("c2", c2),
            ("A1", ln_a1.exp()),
            ("A2", ln_a2.exp()),
            ("ln_S1", fv1.ln_total),
            ("ln_S2", fv2.ln_total),
            ("renyi_1", h1),
            ("renyi_2", h2),
            ("N", F::count(fv1.len())),
            ("log_base", log_base.value()),
        ]),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphClass};
    use crate::measures::{linear_functional_values, FunctionalSpec};

    #[test]
    fn identical_functionals() {
        let fv = FunctionalValues::<f64>::from_values(&[6.0, 4.0, 4.0, 4.0]).unwrap();
        for alpha in [0.5, 2.0] {
            for mode in [CombinationMode::Single, CombinationMode::Symmetric] {
                let r = thm6_convex_combination(
                    &fv,
                    &fv,
                    0.5,
                    0.5,
                    alpha,
                    Variant::Literal,
                    mode,
                    LogBase::Two,
                )
                .unwrap();
                assert!((r.param("A1").unwrap() - 0.5).abs() < 1e-15);
                assert!((r.lhs - r.param("renyi_1").unwrap()).abs() < 1e-12);
                assert_eq!(r.holds, Some(true), "alpha {alpha} {mode:?}");
            }
        }
    }

    #[test]
    fn star_with_constant_second_functional() {
        let g = generate_graph(GraphClass::Star, 4, None).unwrap();
        let f1 = linear_functional_values(&g, &FunctionalSpec::linear(vec![2.0, 1.0])).unwrap();
        let f2 = FunctionalValues::<f64>::from_values(&[1.0; 4]).unwrap();
        let run = |variant| {
            thm6_convex_combination(
                &f1,
                &f2,
                1.0,
                1.0,
                2.0,
                variant,
                CombinationMode::Single,
                LogBase::Two,
            )
            .unwrap()
        };
        let r = run(Variant::Literal);
        // f = (7, 5, 5, 5), S1 = 18, S2 = 4: A1 = 18/22
        assert!((r.param("A1").unwrap() - 18.0 / 22.0).abs() < 1e-14);
        let p: [f64; 4] = [7.0 / 22.0, 5.0 / 22.0, 5.0 / 22.0, 5.0 / 22.0];
        let h_f = -(p.iter().map(|x| x * x).sum::<f64>()).log2();
        assert!((r.lhs - h_f).abs() < 1e-12);
        // the literal lower bound 2.090110 overshoots H_f = 1.964667
        assert!((r.bound - 2.090_110_034_023_849).abs() < 1e-12);
        assert_eq!(r.holds, Some(false));
        let r = run(Variant::Corrected);
        assert!((r.bound - 1.896_902_078_342_397_3).abs() < 1e-12);
        assert_eq!(r.holds, Some(true));
    }

    #[test]
    fn rejects_bad_weights_and_sizes() {
        let a = FunctionalValues::from_values(&[1.0, 2.0]).unwrap();
        let b = FunctionalValues::from_values(&[1.0, 2.0, 3.0]).unwrap();
        let run = |c2: f64, x: &FunctionalValues<f64>, y: &FunctionalValues<f64>| {
            thm6_convex_combination(
                x,
                y,
                1.0,
                c2,
                0.5,
                Variant::Literal,
                CombinationMode::Single,
                LogBase::Two,
            )
        };
        assert!(run(0.0, &a, &a).is_err());
        assert!(run(1.0, &a, &b).is_err());
    }
}
