use crate::error::{domain, Result};
use crate::graph::{generate_graph, Graph, GraphClass};
use crate::measures::{
    distribution_from_values, functional_values, partition_distribution, renyi_entropy,
    shannon_entropy, FunctionalKind, FunctionalSpec, FunctionalValues,
};
use crate::orbits::vertex_orbits;
use crate::scalar::Scalar;

use super::{check_alpha, params, BoundReport, Direction, TheoremId, Variant};

struct ClassIds {
    shannon: TheoremId,
    renyi: TheoremId,
    orbit_bound: TheoremId,
    functional_bound: TheoremId,
}

const STAR_IDS: ClassIds = ClassIds {
    shannon: TheoremId::StarShannonExact,
    renyi: TheoremId::StarRenyiExact,
    orbit_bound: TheoremId::StarOrbitBound,
    functional_bound: TheoremId::StarFunctionalBound,
};

const WHEEL_IDS: ClassIds = ClassIds {
    shannon: TheoremId::WheelShannonExact,
    renyi: TheoremId::WheelRenyiExact,
    orbit_bound: TheoremId::WheelOrbitBound,
    functional_bound: TheoremId::WheelFunctionalBound,
};

/// Sorted descending copy of `ln f`.
fn sorted_desc<F: Scalar>(fv: &FunctionalValues<F>) -> Vec<F> {
    let mut v = fv.ln_values.clone();
    v.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    v
}

/// Closed forms and bounds for graphs whose orbits are one hub plus `n − 1`
/// equivalent vertices (stars, and wheels from `n = 5`).
fn hub_reports<F: Scalar>(
    ids: &ClassIds,
    n: usize,
    alpha: F,
    h: F,
    h_alpha: F,
    fv: Option<&FunctionalValues<F>>,
    note: Option<&str>,
) -> Vec<BoundReport<F>> {
    let one = F::one();
    let nf = F::count(n);
    let m = nf - one;
    let applies = note.is_none();
    let finish = |r: BoundReport<F>| match note {
        Some(text) => r.with_note(text),
        None => r,
    };
    let mut out = Vec::new();

    let shannon_closed = nf.log2() - m / nf * m.log2();
    out.push(finish(BoundReport::evaluate(
        ids.shannon,
        Variant::Literal,
        alpha,
        h,
        shannon_closed,
        Direction::Equal,
        applies,
        params(&[("N", nf)]),
    )));

    let ln_sum = (one + m.powf(alpha)).log2();
    let renyi_closed = (ln_sum - alpha * nf.log2()) / (one - alpha);
    out.push(finish(BoundReport::evaluate(
        ids.renyi,
        Variant::Literal,
        alpha,
        h_alpha,
        renyi_closed,
        Direction::Equal,
        applies,
        params(&[("N", nf)]),
    )));

    // two blocks, ρ = n − 1
    let below_one = alpha < one;
    let direction = if below_one {
        Direction::Upper
    } else {
        Direction::Lower
    };
    for variant in Variant::BOTH {
        let penalty = match variant {
            Variant::Literal => {
                let rho_pow = m.powf(alpha - F::lit(2.0));
                if below_one {
                    (one - alpha) * rho_pow / F::LN_2()
                } else {
                    (alpha - one) / (rho_pow * F::LN_2())
                }
            }
            Variant::Corrected => {
                (one - alpha).abs() * m.powf((alpha - F::lit(2.0)).abs()) / F::LN_2()
            }
        };
        let bound = if below_one { h + penalty } else { h - penalty };
        out.push(finish(BoundReport::evaluate(
            ids.orbit_bound,
            variant,
            alpha,
            h_alpha,
            bound,
            direction,
            applies,
            params(&[("N", nf), ("rho", m), ("shannon", h)]),
        )));
    }

    if let Some(fv) = fv {
        let sorted = sorted_desc(fv);
        let met = sorted.len() >= 2 && sorted[0] > m.ln() && sorted[1] > F::zero();
        let h_f = renyi_entropy(&distribution_from_values(fv).expect("valid values"), alpha)
            .expect("alpha checked");
        let log_s = fv.ln_total / F::LN_2();
        let (bound, direction) = if below_one {
            (
                ln_sum / (one - alpha) - alpha / (one - alpha) * log_s,
                Direction::Lower,
            )
        } else {
            (
                ln_sum / (one - alpha) + alpha / (alpha - one) * log_s,
                Direction::Upper,
            )
        };
        out.push(finish(BoundReport::evaluate(
            ids.functional_bound,
            Variant::Literal,
            alpha,
            h_f,
            bound,
            direction,
            met && applies,
            params(&[("N", nf), ("S", fv.total()), ("ln_S", fv.ln_total)]),
        )));
    }
    out
}

fn path_reports<F: Scalar>(
    n: usize,
    alpha: F,
    h_alpha: F,
    fv: Option<&FunctionalValues<F>>,
) -> Vec<BoundReport<F>> {
    let one = F::one();
    let nf = F::count(n);
    let even = n.is_multiple_of(2);
    let mut out = Vec::new();
    let exact = BoundReport::evaluate(
        TheoremId::PathRenyiExact,
        Variant::Literal,
        alpha,
        h_alpha,
        (nf / F::lit(2.0)).log2(),
        Direction::Equal,
        even,
        params(&[("N", nf)]),
    );
    out.push(if even {
        exact
    } else {
        exact.with_note("odd n: the closed form needs even n, lhs is the direct value")
    });

    if let Some(fv) = fv {
        let above_two = fv.ln_values.iter().filter(|&&x| x > F::LN_2()).count();
        let met = even && 2 * above_two >= n;
        let h_f = renyi_entropy(&distribution_from_values(fv).expect("valid values"), alpha)
            .expect("alpha checked");
        let log_s = fv.ln_total / F::LN_2();
        let log_n = nf.log2();
        let (bound, direction) = if alpha < one {
            (
                log_n / (one - alpha) - alpha / (one - alpha) * log_s - one,
                Direction::Lower,
            )
        } else {
            (
                log_n / (one - alpha) + alpha / (alpha - one) * log_s - one,
                Direction::Upper,
            )
        };
        let r = BoundReport::evaluate(
            TheoremId::PathFunctionalBound,
            Variant::Literal,
            alpha,
            h_f,
            bound,
            direction,
            met,
            params(&[
                ("N", nf),
                ("S", fv.total()),
                ("ln_S", fv.ln_total),
                ("above_two", F::count(above_two)),
            ]),
        );
        out.push(if even {
            r
        } else {
            r.with_note("odd n: not covered by the closed form")
        });
    }
    out
}

/// Closed-form values and bounds for stars, wheels and paths.
///
/// Stars (`n ≥ 3`) and wheels (`n ≥ 5`) have orbit sizes `1, n − 1`, giving
///
/// - `H_Γ = log₂ n − ((n−1)/n) log₂(n−1)`,
/// - `H_{α,Γ} = [log₂(1 + (n−1)^α) − α log₂ n] / (1 − α)`,
///
/// plus the two-block Rényi/Shannon bound with `ρ = n − 1` in both variants.
/// With `fv`, the functional bound
/// `H_{α,f} ≷ log₂(1 + (n−1)^α)/(1−α) − α/(1−α) log₂ S` is checked when two
/// distinct vertices have `f > n − 1` and `f > 1`.
///
/// `W₄ = K₄` has a single orbit; its reports carry a note and `precondition_met = false`.
///
/// Paths: `H_{α,Γ}(P_n) = log₂(n/2)` for even `n`, and with `fv` the bound
/// `H_{α,f} ≷ log₂ n/(1−α) − α/(1−α) log₂ S − 1` when `f > 2` on at least `n/2` vertices.
pub fn class_closed_forms<F: Scalar>(
    class: GraphClass,
    n: usize,
    alpha: F,
    fv: Option<&FunctionalValues<F>>,
) -> Result<Vec<BoundReport<F>>> {
    check_alpha(alpha)?;
    match class {
        GraphClass::Star | GraphClass::Wheel | GraphClass::Path => {}
        other => return domain(format!("no closed forms for class {other}")),
    }
    let g = generate_graph(class, n, None)?;
    if let Some(fv) = fv {
        if fv.len() != n {
            return domain(format!(
                "functional has {} values, graph has {n} vertices",
                fv.len()
            ));
        }
    }
    let d = partition_distribution::<F>(&vertex_orbits(&g)?)?;
    let h = shannon_entropy(&d);
    let h_alpha = renyi_entropy(&d, alpha)?;
    Ok(match class {
        GraphClass::Star => hub_reports(&STAR_IDS, n, alpha, h, h_alpha, fv, None),
        GraphClass::Wheel => {
            let note = (n < 5).then_some("W4 is K4: one orbit, not the star profile");
            hub_reports(&WHEEL_IDS, n, alpha, h, h_alpha, fv, note)
        }
        _ => path_reports(n, alpha, h_alpha, fv),
    })
}

/// Two-sided bounds around `log₂ n` for the j-sphere functionals on a connected graph.
///
/// - Linear: `log₂ n ± α/|1−α| · log₂(c_max/c_min)`.
/// - Exponential: `log₂ n ± α(n−1)X/|1−α| · log₂ β`, `X = c_max − c_min`.
///   The literal form needs `β ≥ 1`; the corrected one uses `|log₂ β|`.
pub fn connected_functional_bounds<F: Scalar>(
    g: &Graph,
    spec: &FunctionalSpec<F>,
    alpha: F,
    variant: Variant,
) -> Result<BoundReport<F>> {
    check_alpha(alpha)?;
    if !g.is_connected() {
        return domain("connected-graph bounds need a connected graph");
    }
    let fv = functional_values(g, spec)?;
    let h = renyi_entropy(&distribution_from_values(&fv)?, alpha)?;
    let n = F::count(g.n());
    let log_n = n.log2();
    let (c_max, c_min) = (spec.c_max(), spec.c_min());
    let scale = alpha / (F::one() - alpha).abs();
    let mut extra = vec![("N", n), ("c_max", c_max), ("c_min", c_min)];
    let (theorem, half, met) = match spec.kind {
        FunctionalKind::Linear => (
            TheoremId::ConnectedLinear,
            scale * (c_max / c_min).log2(),
            true,
        ),
        FunctionalKind::Exponential => {
            let beta = spec.beta.expect("validated");
            let x = c_max - c_min;
            let log_beta = match variant {
                Variant::Literal => beta.log2(),
                Variant::Corrected => beta.log2().abs(),
            };
            extra.extend([("beta", beta), ("X", x)]);
            let met = variant == Variant::Corrected || beta >= F::one();
            (
                TheoremId::ConnectedExponential,
                scale * (n - F::one()) * x * log_beta,
                met,
            )
        }
    };
    extra.extend([("lower", log_n - half), ("upper", log_n + half)]);
    Ok(BoundReport::evaluate(
        theorem,
        variant,
        alpha,
        h,
        log_n + half,
        Direction::Within,
        met,
        params(&extra),
    ))
}
