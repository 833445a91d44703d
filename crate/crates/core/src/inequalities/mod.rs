//! Checkable instances of Rényi/Shannon information inequalities on graphs.
//!
//! Nothing in this module asserts. Each operation evaluates both sides of a
//! bound and returns a [`BoundReport`] carrying the verdict, the signed slack
//! and the instance parameters, so that callers (the sweep harness, the CLI,
//! tests) decide what a violation means.
//!
//! Several bounds come in two [`Variant`]s. `Literal` transcribes the formula
//! as originally stated. `Corrected` repairs the derivation where a step does
//! not hold with base-2 logarithms:
//!
//! - the `ρ` factor of the Rényi/Shannon gap uses exponent `|α − 2|` and is
//!   always multiplied (the literal form uses `ρ^(α−2)`, multiplied for
//!   `α < 1` and divided for `α > 1`);
//! - wherever `log₂(1 + x)` is replaced by `x`, the corrected form uses the
//!   valid `x / ln 2`;
//! - `log₂ β` becomes `|log₂ β|` so that bases `β < 1` are handled.

mod classes;
mod combination;
mod dominance;
mod lemmas;
mod renyi_shannon;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

pub use classes::{class_closed_forms, connected_functional_bounds};
pub use combination::{thm6_convex_combination, CombinationMode};
pub use dominance::{
    thm3_partition_vs_functional, thm4_scaled_dominance, thm5_additive_dominance, PsiSource,
};
pub use lemmas::{check_lemma1, check_lemma2, check_lemma3, lemma_checks, LemmaCheck, LemmaId};
pub use renyi_shannon::{jensen_gap_bound, thm1_renyi_shannon_bounds};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `H_α ≥ H` for `α < 1`, `H_α ≤ H` for `α > 1`.
    Ordering,
    /// The intermediate Jensen-gap inequality behind the Rényi/Shannon bound.
    JensenGap,
    /// Rényi entropy bounded by Shannon entropy and `ρ`.
    Thm1,
    /// As `Thm1` with the extra `ε²` factor.
    Cor1Epsilon,
    /// Partition-based vs functional-based Rényi entropy.
    Thm3,
    /// Scaled dominance `p₁ ≤ ψ p₂`.
    Thm4,
    /// `f₁ ≤ f₂` pointwise, `ψ = S₂ / S₁`.
    Thm4Corollary,
    /// Additive dominance `p₁ ≤ p₂ + φ`.
    Thm5,
    /// Convex combination `f = c₁ f₁ + c₂ f₂`.
    Thm6,
    /// Averaged (symmetric) form of `Thm6`.
    Thm6Symmetric,
    StarShannonExact,
    StarRenyiExact,
    StarOrbitBound,
    StarFunctionalBound,
    WheelShannonExact,
    WheelRenyiExact,
    WheelOrbitBound,
    WheelFunctionalBound,
    PathRenyiExact,
    PathFunctionalBound,
    /// Two-sided bound for the linear j-sphere functional.
    ConnectedLinear,
    /// Two-sided bound for the exponential j-sphere functional.
    ConnectedExponential,
}

impl TheoremId {
    pub const ALL: [TheoremId; 22] = [
        TheoremId::Ordering,
        TheoremId::JensenGap,
        TheoremId::Thm1,
        TheoremId::Cor1Epsilon,
        TheoremId::Thm3,
        TheoremId::Thm4,
        TheoremId::Thm4Corollary,
        TheoremId::Thm5,
        TheoremId::Thm6,
        TheoremId::Thm6Symmetric,
        TheoremId::StarShannonExact,
        TheoremId::StarRenyiExact,
        TheoremId::StarOrbitBound,
        TheoremId::StarFunctionalBound,
        TheoremId::WheelShannonExact,
        TheoremId::WheelRenyiExact,
        TheoremId::WheelOrbitBound,
        TheoremId::WheelFunctionalBound,
        TheoremId::PathRenyiExact,
        TheoremId::PathFunctionalBound,
        TheoremId::ConnectedLinear,
        TheoremId::ConnectedExponential,
    ];

    /// Whether the bound has distinct literal and corrected forms.
    pub fn has_variants(self) -> bool {
        matches!(
            self,
            TheoremId::Thm1
                | TheoremId::Cor1Epsilon
                | TheoremId::Thm5
                | TheoremId::Thm6
                | TheoremId::Thm6Symmetric
                | TheoremId::StarOrbitBound
                | TheoremId::WheelOrbitBound
                | TheoremId::ConnectedExponential
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Ordering => "ordering",
            TheoremId::JensenGap => "jensen_gap",
            TheoremId::Thm1 => "thm1",
            TheoremId::Cor1Epsilon => "cor1_epsilon",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm4 => "thm4",
            TheoremId::Thm4Corollary => "thm4_corollary",
            TheoremId::Thm5 => "thm5",
            TheoremId::Thm6 => "thm6",
            TheoremId::Thm6Symmetric => "thm6_symmetric",
            TheoremId::StarShannonExact => "star_shannon_exact",
            TheoremId::StarRenyiExact => "star_renyi_exact",
            TheoremId::StarOrbitBound => "star_orbit_bound",
            TheoremId::StarFunctionalBound => "star_functional_bound",
            TheoremId::WheelShannonExact => "wheel_shannon_exact",
            TheoremId::WheelRenyiExact => "wheel_renyi_exact",
            TheoremId::WheelOrbitBound => "wheel_orbit_bound",
            TheoremId::WheelFunctionalBound => "wheel_functional_bound",
            TheoremId::PathRenyiExact => "path_renyi_exact",
            TheoremId::PathFunctionalBound => "path_functional_bound",
            TheoremId::ConnectedLinear => "connected_linear",
            TheoremId::ConnectedExponential => "connected_exponential",
        }
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown theorem {s:?}")))
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Literal,
    Corrected,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::Literal, Variant::Corrected];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::Corrected => "corrected",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Variant::Literal),
            "corrected" => Ok(Variant::Corrected),
            other => domain(format!("unknown variant {other:?}")),
        }
    }
}

/// Which side of `bound` the checked entropy must lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `lhs ≤ bound`
    Upper,
    /// `lhs ≥ bound`
    Lower,
    /// `lhs = bound` (closed forms)
    Equal,
    /// `params.lower ≤ lhs ≤ params.upper`; `bound` holds the upper end.
    Within,
}

/// Logarithm base the Thm 5/6 bounds are evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    #[default]
    Two,
    E,
}

impl LogBase {
    /// `ln(base)`.
    pub fn ln<F: Scalar>(self) -> F {
        match self {
            LogBase::Two => F::LN_2(),
            LogBase::E => F::one(),
        }
    }

    pub fn value<F: Scalar>(self) -> F {
        match self {
            LogBase::Two => F::lit(2.0),
            LogBase::E => F::E(),
        }
    }

    /// Converts an entropy in bits to this base.
    pub fn from_bits<F: Scalar>(self, bits: F) -> F {
        bits * F::LN_2() / self.ln::<F>()
    }

    pub fn log<F: Scalar>(self, x: F) -> F {
        x.ln() / self.ln::<F>()
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => domain(format!("unknown log base {other:?} (expected 2 or e)")),
        }
    }
}

/// One evaluated bound instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<F> {
    pub theorem: TheoremId,
    pub variant: Variant,
    pub alpha: F,
    /// The entropy being bounded, in bits (nats when `params.log_base` is `e`).
    pub lhs: F,
    pub bound: F,
    pub direction: Direction,
    pub precondition_met: bool,
    /// `None` when the precondition fails: not applicable, never a violation.
    pub holds: Option<bool>,
    /// Signed distance to the bound; negative means the bound is crossed.
    pub slack: F,
    pub params: BTreeMap<String, F>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<F: Scalar> BoundReport<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate(
        theorem: TheoremId,
        variant: Variant,
        alpha: F,
        lhs: F,
        bound: F,
        direction: Direction,
        precondition_met: bool,
        params: BTreeMap<String, F>,
    ) -> Self {
        let slack = match direction {
            Direction::Upper => bound - lhs,
            Direction::Lower => lhs - bound,
            Direction::Equal => -(lhs - bound).abs(),
            Direction::Within => {
                let lower = params.get("lower").copied().unwrap_or(F::neg_infinity());
                (bound - lhs).min(lhs - lower)
            }
        };
        let tol = match direction {
            Direction::Equal => F::exact_tol(),
            _ => F::bound_tol(),
        };
        let holds = precondition_met.then(|| slack >= -tol);
        Self {
            theorem,
            variant,
            alpha,
            lhs,
            bound,
            direction,
            precondition_met,
            holds,
            slack,
            params,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_violation(&self) -> bool {
        self.holds == Some(false)
    }

    pub fn param(&self, key: &str) -> Option<F> {
        self.params.get(key).copied()
    }
}

pub(crate) fn check_alpha<F: Scalar>(alpha: F) -> Result<()> {
    if !(alpha.is_finite() && alpha > F::zero()) {
        return domain(format!("alpha must be finite and > 0, got {alpha}"));
    }
    if alpha == F::one() {
        return domain("alpha = 1 is the Shannon limit; these bounds need alpha != 1");
    }
    Ok(())
}

/// Builds a parameter map from `(name, value)` pairs.
pub(crate) fn params<F: Scalar>(entries: &[(&str, F)]) -> BTreeMap<String, F> {
    entries
        .iter()
        .map(|(k, v)| ((*k).to_string(), *v))
        .collect()
}
