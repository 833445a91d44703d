use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::inequalities::{TheoremId, Variant};
use crate::orbits::DEFAULT_ORBIT_CAP;

pub const DEFAULT_ALPHA_GRID: [f64; 8] = [0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 3.0];

/// How to draw a functional for one corpus graph. Coefficients `c_1..c_η`
/// are sampled uniformly from `coeff_range`, one draw per sphere radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecTemplate {
    Linear { coeff_range: (f64, f64) },
    Exponential { coeff_range: (f64, f64), beta: f64 },
}

impl SpecTemplate {
    pub fn coeff_range(&self) -> (f64, f64) {
        match *self {
            SpecTemplate::Linear { coeff_range }
            | SpecTemplate::Exponential { coeff_range, .. } => coeff_range,
        }
    }

    /// Short label used as the family name in sweep cells, e.g. `exp_b0.5`.
    pub fn label(&self) -> String {
        match self {
            SpecTemplate::Linear { .. } => "linear".to_string(),
            SpecTemplate::Exponential { beta, .. } => format!("exp_b{beta}"),
        }
    }

    pub fn defaults() -> Vec<SpecTemplate> {
        vec![
            SpecTemplate::Linear {
                coeff_range: (0.5, 2.0),
            },
            SpecTemplate::Exponential {
                coeff_range: (0.5, 2.0),
                beta: 0.5,
            },
            SpecTemplate::Exponential {
                coeff_range: (0.5, 2.0),
                beta: 2.0,
            },
        ]
    }
}

fn default_alpha_grid() -> Vec<f64> {
    DEFAULT_ALPHA_GRID.to_vec()
}

fn default_variants() -> Vec<Variant> {
    Variant::BOTH.to_vec()
}

fn default_theorems() -> Vec<TheoremId> {
    TheoremId::ALL.to_vec()
}

fn default_true() -> bool {
    true
}

fn default_max_redraws() -> usize {
    100
}

fn default_max_exemplars() -> usize {
    5
}

/// Sweep parameters. Every field except the first four has a default, so a
/// minimal JSON config is `{"seed": 1, "n_range": [3, 8], "edge_probabilities": [0.5], "trials_per_cell": 4}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub seed: u64,
    /// Inclusive vertex-count bounds.
    pub n_range: (usize, usize),
    pub edge_probabilities: Vec<f64>,
    /// Connected G(n, p) samples per `(n, p)` pair.
    pub trials_per_cell: usize,
    #[serde(default = "default_alpha_grid")]
    pub alpha_grid: Vec<f64>,
    #[serde(default = "SpecTemplate::defaults")]
    pub functional_specs: Vec<SpecTemplate>,
    /// Forms evaluated for bounds that have a literal and a corrected form.
    /// Single-form bounds are always reported, under `literal`.
    #[serde(default = "default_variants")]
    pub variants: Vec<Variant>,
    #[serde(default = "default_theorems")]
    pub theorems: Vec<TheoremId>,
    /// Adds stars, paths, cycles, wheels and complete graphs for every `n` in range.
    #[serde(default = "default_true")]
    pub include_battery: bool,
    #[serde(default = "default_max_redraws")]
    pub max_redraws: usize,
    /// Keep every cell in the report, not just the aggregates.
    #[serde(default = "default_true")]
    pub record_cells: bool,
    /// Violation exemplars kept per theorem/variant pair.
    #[serde(default = "default_max_exemplars")]
    pub max_exemplars: usize,
}

impl SweepConfig {
    /// A config with every default filled in.
    pub fn new(
        seed: u64,
        n_range: (usize, usize),
        edge_probabilities: Vec<f64>,
        trials_per_cell: usize,
    ) -> Self {
        Self {
            seed,
            n_range,
            edge_probabilities,
            trials_per_cell,
            alpha_grid: default_alpha_grid(),
            functional_specs: SpecTemplate::defaults(),
            variants: default_variants(),
            theorems: default_theorems(),
            include_battery: true,
            max_redraws: default_max_redraws(),
            record_cells: true,
            max_exemplars: default_max_exemplars(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)
            .map_err(|e| crate::error::Error::Domain(format!("bad sweep config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.n_range;
        if lo == 0 || lo > hi {
            return domain(format!("n_range [{lo}, {hi}] must satisfy 1 <= lo <= hi"));
        }
        if hi > DEFAULT_ORBIT_CAP {
            return domain(format!(
                "n_range upper end {hi} exceeds the orbit limit {DEFAULT_ORBIT_CAP}"
            ));
        }
        if self.trials_per_cell == 0 {
            return domain("trials_per_cell must be >= 1");
        }
        if let Some(p) = self
            .edge_probabilities
            .iter()
            .find(|p| !(0.0..=1.0).contains(*p))
        {
            return domain(format!("edge probability {p} outside [0, 1]"));
        }
        if let Some(a) = self
            .alpha_grid
            .iter()
            .find(|a| !(a.is_finite() && **a > 0.0) || **a == 1.0)
        {
            return domain(format!("alpha grid entry {a} must be finite, > 0 and != 1"));
        }
        for t in &self.functional_specs {
            let (lo, hi) = t.coeff_range();
            if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
                return domain(format!(
                    "coefficient range [{lo}, {hi}] must satisfy 0 < lo <= hi"
                ));
            }
            if let SpecTemplate::Exponential { beta, .. } = t {
                if !(beta.is_finite() && *beta > 0.0) {
                    return domain(format!("beta {beta} must be finite and > 0"));
                }
            }
        }
        Ok(())
    }

    pub fn wants(&self, theorem: TheoremId) -> bool {
        self.theorems.contains(&theorem)
    }
}
