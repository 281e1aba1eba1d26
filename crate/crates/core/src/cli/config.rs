use serde::{Deserialize, Serialize};

use crate::caratheodory::DiskGrid;
use crate::error::{Error, Result};
use crate::inequalities::{DEFAULT_CIRCLE_GRID, DEFAULT_IDENTITY_TOL, DEFAULT_SLACK_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Settings for `salagean verify`. Every field has a default, so a config
/// file only needs the fields it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation order `N` of every constructed series.
    pub order: usize,
    pub max_k: usize,
    pub n_values: Vec<u32>,
    pub samples: usize,
    pub seed: u64,
    /// Points on the unit circle for `nu` searches.
    pub grid: usize,
    pub tolerance_slack: f64,
    pub tolerance_identity: f64,
    pub output_format: OutputFormat,
    /// `-` writes to standard output.
    pub output_path: String,
    pub max_atoms: usize,
    pub tolerance_membership: f64,
    pub membership_grid: DiskGrid,
    /// Emit rows for the unsquared exponentiated-series bound (which is known to fail).
    pub include_unsquared: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            order: 48,
            max_k: 12,
            n_values: vec![0, 1, 2, 3],
            samples: 100,
            seed: 1,
            grid: DEFAULT_CIRCLE_GRID,
            tolerance_slack: DEFAULT_SLACK_TOL,
            tolerance_identity: DEFAULT_IDENTITY_TOL,
            output_format: OutputFormat::Csv,
            output_path: "-".into(),
            max_atoms: 8,
            tolerance_membership: 1e-3,
            membership_grid: DiskGrid::default(),
            include_unsquared: false,
        }
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.max_k < 2 {
            return fail(format!("max_k = {} must be at least 2", self.max_k));
        }
        if self.order < self.max_k + 1 {
            return fail(format!(
                "order {} must be at least max_k + 1 = {}",
                self.order,
                self.max_k + 1
            ));
        }
        if self.samples < 1 {
            return fail("samples must be at least 1".into());
        }
        if self.grid < 8 {
            return fail(format!("grid {} must be at least 8", self.grid));
        }
        if self.max_atoms < 1 {
            return fail("max_atoms must be at least 1".into());
        }
        if self.n_values.is_empty() {
            return fail("n_values is empty".into());
        }
        for (name, t) in [
            ("tolerance_slack", self.tolerance_slack),
            ("tolerance_identity", self.tolerance_identity),
            ("tolerance_membership", self.tolerance_membership),
        ] {
            if !t.is_finite() {
                return fail(format!("{name} is not finite"));
            }
        }
        self.membership_grid.validate()
    }
}
