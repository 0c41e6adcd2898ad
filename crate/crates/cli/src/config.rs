//! Experiment configuration: JSON schema, parsing, and validation.
//!
//! A config file holds either one experiment object or an array of
//! them (a suite). Unknown keys are rejected. Example:
//!
//! ```json
//! {
//!   "dataset": "clamp.csv",
//!   "kind": "clamp",
//!   "label_column": "label",
//!   "model": "qnn",
//!   "subsample_fraction": 0.75,
//!   "seed": 7
//! }
//! ```
//!
//! Optional keys and their defaults: `pca_components` 16, `epochs` 20,
//! `shots` 0 (exact kernels), `svm_c` 1.0, `svm_gamma` null (use the
//! variance heuristic), `num_qubits` null (one qubit per retained
//! component), `allow_custom_fraction` false.

use std::path::{Path, PathBuf};

use qmlbench_core::data::DatasetSource;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The standard subsample fractions; anything else needs
/// `allow_custom_fraction`.
pub const STANDARD_FRACTIONS: [f64; 3] = [1.0, 0.75, 0.5];

/// Errors from reading, parsing, or validating configs.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed JSON, an unknown key, or an out-of-set enum value.
    #[error("cannot parse config: {0}")]
    Parse(#[from] serde_json::Error),
    /// A structurally valid config with a semantically bad field.
    #[error("config field `{field}`: {message}")]
    Field {
        field: &'static str,
        message: String,
    },
}

fn field_err(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field,
        message: message.into(),
    }
}

/// The seven benchmarked models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Qnn,
    HybridV1,
    HybridV2,
    ClassicalNn,
    ClassicalNnFair,
    Qsvm,
    ClassicalSvm,
}

impl ModelKind {
    /// All models in report-table order.
    pub const ALL: [ModelKind; 7] = [
        ModelKind::Qnn,
        ModelKind::HybridV1,
        ModelKind::HybridV2,
        ModelKind::ClassicalNn,
        ModelKind::ClassicalNnFair,
        ModelKind::Qsvm,
        ModelKind::ClassicalSvm,
    ];

    /// Human-readable name for report tables.
    pub fn display_name(&self) -> &'static str {
        match self {
            ModelKind::Qnn => "QNN",
            ModelKind::HybridV1 => "Hybrid_V1",
            ModelKind::HybridV2 => "Hybrid_V2",
            ModelKind::ClassicalNn => "Classical_NN",
            ModelKind::ClassicalNnFair => "Classical_NN_Fair",
            ModelKind::Qsvm => "QSVM",
            ModelKind::ClassicalSvm => "Classical_SVM",
        }
    }

    /// Whether the model trains through the circuit simulator.
    pub fn is_quantum(&self) -> bool {
        matches!(
            self,
            ModelKind::Qnn | ModelKind::HybridV1 | ModelKind::HybridV2 | ModelKind::Qsvm
        )
    }
}

/// Which pipeline the dataset goes through (`reveal` adds class
/// balancing before subsampling).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    Clamp,
    Reveal,
    Synthetic,
}

impl DatasetKind {
    pub fn source(&self) -> DatasetSource {
        match self {
            DatasetKind::Clamp => DatasetSource::Clamp,
            DatasetKind::Reveal => DatasetSource::Reveal,
            DatasetKind::Synthetic => DatasetSource::Synthetic,
        }
    }
}

fn default_label_column() -> String {
    "label".to_string()
}

fn default_fraction() -> f64 {
    1.0
}

fn default_pca_components() -> usize {
    16
}

fn default_epochs() -> usize {
    20
}

fn default_svm_c() -> f64 {
    1.0
}

/// One experiment: a dataset, a model, and the knobs of the shared
/// pipeline. See the module docs for the JSON schema and defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// CSV file with a header row and a binary label column.
    pub dataset: PathBuf,
    /// Pipeline variant for the dataset.
    pub kind: DatasetKind,
    /// Name of the label column.
    #[serde(default = "default_label_column")]
    pub label_column: String,
    /// Stratified subsample fraction, one of 1.0 / 0.75 / 0.5 unless
    /// `allow_custom_fraction` is set.
    #[serde(default = "default_fraction")]
    pub subsample_fraction: f64,
    /// Master seed; every random choice derives from it.
    #[serde(default)]
    pub seed: u64,
    /// Which model to train.
    pub model: ModelKind,
    /// Principal components to keep (clamped to what the training data
    /// supports).
    #[serde(default = "default_pca_components")]
    pub pca_components: usize,
    /// Training epochs for the gradient-trained models.
    #[serde(default = "default_epochs")]
    pub epochs: usize,
    /// Measurement shots per kernel entry; 0 means exact statevector
    /// kernels.
    #[serde(default)]
    pub shots: u64,
    /// Soft-margin box constraint for both SVMs.
    #[serde(default = "default_svm_c")]
    pub svm_c: f64,
    /// RBF bandwidth; omit to use 1/(d·Var).
    #[serde(default)]
    pub svm_gamma: Option<f64>,
    /// Run quantum models on this many qubits regardless of the
    /// retained component count (features are tiled cyclically when
    /// fewer are available, truncated when more).
    #[serde(default)]
    pub num_qubits: Option<usize>,
    /// Permit subsample fractions outside the standard set.
    #[serde(default)]
    pub allow_custom_fraction: bool,
}

impl ExperimentConfig {
    /// Semantic validation beyond the JSON schema. Every rejection
    /// names the offending field.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fraction = self.subsample_fraction;
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(field_err(
                "subsample_fraction",
                format!("{fraction} outside (0, 1]"),
            ));
        }
        let standard = STANDARD_FRACTIONS.contains(&fraction);
        if !standard && !self.allow_custom_fraction {
            return Err(field_err(
                "subsample_fraction",
                format!(
                    "{fraction} is not one of 1.0/0.75/0.5; set allow_custom_fraction to use it"
                ),
            ));
        }
        if self.pca_components == 0 {
            return Err(field_err("pca_components", "must be at least 1"));
        }
        if self.epochs == 0 {
            return Err(field_err("epochs", "must be at least 1"));
        }
        if !(self.svm_c > 0.0 && self.svm_c.is_finite()) {
            return Err(field_err(
                "svm_c",
                format!("{} must be positive", self.svm_c),
            ));
        }
        if let Some(gamma) = self.svm_gamma {
            if !(gamma > 0.0 && gamma.is_finite()) {
                return Err(field_err("svm_gamma", format!("{gamma} must be positive")));
            }
        }
        if self.num_qubits == Some(0) {
            return Err(field_err("num_qubits", "must be at least 1"));
        }
        if self.label_column.is_empty() {
            return Err(field_err("label_column", "must not be empty"));
        }
        Ok(())
    }
}

/// Parses a config file into a suite: a single object becomes a
/// one-experiment suite, an array is taken as-is. Every experiment is
/// validated.
pub fn load_configs(path: &Path) -> Result<Vec<ExperimentConfig>, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    parse_configs(&text)
}

/// [`load_configs`] on in-memory JSON.
pub fn parse_configs(text: &str) -> Result<Vec<ExperimentConfig>, ConfigError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let configs: Vec<ExperimentConfig> = if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    };
    for config in &configs {
        config.validate()?;
    }
    Ok(configs)
}
