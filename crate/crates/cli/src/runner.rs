//! Experiment execution: the shared data pipeline, per-model training
//! and evaluation, and wall-clock measurement.
//!
//! Every random choice derives from the experiment seed through fixed
//! stream tags, so a config reruns identically across machines and
//! thread counts; only the measured seconds change.
//!
//! The measured window covers training plus prediction — including
//! circuit encoding and, for the kernel method, Gram and cross-kernel
//! construction, which dominates its cost — and excludes file loading,
//! preprocessing, and the PCA fit.

use std::time::Instant;

use ndarray::{Array2, ArrayView2};
use qmlbench_core::classical::{
    default_rbf_gamma, dense_parameter_count, dense_train, svm_predict, svm_train, DenseNetwork,
    RbfSvm,
};
use qmlbench_core::data::{
    balance_classes, fit_standardizer, load_csv, one_hot_encode, pca_fit, stratified_subsample,
    train_test_split, ColumnData, Dataset, SplitSpec,
};
use qmlbench_core::encoding::{angle_encode, fit_feature_scaler, EncodedSample, FeatureScaler};
use qmlbench_core::optim::{sign_class, TrainConfig};
use qmlbench_core::qkernel::{kernel_cross, kernel_matrix, FeatureMapSpec, KernelMode};
use qmlbench_core::rng::mix;
use qmlbench_core::vqc::{HybridModel, VqcModel};
use thiserror::Error;

use crate::config::{ConfigError, DatasetKind, ExperimentConfig, ModelKind};
use crate::report::{BenchmarkReport, ReportRow};

/// SMO convergence tolerance shared by both SVMs.
pub const SVM_TOL: f64 = 1e-3;

/// Kernel inputs are compressed from `[0, 1]` to `[0, ½]` before the
/// feature map: its phases are 2π-periodic in each feature, so a full
/// unit span would alias a feature's minimum onto its maximum and make
/// the two extremes indistinguishable.
pub const KERNEL_FEATURE_SPAN: f64 = 0.5;

// Stream tags separating the pipeline's random choices; each stage
// seeds its own generator from `mix(experiment_seed, [TAG])`.
const BALANCE_STREAM: u64 = 10;
const SUBSAMPLE_STREAM: u64 = 11;
const SPLIT_STREAM: u64 = 12;
const MODEL_STREAM: u64 = 13;
const SHUFFLE_STREAM: u64 = 14;
const KERNEL_STREAM: u64 = 15;

/// Errors from running experiments. Pipeline failures carry the stage
/// that raised them so suite logs point at the broken step.
#[derive(Debug, Error)]
pub enum RunnerError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// A suite needs at least one experiment.
    #[error("config suite is empty")]
    EmptySuite,
    /// A pipeline stage failed; `stage` is one of load / one-hot /
    /// balance / subsample / split / features / standardize / pca /
    /// scale / encode / train / predict.
    #[error("stage {stage}: {message}")]
    Stage {
        stage: &'static str,
        message: String,
    },
}

fn stage_err(stage: &'static str, err: impl std::fmt::Display) -> RunnerError {
    RunnerError::Stage {
        stage,
        message: err.to_string(),
    }
}

/// Everything the models see: one preprocessing pass feeds all seven,
/// so per-model timing differences cannot hide in the pipeline.
#[derive(Debug, Clone)]
pub struct PreparedData {
    /// Standardized, PCA-projected training rows (classical models).
    pub classical_train: Array2<f64>,
    /// Held-out rows through the same transforms.
    pub classical_test: Array2<f64>,
    /// Min-max-scaled training rows tiled to the register width
    /// (quantum models).
    pub quantum_train: Array2<f64>,
    /// Held-out rows through the same scaling and tiling.
    pub quantum_test: Array2<f64>,
    /// Signed training labels (−1 / +1).
    pub train_labels: Vec<f64>,
    /// Signed held-out labels.
    pub test_labels: Vec<f64>,
    /// Qubits the quantum models run on.
    pub quantum_width: usize,
    /// Percent of training variance the PCA kept.
    pub explained_variance_percent: f64,
    /// `file (kind, rows, fraction)`, for report footers.
    pub descriptor: String,
}

/// Runs the shared pipeline: load → one-hot → balance (reveal only) →
/// subsample → 70/30 split → standardize → PCA for the classical view,
/// plus min-max scaling and cyclic tiling to the register width for
/// the quantum view. All statistics are fit on training rows only.
pub fn prepare(config: &ExperimentConfig) -> Result<PreparedData, RunnerError> {
    let seed = config.seed;
    let mut dataset = load_csv(&config.dataset, &config.label_column, config.kind.source())
        .map_err(|e| stage_err("load", e))?;

    let categorical: Vec<String> = dataset
        .column_names()
        .iter()
        .filter(|name| matches!(dataset.column(name), Some(ColumnData::Categorical(_))))
        .cloned()
        .collect();
    for name in &categorical {
        dataset = one_hot_encode(&dataset, name).map_err(|e| stage_err("one-hot", e))?;
    }

    if config.kind == DatasetKind::Reveal {
        dataset = balance_classes(&dataset, mix(seed, &[BALANCE_STREAM]))
            .map_err(|e| stage_err("balance", e))?;
    }
    if config.subsample_fraction < 1.0 {
        dataset = stratified_subsample(
            &dataset,
            config.subsample_fraction,
            mix(seed, &[SUBSAMPLE_STREAM]),
        )
        .map_err(|e| stage_err("subsample", e))?;
    }
    let descriptor = describe(&dataset, config);

    let split = SplitSpec::standard(config.subsample_fraction, mix(seed, &[SPLIT_STREAM]))
        .map_err(|e| stage_err("split", e))?;
    let (train, test) = train_test_split(&dataset, &split).map_err(|e| stage_err("split", e))?;
    let train_labels = train.signed_labels();
    let test_labels = test.signed_labels();
    let train_features = train.features().map_err(|e| stage_err("features", e))?;
    let test_features = test.features().map_err(|e| stage_err("features", e))?;

    let standardizer =
        fit_standardizer(train_features.view()).map_err(|e| stage_err("standardize", e))?;
    let train_std = standardizer
        .transform(train_features.view())
        .map_err(|e| stage_err("standardize", e))?;
    let test_std = standardizer
        .transform(test_features.view())
        .map_err(|e| stage_err("standardize", e))?;

    let k_max = (train_std.nrows() - 1).min(train_std.ncols()).max(1);
    let k = config.pca_components.min(k_max);
    let pca = pca_fit(train_std.view(), k).map_err(|e| stage_err("pca", e))?;
    let explained_variance_percent = pca.explained_variance_ratios().iter().sum::<f64>() * 100.0;
    let classical_train = pca
        .transform(train_std.view())
        .map_err(|e| stage_err("pca", e))?;
    let classical_test = pca
        .transform(test_std.view())
        .map_err(|e| stage_err("pca", e))?;

    let quantum_width = config.num_qubits.unwrap_or(k);
    let scaler = fit_feature_scaler(classical_train.view()).map_err(|e| stage_err("scale", e))?;
    let quantum_train = scale_and_tile(classical_train.view(), &scaler, quantum_width)?;
    let quantum_test = scale_and_tile(classical_test.view(), &scaler, quantum_width)?;

    Ok(PreparedData {
        classical_train,
        classical_test,
        quantum_train,
        quantum_test,
        train_labels,
        test_labels,
        quantum_width,
        explained_variance_percent,
        descriptor,
    })
}

fn describe(dataset: &Dataset, config: &ExperimentConfig) -> String {
    let file = config
        .dataset
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| config.dataset.display().to_string());
    format!(
        "{} ({}, {} rows, fraction {})",
        file,
        dataset.source(),
        dataset.num_rows(),
        config.subsample_fraction
    )
}

/// Min-max scales each row and tiles it cyclically to `width` entries
/// (feature `j` of the output reads scaled feature `j % k`), so a
/// register wider than the retained components repeats features and a
/// narrower one truncates them.
fn scale_and_tile(
    rows: ArrayView2<'_, f64>,
    scaler: &FeatureScaler,
    width: usize,
) -> Result<Array2<f64>, RunnerError> {
    let k = scaler.num_features();
    let mut out = Array2::zeros((rows.nrows(), width));
    for (i, row) in rows.rows().into_iter().enumerate() {
        let scaled = scaler
            .transform(&row.to_vec())
            .map_err(|e| stage_err("scale", e))?;
        for j in 0..width {
            out[[i, j]] = scaled[j % k];
        }
    }
    Ok(out)
}

/// An identity scaler over `[0, 1]^width`, for samples that were
/// already min-max scaled before tiling.
fn unit_scaler(width: usize) -> Result<FeatureScaler, RunnerError> {
    let mut probe = Array2::zeros((2, width));
    probe.row_mut(1).fill(1.0);
    fit_feature_scaler(probe.view()).map_err(|e| stage_err("encode", e))
}

/// Hidden width of the parameter-matched dense baseline. No integer
/// hidden width gives the reveal pipeline a 51-parameter stack, so it
/// ships with the nearest stack one node narrower.
fn fair_hidden(kind: DatasetKind) -> usize {
    match kind {
        DatasetKind::Reveal => 3,
        DatasetKind::Clamp | DatasetKind::Synthetic => 4,
    }
}

/// Trainable-parameter count a model reports, or `None` for the SVMs
/// (their support set is data-dependent, rendered as "-").
pub fn parameter_count(
    model: ModelKind,
    classical_width: usize,
    quantum_width: usize,
    kind: DatasetKind,
) -> Option<usize> {
    match model {
        ModelKind::Qnn => Some(2 * quantum_width),
        ModelKind::HybridV1 => Some(2 * quantum_width + dense_parameter_count(&[1, 4, 1])),
        ModelKind::HybridV2 => Some(2 * quantum_width + dense_parameter_count(&[1, 10, 1])),
        ModelKind::ClassicalNn => Some(dense_parameter_count(&[classical_width, 8, 4, 1])),
        ModelKind::ClassicalNnFair => Some(dense_parameter_count(&[
            classical_width,
            fair_hidden(kind),
            1,
        ])),
        ModelKind::Qsvm | ModelKind::ClassicalSvm => None,
    }
}

fn train_config(config: &ExperimentConfig) -> TrainConfig {
    TrainConfig {
        epochs: config.epochs,
        seed: mix(config.seed, &[SHUFFLE_STREAM]),
        ..TrainConfig::default()
    }
}

struct Timed {
    accuracy_percent: f64,
    seconds: f64,
}

fn accuracy_percent(predictions: &[f64], labels: &[f64]) -> f64 {
    if labels.is_empty() {
        return 0.0;
    }
    let hits = predictions
        .iter()
        .zip(labels)
        .filter(|(p, l)| **p * **l > 0.0)
        .count();
    100.0 * hits as f64 / labels.len() as f64
}

fn encode_all(
    rows: ArrayView2<'_, f64>,
    scaler: &FeatureScaler,
) -> Result<Vec<EncodedSample>, RunnerError> {
    rows.rows()
        .into_iter()
        .map(|row| angle_encode(&row.to_vec(), scaler).map_err(|e| stage_err("encode", e)))
        .collect()
}

fn run_model(config: &ExperimentConfig, data: &PreparedData) -> Result<Timed, RunnerError> {
    match config.model {
        ModelKind::Qnn | ModelKind::HybridV1 | ModelKind::HybridV2 => run_quantum_net(config, data),
        ModelKind::ClassicalNn | ModelKind::ClassicalNnFair => run_dense_net(config, data),
        ModelKind::Qsvm => run_quantum_kernel(config, data),
        ModelKind::ClassicalSvm => run_rbf_svm(config, data),
    }
}

fn run_quantum_net(config: &ExperimentConfig, data: &PreparedData) -> Result<Timed, RunnerError> {
    let scaler = unit_scaler(data.quantum_width)?;
    let train_cfg = train_config(config);
    let model_seed = mix(config.seed, &[MODEL_STREAM]);
    let start = Instant::now();
    let train_samples = encode_all(data.quantum_train.view(), &scaler)?;
    let test_samples = encode_all(data.quantum_test.view(), &scaler)?;
    let predictions = match config.model {
        ModelKind::Qnn => {
            let mut model =
                VqcModel::new(data.quantum_width, model_seed).map_err(|e| stage_err("train", e))?;
            model
                .train(&train_samples, &data.train_labels, &train_cfg)
                .map_err(|e| stage_err("train", e))?;
            test_samples
                .iter()
                .map(|s| model.predict_class(s).map_err(|e| stage_err("predict", e)))
                .collect::<Result<Vec<_>, _>>()?
        }
        ModelKind::HybridV1 | ModelKind::HybridV2 => {
            let hidden = if config.model == ModelKind::HybridV1 {
                4
            } else {
                10
            };
            let mut model = HybridModel::new(data.quantum_width, hidden, model_seed)
                .map_err(|e| stage_err("train", e))?;
            model
                .train(&train_samples, &data.train_labels, &train_cfg)
                .map_err(|e| stage_err("train", e))?;
            test_samples
                .iter()
                .map(|s| model.predict_class(s).map_err(|e| stage_err("predict", e)))
                .collect::<Result<Vec<_>, _>>()?
        }
        _ => unreachable!("dispatch sends only quantum nets here"),
    };
    let seconds = start.elapsed().as_secs_f64();
    Ok(Timed {
        accuracy_percent: accuracy_percent(&predictions, &data.test_labels),
        seconds,
    })
}

fn run_dense_net(config: &ExperimentConfig, data: &PreparedData) -> Result<Timed, RunnerError> {
    let input = data.classical_train.ncols();
    let widths: Vec<usize> = match config.model {
        ModelKind::ClassicalNn => vec![input, 8, 4, 1],
        _ => vec![input, fair_hidden(config.kind), 1],
    };
    let train_cfg = train_config(config);
    let model_seed = mix(config.seed, &[MODEL_STREAM]);
    let start = Instant::now();
    let net = DenseNetwork::new(&widths, model_seed).map_err(|e| stage_err("train", e))?;
    let (net, _history) = dense_train(
        net,
        data.classical_train.view(),
        &data.train_labels,
        &train_cfg,
    )
    .map_err(|e| stage_err("train", e))?;
    let predictions = data
        .classical_test
        .rows()
        .into_iter()
        .map(|row| {
            net.forward(&row.to_vec())
                .map(sign_class)
                .map_err(|e| stage_err("predict", e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(Timed {
        accuracy_percent: accuracy_percent(&predictions, &data.test_labels),
        seconds,
    })
}

fn run_quantum_kernel(
    config: &ExperimentConfig,
    data: &PreparedData,
) -> Result<Timed, RunnerError> {
    let spec = FeatureMapSpec::new(data.quantum_width, FeatureMapSpec::DEFAULT_DEPTH)
        .map_err(|e| stage_err("train", e))?;
    let mode = if config.shots == 0 {
        KernelMode::Exact
    } else {
        KernelMode::Sampled {
            shots: config.shots,
            seed: mix(config.seed, &[KERNEL_STREAM]),
        }
    };
    let start = Instant::now();
    let kernel_train = data.quantum_train.mapv(|v| KERNEL_FEATURE_SPAN * v);
    let kernel_test = data.quantum_test.mapv(|v| KERNEL_FEATURE_SPAN * v);
    let gram =
        kernel_matrix(kernel_train.view(), &spec, mode).map_err(|e| stage_err("train", e))?;
    let model = svm_train(gram.values(), &data.train_labels, config.svm_c, SVM_TOL)
        .map_err(|e| stage_err("train", e))?;
    let cross = kernel_cross(kernel_test.view(), kernel_train.view(), &spec, mode)
        .map_err(|e| stage_err("predict", e))?;
    let predictions = cross
        .rows()
        .into_iter()
        .map(|row| svm_predict(&model, &row.to_vec()).map_err(|e| stage_err("predict", e)))
        .collect::<Result<Vec<_>, _>>()?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(Timed {
        accuracy_percent: accuracy_percent(&predictions, &data.test_labels),
        seconds,
    })
}

fn run_rbf_svm(config: &ExperimentConfig, data: &PreparedData) -> Result<Timed, RunnerError> {
    let gamma = config
        .svm_gamma
        .unwrap_or_else(|| default_rbf_gamma(data.classical_train.view()));
    let start = Instant::now();
    let svm = RbfSvm::fit(
        data.classical_train.view(),
        &data.train_labels,
        gamma,
        config.svm_c,
        SVM_TOL,
    )
    .map_err(|e| stage_err("train", e))?;
    let predictions = data
        .classical_test
        .rows()
        .into_iter()
        .map(|row| {
            svm.predict(&row.to_vec())
                .map_err(|e| stage_err("predict", e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(Timed {
        accuracy_percent: accuracy_percent(&predictions, &data.test_labels),
        seconds,
    })
}

/// Runs one experiment end to end and returns its report row.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ReportRow, RunnerError> {
    config.validate()?;
    let data = prepare(config)?;
    let timed = run_model(config, &data)?;
    let parameters = parameter_count(
        config.model,
        data.classical_train.ncols(),
        data.quantum_width,
        config.kind,
    );
    Ok(ReportRow {
        model: config.model.display_name().to_string(),
        parameters,
        accuracy_percent: timed.accuracy_percent,
        seconds: timed.seconds,
        explained_variance_percent: data.explained_variance_percent,
        seed: config.seed,
        dataset: data.descriptor,
    })
}

/// One experiment of a suite that failed, with enough context to log.
#[derive(Debug)]
pub struct SuiteFailure {
    /// Position in the config list.
    pub index: usize,
    /// Display name of the model that failed.
    pub model: String,
    pub error: RunnerError,
}

/// A finished suite: the rows that succeeded plus any failures.
#[derive(Debug)]
pub struct SuiteOutcome {
    pub report: BenchmarkReport,
    pub failures: Vec<SuiteFailure>,
}

/// Runs experiments sequentially (keeping per-row timing honest),
/// collecting rows in config order. A failing experiment is recorded
/// and the suite continues.
pub fn run_suite(configs: &[ExperimentConfig]) -> Result<SuiteOutcome, RunnerError> {
    if configs.is_empty() {
        return Err(RunnerError::EmptySuite);
    }
    let mut report = BenchmarkReport::default();
    let mut failures = Vec::new();
    for (index, config) in configs.iter().enumerate() {
        match run_experiment(config) {
            Ok(row) => report.rows.push(row),
            Err(error) => failures.push(SuiteFailure {
                index,
                model: config.model.display_name().to_string(),
                error,
            }),
        }
    }
    Ok(SuiteOutcome { report, failures })
}
