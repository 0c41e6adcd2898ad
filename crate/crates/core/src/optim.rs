//! Shared gradient-training machinery: hinge loss, the Adam optimizer,
//! and one mini-batch fit loop used by every gradient-trained model in
//! the workspace (quantum, hybrid, and classical alike).
//!
//! Keeping a single Adam and a single loop is deliberate: the benchmark
//! compares model *families*, so the optimizer must not be a confounder.
//! A cross-module identity test asserts the classical and quantum
//! trainers produce bit-identical updates on a shared gradient fixture.
//!
//! Determinism: batch order comes from a [`rand_chacha::ChaCha8Rng`]
//! seeded by [`TrainConfig::seed`]; per-sample gradients may be computed
//! in parallel but are reduced sequentially (parameter index outer,
//! sample index inner), so results do not depend on thread count.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

/// Errors raised by optimizers and the fit loop.
#[derive(Debug, Error)]
pub enum OptimError {
    /// Parameter/gradient/moment vectors must share one length.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    /// A gradient component was NaN or infinite.
    #[error("non-finite gradient component {value} at index {index}")]
    NonFiniteGradient { index: usize, value: f64 },
    /// Labels must be exactly −1.0 or +1.0.
    #[error("label at index {index} is {value}, expected -1 or +1")]
    BadLabel { index: usize, value: f64 },
    /// Training requires at least one sample.
    #[error("training set is empty")]
    EmptyTrainingSet,
    /// The label vector must match the model's sample count.
    #[error("model has {samples} samples but {labels} labels were given")]
    SampleCountMismatch { samples: usize, labels: usize },
    /// Epoch count must be at least 1.
    #[error("epochs must be >= 1, got {0}")]
    InvalidEpochs(usize),
    /// Batch size must be at least 1.
    #[error("batch_size must be >= 1, got {0}")]
    InvalidBatchSize(usize),
    /// Learning rate must be finite and non-negative (0 disables updates).
    #[error("learning_rate must be finite and >= 0, got {0}")]
    InvalidLearningRate(f64),
    /// Adam moment decay rates must lie in [0, 1).
    #[error("adam beta must lie in [0, 1), got {0}")]
    InvalidBeta(f64),
    /// Adam epsilon must be positive.
    #[error("adam epsilon must be > 0, got {0}")]
    InvalidEpsilon(f64),
    /// The initial parameter vector must match the model.
    #[error("model expects {expected} parameters, got {actual}")]
    ParameterCountMismatch { expected: usize, actual: usize },
}

/// Adam hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamParams {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        Self {
            learning_rate: 0.02,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-7,
        }
    }
}

/// First/second-moment accumulators for Adam, one slot per parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    first_moment: Vec<f64>,
    second_moment: Vec<f64>,
    step: u64,
}

impl AdamState {
    /// Fresh state (all moments zero) for `len` parameters.
    pub fn new(len: usize) -> Self {
        Self {
            first_moment: vec![0.0; len],
            second_moment: vec![0.0; len],
            step: 0,
        }
    }

    /// Number of completed update steps.
    pub fn step(&self) -> u64 {
        self.step
    }
}

/// One in-place Adam update with bias correction.
pub fn adam_update(
    theta: &mut [f64],
    gradients: &[f64],
    state: &mut AdamState,
    params: &AdamParams,
) -> Result<(), OptimError> {
    if gradients.len() != theta.len() {
        return Err(OptimError::LengthMismatch {
            expected: theta.len(),
            actual: gradients.len(),
        });
    }
    if state.first_moment.len() != theta.len() {
        return Err(OptimError::LengthMismatch {
            expected: theta.len(),
            actual: state.first_moment.len(),
        });
    }
    for (index, &g) in gradients.iter().enumerate() {
        if !g.is_finite() {
            return Err(OptimError::NonFiniteGradient { index, value: g });
        }
    }
    state.step += 1;
    let t = state.step as i32;
    let bias1 = 1.0 - params.beta1.powi(t);
    let bias2 = 1.0 - params.beta2.powi(t);
    for k in 0..theta.len() {
        let g = gradients[k];
        state.first_moment[k] = params.beta1 * state.first_moment[k] + (1.0 - params.beta1) * g;
        state.second_moment[k] =
            params.beta2 * state.second_moment[k] + (1.0 - params.beta2) * g * g;
        let m_hat = state.first_moment[k] / bias1;
        let v_hat = state.second_moment[k] / bias2;
        theta[k] -= params.learning_rate * m_hat / (v_hat.sqrt() + params.epsilon);
    }
    Ok(())
}

/// Checks a label is exactly −1.0 or +1.0.
fn check_label(index: usize, label: f64) -> Result<(), OptimError> {
    if label == 1.0 || label == -1.0 {
        Ok(())
    } else {
        Err(OptimError::BadLabel {
            index,
            value: label,
        })
    }
}

/// Hinge loss `max(0, 1 − label·prediction)` for labels in {−1, +1}.
pub fn hinge_loss(prediction: f64, label: f64) -> Result<f64, OptimError> {
    check_label(0, label)?;
    Ok((1.0 - label * prediction).max(0.0))
}

/// Subgradient of the hinge loss with respect to the prediction:
/// `−label` inside the margin, `0` once the margin is satisfied
/// (including exactly on the boundary).
pub fn hinge_gradient(prediction: f64, label: f64) -> Result<f64, OptimError> {
    check_label(0, label)?;
    if 1.0 - label * prediction > 0.0 {
        Ok(-label)
    } else {
        Ok(0.0)
    }
}

/// Maps a real-valued score to a class label; a score of exactly 0
/// resolves to +1 (documented tie-break used by every classifier here).
pub fn sign_class(value: f64) -> f64 {
    if value >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Training hyperparameters shared by all gradient-trained models.
///
/// `learning_rate` 0 is accepted and leaves parameters untouched — useful
/// for timing dry-runs and the no-update invariant tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 20,
            learning_rate: 0.02,
            batch_size: 32,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-7,
            seed: 0,
        }
    }
}

impl TrainConfig {
    /// Validates every field; called once at the top of [`fit`].
    pub fn validate(&self) -> Result<(), OptimError> {
        if self.epochs == 0 {
            return Err(OptimError::InvalidEpochs(self.epochs));
        }
        if self.batch_size == 0 {
            return Err(OptimError::InvalidBatchSize(self.batch_size));
        }
        if !self.learning_rate.is_finite() || self.learning_rate < 0.0 {
            return Err(OptimError::InvalidLearningRate(self.learning_rate));
        }
        for beta in [self.beta1, self.beta2] {
            if !(0.0..1.0).contains(&beta) {
                return Err(OptimError::InvalidBeta(beta));
            }
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(OptimError::InvalidEpsilon(self.epsilon));
        }
        Ok(())
    }

    /// The Adam slice of this configuration.
    pub fn adam_params(&self) -> AdamParams {
        AdamParams {
            learning_rate: self.learning_rate,
            beta1: self.beta1,
            beta2: self.beta2,
            epsilon: self.epsilon,
        }
    }
}

/// Loss, accuracy, and wall-clock time for one epoch, measured on the
/// full training set after that epoch's updates.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochStats {
    pub mean_loss: f64,
    pub accuracy: f64,
    pub seconds: f64,
}

/// Per-epoch training record; always exactly `config.epochs` entries.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainHistory {
    pub epochs: Vec<EpochStats>,
}

impl TrainHistory {
    /// Loss of the final epoch.
    pub fn final_loss(&self) -> Option<f64> {
        self.epochs.last().map(|e| e.mean_loss)
    }

    /// Accuracy of the final epoch.
    pub fn final_accuracy(&self) -> Option<f64> {
        self.epochs.last().map(|e| e.accuracy)
    }
}

/// A model trainable by the shared loop: a real-valued scorer over a
/// fixed sample set, differentiable with respect to a flat parameter
/// vector.
pub trait DifferentiableModel: Sync {
    /// Length of the flat trainable-parameter vector.
    fn num_parameters(&self) -> usize;

    /// Number of samples this model instance is bound to.
    fn num_samples(&self) -> usize;

    /// Real-valued output for sample `index` under `params`.
    fn output(&self, params: &[f64], index: usize) -> f64;

    /// Gradient of [`DifferentiableModel::output`] with respect to every
    /// parameter, for sample `index`.
    fn output_gradient(&self, params: &[f64], index: usize) -> Vec<f64>;
}

/// Mini-batch hinge-loss training with Adam.
///
/// Each epoch shuffles the sample order, walks it in batches of
/// `config.batch_size`, averages per-sample loss gradients over the
/// batch (chain rule: hinge subgradient times the model's output
/// gradient — skipped entirely for margin-satisfied samples), and
/// applies one Adam step per batch. Epoch statistics are measured on the
/// full training set after the epoch's updates.
pub fn fit<M: DifferentiableModel>(
    model: &M,
    params: &mut [f64],
    labels: &[f64],
    config: &TrainConfig,
) -> Result<TrainHistory, OptimError> {
    config.validate()?;
    if labels.is_empty() {
        return Err(OptimError::EmptyTrainingSet);
    }
    if labels.len() != model.num_samples() {
        return Err(OptimError::SampleCountMismatch {
            samples: model.num_samples(),
            labels: labels.len(),
        });
    }
    if params.len() != model.num_parameters() {
        return Err(OptimError::ParameterCountMismatch {
            expected: model.num_parameters(),
            actual: params.len(),
        });
    }
    for (index, &label) in labels.iter().enumerate() {
        check_label(index, label)?;
    }

    let num_params = params.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = AdamState::new(num_params);
    let adam = config.adam_params();
    let mut order: Vec<usize> = (0..labels.len()).collect();
    let mut history = TrainHistory::default();

    for _ in 0..config.epochs {
        let started = std::time::Instant::now();
        order.shuffle(&mut rng);
        for batch in order.chunks(config.batch_size) {
            // Per-sample gradients in parallel, indexed by batch slot so
            // the later reduction order is fixed.
            let per_sample: Vec<Option<(f64, Vec<f64>)>> = batch
                .par_iter()
                .map(|&sample| {
                    let upstream =
                        hinge_gradient(model.output(params, sample), labels[sample]).ok()?;
                    if upstream == 0.0 {
                        None
                    } else {
                        Some((upstream, model.output_gradient(params, sample)))
                    }
                })
                .collect();
            // Reduce: parameter index outer, sample index inner.
            let mut grad = vec![0.0; num_params];
            let scale = 1.0 / batch.len() as f64;
            for (slot, k_grad) in grad.iter_mut().enumerate() {
                for entry in per_sample.iter().flatten() {
                    let (upstream, sample_grad) = entry;
                    *k_grad += upstream * sample_grad[slot] * scale;
                }
            }
            adam_update(params, &grad, &mut state, &adam)?;
        }

        // Full-set evaluation after the epoch's updates.
        let outputs: Vec<f64> = (0..labels.len())
            .into_par_iter()
            .map(|sample| model.output(params, sample))
            .collect();
        let mut loss_sum = 0.0;
        let mut correct = 0usize;
        for (sample, &output) in outputs.iter().enumerate() {
            loss_sum += hinge_loss(output, labels[sample])?;
            if sign_class(output) == labels[sample] {
                correct += 1;
            }
        }
        history.epochs.push(EpochStats {
            mean_loss: loss_sum / labels.len() as f64,
            accuracy: correct as f64 / labels.len() as f64,
            seconds: started.elapsed().as_secs_f64(),
        });
    }
    Ok(history)
}
