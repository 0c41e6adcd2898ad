//! Classical learners used as benchmark counterparts: a support-vector
//! machine trained by sequential minimal optimization over precomputed
//! Gram matrices (with an RBF convenience wrapper), and small dense
//! tanh networks trained by backpropagation through the shared
//! [`crate::optim`] loop.
//!
//! Labels are real values restricted to {−1, +1} everywhere, matching
//! the hinge-loss convention of the quantum models.

mod dense;
mod svm;

pub use dense::{dense_parameter_count, dense_train, DenseNetwork};
pub use svm::{
    default_rbf_gamma, rbf_kernel, svm_decision, svm_predict, svm_train, KernelSpec, RbfSvm,
    SvmModel,
};

use thiserror::Error;

use crate::optim::OptimError;

/// Errors raised by classical learners.
#[derive(Debug, Error)]
pub enum ClassicalError {
    /// Kernel inputs must have equal length.
    #[error("vectors have different lengths: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    /// RBF gamma must be positive and finite.
    #[error("gamma must be positive and finite, got {0}")]
    BadGamma(f64),
    /// The Gram matrix must be square.
    #[error("gram matrix is {rows}x{cols}, expected square")]
    GramNotSquare { rows: usize, cols: usize },
    /// The Gram matrix must match the label count.
    #[error("gram matrix has {gram} rows but {labels} labels were given")]
    GramSizeMismatch { gram: usize, labels: usize },
    /// The Gram matrix must be symmetric.
    #[error("gram matrix is not symmetric at ({i}, {j}): {diff:e}")]
    NonSymmetricGram { i: usize, j: usize, diff: f64 },
    /// SVM training needs both classes present.
    #[error("training labels contain only one class")]
    SingleClass,
    /// Labels must be −1 or +1.
    #[error("label at index {index} is {value}, expected -1 or +1")]
    BadLabel { index: usize, value: f64 },
    /// Training and prediction need at least two samples.
    #[error("need at least 2 training samples, got {0}")]
    TooFewSamples(usize),
    /// Regularization C must be positive and finite.
    #[error("C must be positive and finite, got {0}")]
    BadRegularization(f64),
    /// A kernel row must align with the training set.
    #[error("kernel row has length {actual}, expected {expected}")]
    KernelRowMismatch { expected: usize, actual: usize },
    /// Network widths must be [in, ..., 1] with every width >= 1.
    #[error("invalid layer widths {0:?}: need >= 2 layers, all widths >= 1, output width 1")]
    BadWidths(Vec<usize>),
    /// An input row does not match the network's input width.
    #[error("input has {actual} features, network expects {expected}")]
    InputWidthMismatch { expected: usize, actual: usize },
    /// A parameter vector does not match the network's layout.
    #[error("parameter vector has length {actual}, network expects {expected}")]
    ParameterCountMismatch { expected: usize, actual: usize },
    /// Feature matrices must be non-empty.
    #[error("feature matrix is empty")]
    EmptyFeatures,
    /// Errors surfaced by the shared training loop.
    #[error(transparent)]
    Optim(#[from] OptimError),
}
