//! Soft-margin SVM trained by sequential minimal optimization (SMO)
//! with max-violating-pair working-set selection.
//!
//! The solver works on a precomputed Gram matrix, so the same code
//! serves both the classical RBF rows (via [`RbfSvm`]) and the quantum
//! fidelity kernels (whose Gram matrices are built elsewhere). The dual
//! problem is
//!
//! ```text
//! min ½ αᵀQα − Σαᵢ   s.t.  0 ≤ αᵢ ≤ C,  Σ αᵢyᵢ = 0,   Qᵢⱼ = yᵢyⱼKᵢⱼ
//! ```
//!
//! Each iteration picks the maximally KKT-violating pair (i from the
//! "up" set, j from the "down" set), solves the two-variable subproblem
//! exactly, clips to the box along the equality constraint, and updates
//! the cached dual gradient in O(n). Selection is deterministic — ties
//! resolve to the lowest index — so training needs no random seed.

use ndarray::ArrayView2;

use super::ClassicalError;
use crate::optim::sign_class;

/// Hard cap on SMO iterations; hitting it returns the best iterate
/// (with its residual recorded) rather than failing.
const MAX_ITERATIONS: usize = 100_000;
/// Lower bound on the subproblem curvature, guarding division.
const MIN_CURVATURE: f64 = 1e-12;

/// How a trained model expects kernel values to be supplied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// Kernel rows are computed externally and passed to prediction,
    /// aligned with the training-sample order.
    Precomputed,
    /// Gaussian kernel exp(−γ‖x−y‖²) evaluated on stored feature rows.
    Rbf { gamma: f64 },
}

/// A trained soft-margin SVM in dual form.
#[derive(Debug, Clone)]
pub struct SvmModel {
    support_indices: Vec<usize>,
    dual_coefs: Vec<f64>,
    bias: f64,
    c: f64,
    kernel: KernelSpec,
    num_train: usize,
    kkt_violation: f64,
}

impl SvmModel {
    /// Indices (into the training set) of samples with α > 0.
    pub fn support_indices(&self) -> &[usize] {
        &self.support_indices
    }

    /// α_i·y_i for each support vector, aligned with `support_indices`.
    pub fn dual_coefs(&self) -> &[f64] {
        &self.dual_coefs
    }

    /// Intercept of the decision function.
    pub fn bias(&self) -> f64 {
        self.bias
    }

    /// Box constraint the model was trained with.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Kernel convention for prediction.
    pub fn kernel(&self) -> KernelSpec {
        self.kernel
    }

    /// Number of samples the model was trained on (prediction rows must
    /// have this length).
    pub fn num_train(&self) -> usize {
        self.num_train
    }

    /// Final KKT violation m(α) − M(α); ≤ the training tolerance unless
    /// the iteration cap was hit.
    pub fn kkt_violation(&self) -> f64 {
        self.kkt_violation
    }
}

/// Gaussian kernel exp(−γ‖x−y‖²).
pub fn rbf_kernel(x: &[f64], y: &[f64], gamma: f64) -> Result<f64, ClassicalError> {
    if x.len() != y.len() {
        return Err(ClassicalError::ArityMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(ClassicalError::BadGamma(gamma));
    }
    let dist_sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((-gamma * dist_sq).exp())
}

/// Default RBF bandwidth: `1 / (num_features · variance)`, with the
/// variance taken over every entry of the feature matrix. Falls back to
/// `1 / num_features` when the matrix is constant.
pub fn default_rbf_gamma(features: ArrayView2<'_, f64>) -> f64 {
    let d = features.ncols().max(1) as f64;
    let n = (features.nrows() * features.ncols()) as f64;
    if n == 0.0 {
        return 1.0 / d;
    }
    let mean = features.iter().sum::<f64>() / n;
    let variance = features
        .iter()
        .map(|v| (v - mean) * (v - mean))
        .sum::<f64>()
        / n;
    if variance > 0.0 {
        1.0 / (d * variance)
    } else {
        1.0 / d
    }
}

fn validate_labels(labels: &[f64]) -> Result<(), ClassicalError> {
    let mut saw_pos = false;
    let mut saw_neg = false;
    for (index, &label) in labels.iter().enumerate() {
        if label == 1.0 {
            saw_pos = true;
        } else if label == -1.0 {
            saw_neg = true;
        } else {
            return Err(ClassicalError::BadLabel {
                index,
                value: label,
            });
        }
    }
    if saw_pos && saw_neg {
        Ok(())
    } else {
        Err(ClassicalError::SingleClass)
    }
}

/// Trains an SVM on a precomputed symmetric Gram matrix.
///
/// Runs SMO until the largest KKT violation drops to `tol` or the
/// iteration cap (10⁵) is reached, whichever comes first.
pub fn svm_train(
    gram: ArrayView2<'_, f64>,
    labels: &[f64],
    c: f64,
    tol: f64,
) -> Result<SvmModel, ClassicalError> {
    let n = labels.len();
    if gram.nrows() != gram.ncols() {
        return Err(ClassicalError::GramNotSquare {
            rows: gram.nrows(),
            cols: gram.ncols(),
        });
    }
    if gram.nrows() != n {
        return Err(ClassicalError::GramSizeMismatch {
            gram: gram.nrows(),
            labels: n,
        });
    }
    if n < 2 {
        return Err(ClassicalError::TooFewSamples(n));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(ClassicalError::BadRegularization(c));
    }
    validate_labels(labels)?;
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = (gram[(i, j)] - gram[(j, i)]).abs();
            if diff > 1e-8 {
                return Err(ClassicalError::NonSymmetricGram { i, j, diff });
            }
        }
    }

    let mut alpha = vec![0.0_f64; n];
    // Dual gradient G_i = (Qα)_i − 1; starts at −1 since α = 0.
    let mut grad = vec![-1.0_f64; n];
    let mut violation = f64::INFINITY;

    for _ in 0..MAX_ITERATIONS {
        // Max-violating pair: i maximizes −y·G over the "up" set,
        // j minimizes −y·G over the "down" set.
        let mut best_up: Option<(usize, f64)> = None;
        let mut best_down: Option<(usize, f64)> = None;
        for k in 0..n {
            let score = -labels[k] * grad[k];
            let movable_up =
                (labels[k] > 0.0 && alpha[k] < c) || (labels[k] < 0.0 && alpha[k] > 0.0);
            let movable_down =
                (labels[k] < 0.0 && alpha[k] < c) || (labels[k] > 0.0 && alpha[k] > 0.0);
            if movable_up && best_up.map_or(true, |(_, s)| score > s) {
                best_up = Some((k, score));
            }
            if movable_down && best_down.map_or(true, |(_, s)| score < s) {
                best_down = Some((k, score));
            }
        }
        let ((i, up), (j, down)) = match (best_up, best_down) {
            (Some(a), Some(b)) => (a, b),
            _ => break, // Degenerate: nothing can move.
        };
        violation = up - down;
        if violation <= tol {
            break;
        }

        // Exact two-variable subproblem along the equality constraint.
        let (yi, yj) = (labels[i], labels[j]);
        let curvature = (gram[(i, i)] + gram[(j, j)] - 2.0 * gram[(i, j)]).max(MIN_CURVATURE);
        let step = (up - down) / curvature;
        let (old_i, old_j) = (alpha[i], alpha[j]);
        // Feasible range for α_i with α_j following the constraint.
        let (low, high) = if yi != yj {
            ((old_i - old_j).max(0.0), (c + old_i - old_j).min(c))
        } else {
            ((old_i + old_j - c).max(0.0), (old_i + old_j).min(c))
        };
        let new_i = (old_i + yi * step).clamp(low, high);
        let new_j = old_j + yi * yj * (old_i - new_i);
        alpha[i] = new_i;
        alpha[j] = new_j;

        let (delta_i, delta_j) = (new_i - old_i, new_j - old_j);
        for k in 0..n {
            grad[k] += labels[k] * (yi * gram[(k, i)] * delta_i + yj * gram[(k, j)] * delta_j);
        }
    }

    // Bias: average of b = −y_i·G_i over free support vectors; midpoint
    // of the KKT bounds when no α is strictly inside the box.
    let free_threshold = 1e-12;
    let mut bias_sum = 0.0;
    let mut bias_count = 0usize;
    for k in 0..n {
        if alpha[k] > free_threshold && alpha[k] < c - free_threshold {
            bias_sum += -labels[k] * grad[k];
            bias_count += 1;
        }
    }
    let bias = if bias_count > 0 {
        bias_sum / bias_count as f64
    } else {
        let mut up_bound = f64::NEG_INFINITY;
        let mut down_bound = f64::INFINITY;
        for k in 0..n {
            let score = -labels[k] * grad[k];
            let movable_up =
                (labels[k] > 0.0 && alpha[k] < c) || (labels[k] < 0.0 && alpha[k] > 0.0);
            let movable_down =
                (labels[k] < 0.0 && alpha[k] < c) || (labels[k] > 0.0 && alpha[k] > 0.0);
            if movable_up {
                up_bound = up_bound.max(score);
            }
            if movable_down {
                down_bound = down_bound.min(score);
            }
        }
        (up_bound + down_bound) / 2.0
    };

    let mut support_indices = Vec::new();
    let mut dual_coefs = Vec::new();
    for (k, &a) in alpha.iter().enumerate() {
        if a > free_threshold {
            support_indices.push(k);
            dual_coefs.push(a * labels[k]);
        }
    }
    Ok(SvmModel {
        support_indices,
        dual_coefs,
        bias,
        c,
        kernel: KernelSpec::Precomputed,
        num_train: n,
        kkt_violation: violation.max(0.0),
    })
}

/// Decision value Σ αᵢyᵢ·K(xᵢ, x) + b from a kernel row aligned with the
/// training set.
pub fn svm_decision(model: &SvmModel, kernel_row: &[f64]) -> Result<f64, ClassicalError> {
    if kernel_row.len() != model.num_train {
        return Err(ClassicalError::KernelRowMismatch {
            expected: model.num_train,
            actual: kernel_row.len(),
        });
    }
    let mut sum = model.bias;
    for (&index, &coef) in model.support_indices.iter().zip(&model.dual_coefs) {
        sum += coef * kernel_row[index];
    }
    Ok(sum)
}

/// Class prediction (−1 or +1) from a kernel row; a decision value of
/// exactly 0 resolves to +1.
pub fn svm_predict(model: &SvmModel, kernel_row: &[f64]) -> Result<f64, ClassicalError> {
    Ok(sign_class(svm_decision(model, kernel_row)?))
}

/// RBF-kernel SVM that owns its training rows, so prediction takes raw
/// feature vectors.
#[derive(Debug, Clone)]
pub struct RbfSvm {
    model: SvmModel,
    train_rows: Vec<Vec<f64>>,
    gamma: f64,
}

impl RbfSvm {
    /// Builds the RBF Gram matrix and trains the dual solver on it.
    pub fn fit(
        features: ArrayView2<'_, f64>,
        labels: &[f64],
        gamma: f64,
        c: f64,
        tol: f64,
    ) -> Result<Self, ClassicalError> {
        if features.nrows() == 0 {
            return Err(ClassicalError::EmptyFeatures);
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(ClassicalError::BadGamma(gamma));
        }
        let n = features.nrows();
        let rows: Vec<Vec<f64>> = features.rows().into_iter().map(|r| r.to_vec()).collect();
        let mut gram = ndarray::Array2::<f64>::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let value = rbf_kernel(&rows[i], &rows[j], gamma)?;
                gram[(i, j)] = value;
                gram[(j, i)] = value;
            }
        }
        let mut model = svm_train(gram.view(), labels, c, tol)?;
        model.kernel = KernelSpec::Rbf { gamma };
        Ok(Self {
            model,
            train_rows: rows,
            gamma,
        })
    }

    /// The underlying dual model.
    pub fn model(&self) -> &SvmModel {
        &self.model
    }

    /// Decision value for a raw feature vector.
    pub fn decision(&self, x: &[f64]) -> Result<f64, ClassicalError> {
        let mut sum = self.model.bias;
        for (&index, &coef) in self
            .model
            .support_indices
            .iter()
            .zip(&self.model.dual_coefs)
        {
            sum += coef * rbf_kernel(&self.train_rows[index], x, self.gamma)?;
        }
        Ok(sum)
    }

    /// Class prediction (−1 or +1) for a raw feature vector.
    pub fn predict(&self, x: &[f64]) -> Result<f64, ClassicalError> {
        Ok(sign_class(self.decision(x)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array2};

    /// Linear-kernel Gram from explicit points (dot products).
    fn linear_gram(points: &[Vec<f64>]) -> Array2<f64> {
        let n = points.len();
        Array2::from_shape_fn((n, n), |(i, j)| {
            points[i].iter().zip(&points[j]).map(|(a, b)| a * b).sum()
        })
    }

    #[test]
    fn rbf_kernel_matches_definition() {
        assert_eq!(rbf_kernel(&[1.0, 2.0], &[1.0, 2.0], 3.0).unwrap(), 1.0);
        // ‖x−y‖² = 1, γ = 1 → e⁻¹.
        assert_abs_diff_eq!(
            rbf_kernel(&[0.0], &[1.0], 1.0).unwrap(),
            (-1.0_f64).exp(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn rbf_kernel_shrinks_with_gamma() {
        let x = [0.0, 0.0];
        let y = [0.7, -0.3];
        let mut last = f64::INFINITY;
        for gamma in [0.1, 1.0, 10.0] {
            let value = rbf_kernel(&x, &y, gamma).unwrap();
            assert!(value < last);
            assert!(value > 0.0 && value <= 1.0);
            last = value;
        }
    }

    #[test]
    fn rbf_kernel_rejects_bad_inputs() {
        assert!(matches!(
            rbf_kernel(&[1.0], &[1.0, 2.0], 1.0),
            Err(ClassicalError::ArityMismatch { left: 1, right: 2 })
        ));
        assert!(matches!(
            rbf_kernel(&[1.0], &[1.0], 0.0),
            Err(ClassicalError::BadGamma(_))
        ));
        assert!(matches!(
            rbf_kernel(&[1.0], &[1.0], -2.0),
            Err(ClassicalError::BadGamma(_))
        ));
    }

    #[test]
    fn default_gamma_uses_feature_count_and_variance() {
        // Entries {0,1} with equal counts: mean 0.5, variance 0.25.
        let features = array![[0.0, 1.0], [1.0, 0.0]];
        assert_abs_diff_eq!(
            default_rbf_gamma(features.view()),
            1.0 / (2.0 * 0.25),
            epsilon = 1e-12
        );
        // Constant matrix falls back to 1/d.
        let constant = array![[3.0, 3.0, 3.0]];
        assert_abs_diff_eq!(
            default_rbf_gamma(constant.view()),
            1.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn two_point_svm_separates_and_activates_margins() {
        let points = vec![vec![1.0], vec![-1.0]];
        let labels = [1.0, -1.0];
        let model = svm_train(linear_gram(&points).view(), &labels, 10.0, 1e-3).unwrap();
        // Both points classified correctly with active margins (decision ±1).
        let row0 = [1.0, -1.0]; // K(x0, ·)
        let row1 = [-1.0, 1.0];
        assert_eq!(svm_predict(&model, &row0).unwrap(), 1.0);
        assert_eq!(svm_predict(&model, &row1).unwrap(), -1.0);
        assert_abs_diff_eq!(svm_decision(&model, &row0).unwrap(), 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(svm_decision(&model, &row1).unwrap(), -1.0, epsilon = 1e-3);
        // The dual solution α = (0.5, 0.5), coefs y·α = (0.5, −0.5).
        assert_eq!(model.support_indices(), &[0, 1]);
        assert_abs_diff_eq!(model.dual_coefs()[0], 0.5, epsilon = 1e-3);
        assert_abs_diff_eq!(model.dual_coefs()[1], -0.5, epsilon = 1e-3);
    }

    /// The 4-point XOR set with an RBF kernel; γ=1, C=10 must fit it.
    fn xor_problem() -> (Vec<Vec<f64>>, Vec<f64>) {
        let points = vec![
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
        ];
        let labels = vec![1.0, 1.0, -1.0, -1.0];
        (points, labels)
    }

    fn rbf_gram(points: &[Vec<f64>], gamma: f64) -> Array2<f64> {
        let n = points.len();
        Array2::from_shape_fn((n, n), |(i, j)| {
            rbf_kernel(&points[i], &points[j], gamma).unwrap()
        })
    }

    #[test]
    fn xor_with_rbf_reaches_full_training_accuracy() {
        let (points, labels) = xor_problem();
        let gram = rbf_gram(&points, 1.0);
        let model = svm_train(gram.view(), &labels, 10.0, 1e-3).unwrap();
        for (i, &label) in labels.iter().enumerate() {
            let row: Vec<f64> = (0..points.len()).map(|j| gram[(i, j)]).collect();
            assert_eq!(svm_predict(&model, &row).unwrap(), label, "point {i}");
        }
        assert!(model.kkt_violation() <= 1e-3);
    }

    /// Dense grid search over the XOR dual problem: three α components
    /// vary freely on a grid, the fourth follows from Σ αy = 0. The grid
    /// optimum lower-bounds the true dual optimum, so the solver's
    /// objective must not fall below it.
    #[test]
    fn xor_dual_objective_matches_grid_search_oracle() {
        let (points, labels) = xor_problem();
        let gram = rbf_gram(&points, 1.0);
        let model = svm_train(gram.view(), &labels, 10.0, 1e-6).unwrap();

        // Objective at the solver's α (reconstructed from the coefs).
        let mut alpha = vec![0.0; 4];
        for (&idx, &coef) in model.support_indices().iter().zip(model.dual_coefs()) {
            alpha[idx] = coef * labels[idx];
        }
        let objective = |a: &[f64]| {
            let mut quad = 0.0;
            for i in 0..4 {
                for j in 0..4 {
                    quad += a[i] * a[j] * labels[i] * labels[j] * gram[(i, j)];
                }
            }
            a.iter().sum::<f64>() - 0.5 * quad
        };
        let solver_value = objective(&alpha);

        // Brute-force the full 3-dimensional feasible set (α_3 fixed by
        // the equality constraint) on a fine grid.
        let mut best = f64::NEG_INFINITY;
        let steps = 60;
        let c = 10.0;
        for i0 in 0..=steps {
            for i1 in 0..=steps {
                for i2 in 0..=steps {
                    let a0 = c * i0 as f64 / steps as f64;
                    let a1 = c * i1 as f64 / steps as f64;
                    let a2 = c * i2 as f64 / steps as f64;
                    let a3 = a0 + a1 - a2; // Σ αy = 0
                    if !(0.0..=c).contains(&a3) {
                        continue;
                    }
                    best = best.max(objective(&[a0, a1, a2, a3]));
                }
            }
        }
        // The solver must be at least as good as every grid point, up to
        // solver tolerance.
        assert!(
            solver_value >= best - 1e-3,
            "solver {solver_value} below grid optimum {best}"
        );
    }

    #[test]
    fn training_is_deterministic() {
        let (points, labels) = xor_problem();
        let gram = rbf_gram(&points, 1.0);
        let a = svm_train(gram.view(), &labels, 10.0, 1e-4).unwrap();
        let b = svm_train(gram.view(), &labels, 10.0, 1e-4).unwrap();
        assert_eq!(a.support_indices(), b.support_indices());
        assert_eq!(a.dual_coefs(), b.dual_coefs());
        assert_eq!(a.bias().to_bits(), b.bias().to_bits());
    }

    #[test]
    fn dual_constraints_hold_on_random_problems() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..5 {
            let n = 16;
            let points: Vec<Vec<f64>> = (0..n)
                .map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()])
                .collect();
            let labels: Vec<f64> = (0..n)
                .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
                .collect();
            let c = 1.0;
            let gram = rbf_gram(&points, 2.0);
            let model = svm_train(gram.view(), &labels, c, 1e-3).unwrap();
            // Box constraints and Σ αy = 0.
            let mut alpha_y_sum = 0.0;
            for (&idx, &coef) in model.support_indices().iter().zip(model.dual_coefs()) {
                let alpha = coef * labels[idx];
                assert!(
                    alpha >= 0.0 && alpha <= c + 1e-12,
                    "trial {trial}: box violated"
                );
                alpha_y_sum += coef;
            }
            assert!(
                alpha_y_sum.abs() <= 1e-6,
                "trial {trial}: Σαy = {alpha_y_sum:e}"
            );
            assert!(model.kkt_violation() <= 1e-3);
        }
    }

    #[test]
    fn more_regularization_never_adds_margin_violations() {
        // Fixed slightly-overlapping set; count training-margin violations
        // (y·f < 1) as C grows: must be non-increasing.
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 20;
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            let label = if i % 2 == 0 { 1.0 } else { -1.0 };
            let center = label * 0.6;
            points.push(vec![
                center + 0.8 * (rng.gen::<f64>() - 0.5),
                0.8 * (rng.gen::<f64>() - 0.5),
            ]);
            labels.push(label);
        }
        let gram = rbf_gram(&points, 1.0);
        let mut previous = usize::MAX;
        for c in [0.1, 1.0, 10.0] {
            let model = svm_train(gram.view(), &labels, c, 1e-4).unwrap();
            let violations = (0..n)
                .filter(|&i| {
                    let row: Vec<f64> = (0..n).map(|j| gram[(i, j)]).collect();
                    labels[i] * svm_decision(&model, &row).unwrap() < 1.0 - 1e-9
                })
                .count();
            assert!(
                violations <= previous,
                "violations grew from {previous} to {violations} at C={c}"
            );
            previous = violations;
        }
    }

    #[test]
    fn svm_train_validates_inputs() {
        let gram = array![[1.0, 0.0], [0.0, 1.0]];
        assert!(matches!(
            svm_train(gram.view(), &[1.0, 1.0], 1.0, 1e-3),
            Err(ClassicalError::SingleClass)
        ));
        assert!(matches!(
            svm_train(gram.view(), &[1.0, 0.5], 1.0, 1e-3),
            Err(ClassicalError::BadLabel { index: 1, .. })
        ));
        assert!(matches!(
            svm_train(gram.view(), &[1.0, -1.0], -1.0, 1e-3),
            Err(ClassicalError::BadRegularization(_))
        ));
        assert!(matches!(
            svm_train(gram.view(), &[1.0, -1.0, 1.0], 1.0, 1e-3),
            Err(ClassicalError::GramSizeMismatch { gram: 2, labels: 3 })
        ));
        let asym = array![[1.0, 0.2], [0.3, 1.0]];
        assert!(matches!(
            svm_train(asym.view(), &[1.0, -1.0], 1.0, 1e-3),
            Err(ClassicalError::NonSymmetricGram { .. })
        ));
        let single = array![[1.0]];
        assert!(matches!(
            svm_train(single.view(), &[1.0], 1.0, 1e-3),
            Err(ClassicalError::TooFewSamples(1))
        ));
    }

    #[test]
    fn decision_zero_predicts_positive() {
        // Symmetric 2-point problem has bias 0; a kernel row equidistant
        // from both support vectors yields decision exactly 0.
        let points = vec![vec![1.0], vec![-1.0]];
        let model = svm_train(linear_gram(&points).view(), &[1.0, -1.0], 1.0, 1e-6).unwrap();
        let decision = svm_decision(&model, &[0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(decision, 0.0, epsilon = 1e-12);
        assert_eq!(svm_predict(&model, &[0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn rbf_wrapper_matches_manual_rows() {
        let (points, labels) = xor_problem();
        let features = Array2::from_shape_fn((4, 2), |(i, j)| points[i][j]);
        let svm = RbfSvm::fit(features.view(), &labels, 1.0, 10.0, 1e-4).unwrap();
        let gram = rbf_gram(&points, 1.0);
        for i in 0..4 {
            let row: Vec<f64> = (0..4).map(|j| gram[(i, j)]).collect();
            let via_row = svm_decision(svm.model(), &row).unwrap();
            let via_features = svm.decision(&points[i]).unwrap();
            assert_abs_diff_eq!(via_row, via_features, epsilon = 1e-12);
            assert_eq!(svm.predict(&points[i]).unwrap(), labels[i]);
        }
    }
}
