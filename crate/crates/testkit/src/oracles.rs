//! Independent numerical oracles: finite-difference gradients and a
//! from-scratch logistic-regression trainer. Both are deliberately
//! simple, direct transcriptions of textbook formulas so they can vouch
//! for the production implementations without sharing any code.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Central finite-difference gradient of `f` at `x` with step `h`.
pub fn fd_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut grad = Vec::with_capacity(x.len());
    let mut probe = x.to_vec();
    for k in 0..x.len() {
        probe[k] = x[k] + h;
        let plus = f(&probe);
        probe[k] = x[k] - h;
        let minus = f(&probe);
        probe[k] = x[k];
        grad.push((plus - minus) / (2.0 * h));
    }
    grad
}

/// Trains plain logistic regression (bias included) by full-batch
/// gradient descent and returns its training accuracy. Labels must be
/// −1 or +1. Serves as a separability oracle: 1.0 means the set is
/// linearly separable in practice.
pub fn logistic_regression_accuracy(
    rows: &[Vec<f64>],
    labels: &[f64],
    steps: usize,
    learning_rate: f64,
    seed: u64,
) -> f64 {
    assert_eq!(rows.len(), labels.len());
    assert!(!rows.is_empty());
    let d = rows[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w: Vec<f64> = (0..d).map(|_| 0.1 * (rng.gen::<f64>() - 0.5)).collect();
    let mut b = 0.0_f64;
    let n = rows.len() as f64;
    for _ in 0..steps {
        let mut grad_w = vec![0.0; d];
        let mut grad_b = 0.0;
        for (row, &y) in rows.iter().zip(labels) {
            let z: f64 = row.iter().zip(&w).map(|(x, wk)| x * wk).sum::<f64>() + b;
            // d/dz of log(1 + exp(−y z)) = −y σ(−y z)
            let s = 1.0 / (1.0 + (y * z).exp());
            for (g, x) in grad_w.iter_mut().zip(row) {
                *g += -y * s * x / n;
            }
            grad_b += -y * s / n;
        }
        for (wk, g) in w.iter_mut().zip(&grad_w) {
            *wk -= learning_rate * g;
        }
        b -= learning_rate * grad_b;
    }
    let correct = rows
        .iter()
        .zip(labels)
        .filter(|(row, &y)| {
            let z: f64 = row.iter().zip(&w).map(|(x, wk)| x * wk).sum::<f64>() + b;
            let predicted = if z >= 0.0 { 1.0 } else { -1.0 };
            predicted == y
        })
        .count();
    correct as f64 / labels.len() as f64
}
