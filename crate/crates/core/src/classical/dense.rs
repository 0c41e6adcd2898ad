//! Fully-connected tanh networks with a single real output, trained on
//! hinge loss through the shared [`crate::optim`] loop.
//!
//! Parameters live in one flat vector laid out layer by layer — weights
//! in row-major `[output][input]` order, then biases — so the same
//! storage drives standalone training, finite-difference checks, and
//! the hybrid models (which concatenate circuit angles with a head
//! network's parameters).

use ndarray::ArrayView2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ClassicalError;
use crate::optim::{fit, DifferentiableModel, TrainConfig, TrainHistory};

/// Flat parameter count of a dense network with the given layer widths.
pub fn dense_parameter_count(widths: &[usize]) -> usize {
    widths
        .windows(2)
        .map(|pair| pair[0] * pair[1] + pair[1])
        .sum()
}

/// A dense network: layer widths plus one flat parameter vector. Every
/// layer applies `tanh`, including the final scalar output.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseNetwork {
    widths: Vec<usize>,
    params: Vec<f64>,
}

impl DenseNetwork {
    /// Builds a network with seed-deterministic initialization: each
    /// weight uniform in ±√(6/(fan_in+fan_out)), biases zero.
    pub fn new(widths: &[usize], seed: u64) -> Result<Self, ClassicalError> {
        Self::validate_widths(widths)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut params = Vec::with_capacity(dense_parameter_count(widths));
        for pair in widths.windows(2) {
            let (fan_in, fan_out) = (pair[0], pair[1]);
            let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
            for _ in 0..fan_in * fan_out {
                params.push(rng.gen_range(-limit..limit));
            }
            params.extend(std::iter::repeat(0.0).take(fan_out));
        }
        Ok(Self {
            widths: widths.to_vec(),
            params,
        })
    }

    /// Wraps explicit parameters (for tests and persistence).
    pub fn with_parameters(widths: &[usize], params: Vec<f64>) -> Result<Self, ClassicalError> {
        Self::validate_widths(widths)?;
        if params.len() != dense_parameter_count(widths) {
            return Err(ClassicalError::ParameterCountMismatch {
                expected: dense_parameter_count(widths),
                actual: params.len(),
            });
        }
        Ok(Self {
            widths: widths.to_vec(),
            params,
        })
    }

    fn validate_widths(widths: &[usize]) -> Result<(), ClassicalError> {
        let ok =
            widths.len() >= 2 && widths.iter().all(|&w| w >= 1) && *widths.last().unwrap() == 1;
        if ok {
            Ok(())
        } else {
            Err(ClassicalError::BadWidths(widths.to_vec()))
        }
    }

    /// Layer widths, input first, scalar output last.
    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    /// The flat trainable parameter vector.
    pub fn parameters(&self) -> &[f64] {
        &self.params
    }

    /// Replaces the parameter vector (length-checked).
    pub fn set_parameters(&mut self, params: Vec<f64>) -> Result<(), ClassicalError> {
        if params.len() != self.count_parameters() {
            return Err(ClassicalError::ParameterCountMismatch {
                expected: self.count_parameters(),
                actual: params.len(),
            });
        }
        self.params = params;
        Ok(())
    }

    /// Exact trainable-parameter count: Σ over layers of in·out + out.
    pub fn count_parameters(&self) -> usize {
        dense_parameter_count(&self.widths)
    }

    /// Input width.
    pub fn input_width(&self) -> usize {
        self.widths[0]
    }

    /// Forward pass with the network's own parameters.
    pub fn forward(&self, input: &[f64]) -> Result<f64, ClassicalError> {
        self.output_with(&self.params, input)
    }

    fn check_io(&self, params: &[f64], input: &[f64]) -> Result<(), ClassicalError> {
        if input.len() != self.input_width() {
            return Err(ClassicalError::InputWidthMismatch {
                expected: self.input_width(),
                actual: input.len(),
            });
        }
        if params.len() != self.count_parameters() {
            return Err(ClassicalError::ParameterCountMismatch {
                expected: self.count_parameters(),
                actual: params.len(),
            });
        }
        Ok(())
    }

    /// Forward pass with an externally supplied parameter vector (used
    /// by the training loop and the hybrid models).
    pub fn output_with(&self, params: &[f64], input: &[f64]) -> Result<f64, ClassicalError> {
        self.check_io(params, input)?;
        Ok(self.activations(params, input).pop().unwrap()[0])
    }

    /// All post-tanh layer activations, input excluded.
    fn activations(&self, params: &[f64], input: &[f64]) -> Vec<Vec<f64>> {
        let mut layers = Vec::with_capacity(self.widths.len() - 1);
        let mut current = input.to_vec();
        let mut offset = 0;
        for pair in self.widths.windows(2) {
            let (fan_in, fan_out) = (pair[0], pair[1]);
            let weights = &params[offset..offset + fan_in * fan_out];
            let biases = &params[offset + fan_in * fan_out..offset + fan_in * fan_out + fan_out];
            offset += fan_in * fan_out + fan_out;
            let mut next = Vec::with_capacity(fan_out);
            for o in 0..fan_out {
                let row = &weights[o * fan_in..(o + 1) * fan_in];
                let z: f64 = row.iter().zip(&current).map(|(w, a)| w * a).sum::<f64>() + biases[o];
                next.push(z.tanh());
            }
            layers.push(next.clone());
            current = next;
        }
        layers
    }

    /// Backpropagation through the whole network: returns the scalar
    /// output, its gradient with respect to every parameter (same
    /// layout as the parameter vector), and its gradient with respect
    /// to the raw input (used to chain into the quantum circuit).
    pub fn gradients_with(
        &self,
        params: &[f64],
        input: &[f64],
    ) -> Result<(f64, Vec<f64>, Vec<f64>), ClassicalError> {
        self.check_io(params, input)?;
        let activations = self.activations(params, input);
        let output = activations.last().unwrap()[0];

        let mut param_grad = vec![0.0; params.len()];
        // delta = d output / d z for the current layer, seeded at the top.
        let mut delta = vec![1.0 - output * output];

        // Per-layer parameter offsets, for walking backwards.
        let mut offsets = Vec::with_capacity(self.widths.len() - 1);
        let mut offset = 0;
        for pair in self.widths.windows(2) {
            offsets.push(offset);
            offset += pair[0] * pair[1] + pair[1];
        }

        let mut input_grad = vec![0.0; input.len()];
        for layer in (0..self.widths.len() - 1).rev() {
            let (fan_in, fan_out) = (self.widths[layer], self.widths[layer + 1]);
            let base = offsets[layer];
            let below: &[f64] = if layer == 0 {
                input
            } else {
                &activations[layer - 1]
            };
            for o in 0..fan_out {
                for i in 0..fan_in {
                    param_grad[base + o * fan_in + i] = delta[o] * below[i];
                }
                param_grad[base + fan_in * fan_out + o] = delta[o];
            }
            // Propagate to the layer below.
            let mut upstream = vec![0.0; fan_in];
            for (i, slot) in upstream.iter_mut().enumerate() {
                for o in 0..fan_out {
                    *slot += params[base + o * fan_in + i] * delta[o];
                }
            }
            if layer == 0 {
                input_grad = upstream;
            } else {
                delta = upstream
                    .iter()
                    .zip(&activations[layer - 1])
                    .map(|(u, a)| u * (1.0 - a * a))
                    .collect();
            }
        }
        Ok((output, param_grad, input_grad))
    }
}

/// Adapter binding a network shape to a fixed sample matrix for the
/// shared fit loop.
struct DenseFit<'a> {
    net: &'a DenseNetwork,
    rows: Vec<Vec<f64>>,
}

impl DifferentiableModel for DenseFit<'_> {
    fn num_parameters(&self) -> usize {
        self.net.count_parameters()
    }
    fn num_samples(&self) -> usize {
        self.rows.len()
    }
    fn output(&self, params: &[f64], index: usize) -> f64 {
        self.net
            .output_with(params, &self.rows[index])
            .expect("validated at dense_train entry")
    }
    fn output_gradient(&self, params: &[f64], index: usize) -> Vec<f64> {
        self.net
            .gradients_with(params, &self.rows[index])
            .expect("validated at dense_train entry")
            .1
    }
}

/// Mini-batch hinge-loss training with Adam; same loop, loss, and
/// optimizer as the quantum models.
pub fn dense_train(
    net: DenseNetwork,
    data: ArrayView2<'_, f64>,
    labels: &[f64],
    config: &TrainConfig,
) -> Result<(DenseNetwork, TrainHistory), ClassicalError> {
    if data.nrows() == 0 {
        return Err(ClassicalError::EmptyFeatures);
    }
    if data.ncols() != net.input_width() {
        return Err(ClassicalError::InputWidthMismatch {
            expected: net.input_width(),
            actual: data.ncols(),
        });
    }
    let rows: Vec<Vec<f64>> = data.rows().into_iter().map(|r| r.to_vec()).collect();
    let adapter = DenseFit { net: &net, rows };
    let mut params = net.parameters().to_vec();
    let history = fit(&adapter, &mut params, labels, config)?;
    let mut trained = net;
    trained.set_parameters(params)?;
    Ok((trained, history))
}
