//! Variational quantum classifiers: the two-layer readout-coupled
//! circuit model ("QNN") and its two hybrid quantum→dense variants.
//!
//! # Architecture
//!
//! A model over `n` data qubits owns one extra readout qubit (index
//! `n`). The trainable ansatz couples every data qubit to the readout —
//! first an `XX(θ_i)` layer, then a `ZZ(θ_{n+i})` layer — giving exactly
//! `2n` parameters (32 at `n = 16`). The classifier output is the
//! readout expectation after the couplings, taken in a fixed rotated
//! basis: the readout is prepared with `H`·`RZ(π/4)` and unprepared with
//! the inverse pair before measuring `Z`. With all angles at zero the
//! output is exactly +1, and the rotated axis makes the output depend on
//! both quadratures of the angle-encoded data, so a single data qubit
//! can already realize a perfect sign classifier.
//!
//! The hybrid models feed the circuit's single scalar output through a
//! dense tanh head `[1 → h → 1]` (`h` = 4 or 10), for 45 and 63 total
//! trainable parameters. Gradients chain the head's backpropagation with
//! the circuit's parameter-shift rule through that one scalar.
//!
//! Training is hinge loss + Adam via the shared [`crate::optim`] loop,
//! identical to the classical baselines.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classical::{ClassicalError, DenseNetwork};
use crate::encoding::EncodedSample;
use crate::optim::{fit, sign_class, DifferentiableModel, OptimError, TrainConfig, TrainHistory};
use crate::rng::mix;
use crate::sim::{expectation, run_circuit, Circuit, Gate, PauliObservable, SimError, StateVector};

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

/// Errors raised by the quantum classifiers.
#[derive(Debug, Error)]
pub enum VqcError {
    /// Models need at least one data qubit.
    #[error("need at least 1 data qubit")]
    NoDataQubits,
    /// A sample's qubit count must equal the model's data-qubit count.
    #[error("sample has {actual} qubits, model expects {expected}")]
    QubitCountMismatch { expected: usize, actual: usize },
    /// Parameter index out of range.
    #[error("parameter index {index} out of range for {count} parameters")]
    ParameterIndexOutOfRange { index: usize, count: usize },
    /// A parameter vector has the wrong length.
    #[error("expected {expected} parameters, got {actual}")]
    ParameterCountMismatch { expected: usize, actual: usize },
    /// Hybrid heads need at least one hidden node.
    #[error("hybrid head needs at least 1 hidden node")]
    EmptyHead,
    /// Simulator failure (width limits, binding, …).
    #[error(transparent)]
    Sim(#[from] SimError),
    /// Dense-head failure.
    #[error(transparent)]
    Head(#[from] ClassicalError),
    /// Training-loop failure (labels, config, …).
    #[error(transparent)]
    Optim(#[from] OptimError),
}

/// Builds the two-layer coupling ansatz over `num_data_qubits + 1`
/// qubits: `XX(θ_i)` from each data qubit `i` to the readout (ascending
/// `i`), then `ZZ(θ_{n+i})` likewise. Exactly `2n` free parameters and
/// `2n` gates.
pub fn build_ansatz(num_data_qubits: usize) -> Result<Circuit, VqcError> {
    if num_data_qubits == 0 {
        return Err(VqcError::NoDataQubits);
    }
    let readout = num_data_qubits;
    let mut circuit = Circuit::with_free_parameters(num_data_qubits + 1, 2 * num_data_qubits)?;
    for i in 0..num_data_qubits {
        circuit.push(Gate::xx(i, readout, crate::sim::Param::Free(i)))?;
    }
    for i in 0..num_data_qubits {
        circuit.push(Gate::zz(
            i,
            readout,
            crate::sim::Param::Free(num_data_qubits + i),
        ))?;
    }
    Ok(circuit)
}

/// The variational quantum classifier.
#[derive(Debug, Clone)]
pub struct VqcModel {
    num_data_qubits: usize,
    ansatz: Circuit,
    theta: Vec<f64>,
    readout: PauliObservable,
}

impl VqcModel {
    /// Builds a model with seed-deterministic initial angles, uniform in
    /// `[0, 2π)`.
    pub fn new(num_data_qubits: usize, seed: u64) -> Result<Self, VqcError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let theta = (0..2 * num_data_qubits.max(1))
            .map(|_| rng.gen::<f64>() * TAU)
            .collect();
        Self::with_parameters(num_data_qubits, theta)
    }

    /// Builds a model with explicit angles (`2·num_data_qubits` of them).
    pub fn with_parameters(num_data_qubits: usize, theta: Vec<f64>) -> Result<Self, VqcError> {
        let ansatz = build_ansatz(num_data_qubits)?;
        if theta.len() != ansatz.num_free_parameters() {
            return Err(VqcError::ParameterCountMismatch {
                expected: ansatz.num_free_parameters(),
                actual: theta.len(),
            });
        }
        Ok(Self {
            num_data_qubits,
            ansatz,
            theta,
            readout: PauliObservable::z(num_data_qubits),
        })
    }

    /// Number of data qubits (the readout adds one more).
    pub fn num_data_qubits(&self) -> usize {
        self.num_data_qubits
    }

    /// The symbolic coupling circuit.
    pub fn ansatz(&self) -> &Circuit {
        &self.ansatz
    }

    /// The readout observable: `Z` on the readout qubit.
    pub fn readout(&self) -> &PauliObservable {
        &self.readout
    }

    /// Current parameter vector.
    pub fn parameters(&self) -> &[f64] {
        &self.theta
    }

    /// Replaces the parameter vector (length-checked).
    pub fn set_parameters(&mut self, theta: Vec<f64>) -> Result<(), VqcError> {
        if theta.len() != self.theta.len() {
            return Err(VqcError::ParameterCountMismatch {
                expected: self.theta.len(),
                actual: theta.len(),
            });
        }
        self.theta = theta;
        Ok(())
    }

    /// Exact trainable-parameter count (`2·num_data_qubits`).
    pub fn count_parameters(&self) -> usize {
        self.theta.len()
    }

    /// Runs the data circuit and the readout preparation, producing the
    /// parameter-independent part of the forward pass. Cached per sample
    /// during training: the ansatz only ever runs downstream of it.
    fn prepared_state(&self, sample: &EncodedSample) -> Result<StateVector, VqcError> {
        if sample.num_qubits() != self.num_data_qubits {
            return Err(VqcError::QubitCountMismatch {
                expected: self.num_data_qubits,
                actual: sample.num_qubits(),
            });
        }
        let readout = self.num_data_qubits;
        let mut circuit = Circuit::new(readout + 1)?;
        circuit.append(sample.circuit())?;
        circuit.push(Gate::h(readout))?;
        circuit.push(Gate::rz(readout, FRAC_PI_4))?;
        Ok(run_circuit(&circuit, &[], None)?)
    }

    /// Applies the bound ansatz and the readout basis change to an
    /// already prepared state, returning ⟨Z_readout⟩.
    fn expectation_from(&self, prepared: &StateVector, theta: &[f64]) -> Result<f64, VqcError> {
        let readout = self.num_data_qubits;
        let mut tail = Circuit::new(readout + 1)?;
        tail.append(&self.ansatz.bind(theta)?)?;
        tail.push(Gate::rz(readout, -FRAC_PI_4))?;
        tail.push(Gate::h(readout))?;
        let state = run_circuit(&tail, &[], Some(prepared))?;
        Ok(expectation(&state, &self.readout)?)
    }

    /// Classifier output in `[−1, +1]` for one encoded sample.
    pub fn forward(&self, sample: &EncodedSample) -> Result<f64, VqcError> {
        let prepared = self.prepared_state(sample)?;
        self.expectation_from(&prepared, &self.theta)
    }

    /// Exact derivative of [`VqcModel::forward`] with respect to
    /// parameter `k` via the parameter-shift rule
    /// `[E(θ_k + π/2) − E(θ_k − π/2)] / 2` (exact for the XX/ZZ
    /// generators under the half-angle convention).
    pub fn parameter_shift_gradient(
        &self,
        sample: &EncodedSample,
        k: usize,
    ) -> Result<f64, VqcError> {
        if k >= self.theta.len() {
            return Err(VqcError::ParameterIndexOutOfRange {
                index: k,
                count: self.theta.len(),
            });
        }
        let prepared = self.prepared_state(sample)?;
        shift_gradient(self, &prepared, &self.theta, k)
    }

    /// Class prediction: sign of the forward output, ties to +1.
    pub fn predict_class(&self, sample: &EncodedSample) -> Result<f64, VqcError> {
        Ok(sign_class(self.forward(sample)?))
    }

    /// Hinge-loss mini-batch training with Adam (shared loop). Updates
    /// the model's parameters in place and returns the per-epoch record.
    pub fn train(
        &mut self,
        samples: &[EncodedSample],
        labels: &[f64],
        config: &TrainConfig,
    ) -> Result<TrainHistory, VqcError> {
        let prepared = prepare_all(self, samples)?;
        let adapter = VqcFit {
            model: self,
            prepared,
        };
        let mut params = self.theta.clone();
        let history = fit(&adapter, &mut params, labels, config)?;
        self.theta = params;
        Ok(history)
    }
}

/// Parameter-shift derivative evaluated from a cached prepared state.
fn shift_gradient(
    model: &VqcModel,
    prepared: &StateVector,
    theta: &[f64],
    k: usize,
) -> Result<f64, VqcError> {
    let mut shifted = theta.to_vec();
    shifted[k] = theta[k] + FRAC_PI_2;
    let plus = model.expectation_from(prepared, &shifted)?;
    shifted[k] = theta[k] - FRAC_PI_2;
    let minus = model.expectation_from(prepared, &shifted)?;
    Ok((plus - minus) / 2.0)
}

/// Validates and prepares every training sample once up front; the
/// prepared states are parameter-independent.
fn prepare_all(model: &VqcModel, samples: &[EncodedSample]) -> Result<Vec<StateVector>, VqcError> {
    samples.iter().map(|s| model.prepared_state(s)).collect()
}

/// Fit-loop adapter for the bare quantum model.
struct VqcFit<'a> {
    model: &'a VqcModel,
    prepared: Vec<StateVector>,
}

impl DifferentiableModel for VqcFit<'_> {
    fn num_parameters(&self) -> usize {
        self.model.theta.len()
    }
    fn num_samples(&self) -> usize {
        self.prepared.len()
    }
    fn output(&self, params: &[f64], index: usize) -> f64 {
        self.model
            .expectation_from(&self.prepared[index], params)
            .expect("validated at train entry")
    }
    fn output_gradient(&self, params: &[f64], index: usize) -> Vec<f64> {
        (0..params.len())
            .map(|k| {
                shift_gradient(self.model, &self.prepared[index], params, k)
                    .expect("validated at train entry")
            })
            .collect()
    }
}

/// A quantum circuit feeding a dense tanh head `[1 → h → 1]`.
#[derive(Debug, Clone)]
pub struct HybridModel {
    quantum: VqcModel,
    head: DenseNetwork,
}

impl HybridModel {
    /// Builds a hybrid with `hidden_nodes` in the head's hidden layer
    /// (4 and 10 are the benchmark variants). The circuit angles and the
    /// head weights draw from independent streams of `seed`.
    pub fn new(num_data_qubits: usize, hidden_nodes: usize, seed: u64) -> Result<Self, VqcError> {
        if hidden_nodes == 0 {
            return Err(VqcError::EmptyHead);
        }
        let quantum = VqcModel::new(num_data_qubits, mix(seed, &[0]))?;
        let head = DenseNetwork::new(&[1, hidden_nodes, 1], mix(seed, &[1]))?;
        Ok(Self { quantum, head })
    }

    /// The circuit half.
    pub fn quantum(&self) -> &VqcModel {
        &self.quantum
    }

    /// The dense head.
    pub fn head(&self) -> &DenseNetwork {
        &self.head
    }

    /// Total trainable parameters: `2n` circuit angles plus the head's
    /// `(1·h + h) + (h·1 + 1)`.
    pub fn count_parameters(&self) -> usize {
        self.quantum.count_parameters() + self.head.count_parameters()
    }

    /// The flat parameter vector `[circuit angles | head parameters]`.
    pub fn parameters(&self) -> Vec<f64> {
        let mut flat = self.quantum.parameters().to_vec();
        flat.extend_from_slice(self.head.parameters());
        flat
    }

    /// Splits and installs a flat parameter vector.
    pub fn set_parameters(&mut self, flat: Vec<f64>) -> Result<(), VqcError> {
        if flat.len() != self.count_parameters() {
            return Err(VqcError::ParameterCountMismatch {
                expected: self.count_parameters(),
                actual: flat.len(),
            });
        }
        let split = self.quantum.count_parameters();
        self.quantum.set_parameters(flat[..split].to_vec())?;
        self.head.set_parameters(flat[split..].to_vec())?;
        Ok(())
    }

    /// Model output in `(−1, +1)`: the circuit's readout expectation
    /// passed through the dense head.
    pub fn forward(&self, sample: &EncodedSample) -> Result<f64, VqcError> {
        let scalar = self.quantum.forward(sample)?;
        Ok(self.head.forward(&[scalar])?)
    }

    /// Class prediction: sign of the forward output, ties to +1.
    pub fn predict_class(&self, sample: &EncodedSample) -> Result<f64, VqcError> {
        Ok(sign_class(self.forward(sample)?))
    }

    /// Gradient of [`HybridModel::forward`] with respect to the flat
    /// `[circuit angles | head parameters]` vector: backpropagation
    /// through the head chained with the parameter-shift rule through
    /// the single scalar interface.
    pub fn gradient(&self, sample: &EncodedSample) -> Result<Vec<f64>, VqcError> {
        let prepared = self.quantum.prepared_state(sample)?;
        hybrid_gradient(self, &prepared, &self.parameters())
    }

    /// Hinge-loss mini-batch training of the whole stack with Adam. Head
    /// gradients come from backpropagation; circuit gradients from the
    /// parameter-shift rule, chained through the single scalar interface.
    pub fn train(
        &mut self,
        samples: &[EncodedSample],
        labels: &[f64],
        config: &TrainConfig,
    ) -> Result<TrainHistory, VqcError> {
        let prepared = prepare_all(&self.quantum, samples)?;
        let adapter = HybridFit {
            model: self,
            prepared,
        };
        let mut params = self.parameters();
        let history = fit(&adapter, &mut params, labels, config)?;
        self.set_parameters(params)?;
        Ok(history)
    }
}

/// Fit-loop adapter for the hybrid stack, over the flat
/// `[angles | head]` parameter vector.
struct HybridFit<'a> {
    model: &'a HybridModel,
    prepared: Vec<StateVector>,
}

impl HybridFit<'_> {
    fn split(&self) -> usize {
        self.model.quantum.count_parameters()
    }
}

impl DifferentiableModel for HybridFit<'_> {
    fn num_parameters(&self) -> usize {
        self.model.count_parameters()
    }
    fn num_samples(&self) -> usize {
        self.prepared.len()
    }
    fn output(&self, params: &[f64], index: usize) -> f64 {
        let split = self.split();
        let scalar = self
            .model
            .quantum
            .expectation_from(&self.prepared[index], &params[..split])
            .expect("validated at train entry");
        self.model
            .head
            .output_with(&params[split..], &[scalar])
            .expect("validated at train entry")
    }
    fn output_gradient(&self, params: &[f64], index: usize) -> Vec<f64> {
        hybrid_gradient(self.model, &self.prepared[index], params)
            .expect("validated at train entry")
    }
}

/// Flat-vector gradient of a hybrid forward pass from a cached prepared
/// state.
fn hybrid_gradient(
    model: &HybridModel,
    prepared: &StateVector,
    params: &[f64],
) -> Result<Vec<f64>, VqcError> {
    let split = model.quantum.count_parameters();
    if params.len() != model.count_parameters() {
        return Err(VqcError::ParameterCountMismatch {
            expected: model.count_parameters(),
            actual: params.len(),
        });
    }
    let (theta, head_params) = params.split_at(split);
    let scalar = model.quantum.expectation_from(prepared, theta)?;
    let (_, head_grad, input_grad) = model.head.gradients_with(head_params, &[scalar])?;
    let sensitivity = input_grad[0];
    let mut grad = Vec::with_capacity(params.len());
    for k in 0..split {
        grad.push(sensitivity * shift_gradient(&model.quantum, prepared, theta, k)?);
    }
    grad.extend(head_grad);
    Ok(grad)
}

#[cfg(test)]
mod tests;
