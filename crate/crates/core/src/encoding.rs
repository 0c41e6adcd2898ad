//! Classical-to-quantum data encoding.
//!
//! Real feature vectors become quantum data in one of two ways:
//!
//! * **Angle encoding** ([`angle_encode`]): each feature is min-max
//!   scaled to `[0, 1]` by a [`FeatureScaler`] fitted on training rows
//!   only, then written onto its own qubit as `RX(π·x̃)`. A sample with
//!   `d` features becomes a `d`-qubit circuit with zero free parameters.
//! * **Amplitude encoding** ([`amplitude_encode`]): the vector is
//!   zero-padded to the next power of two and L2-normalized into a
//!   statevector. Provided for completeness; the benchmark pipeline uses
//!   angle encoding throughout.
//!
//! Encoding is deterministic and structure-stable: two samples of equal
//! arity always produce circuits with identical gate sequences, differing
//! only in angles.

use ndarray::ArrayView2;
use num_complex::Complex64;
use thiserror::Error;

use crate::sim::{Circuit, Gate, SimError, StateVector};

/// Errors raised while fitting scalers or encoding samples.
#[derive(Debug, Error)]
pub enum EncodeError {
    /// Scaler fitting needs at least one row.
    #[error("cannot fit a feature scaler on an empty matrix")]
    EmptyTrainingMatrix,
    /// Scaler fitting needs at least one column.
    #[error("cannot fit a feature scaler on a matrix with zero columns")]
    NoFeatures,
    /// A non-finite value appeared in training data or in a sample.
    #[error("non-finite value {value} at feature index {index}")]
    NonFinite { index: usize, value: f64 },
    /// The sample arity does not match the scaler arity.
    #[error("expected {expected} features, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    /// Amplitude encoding of the zero vector has no defined direction.
    #[error("cannot amplitude-encode the all-zero vector")]
    ZeroVector,
    /// Amplitude encoding needs at least one component.
    #[error("cannot amplitude-encode an empty vector")]
    EmptyVector,
    /// Underlying circuit construction failed (e.g. too many features).
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Per-feature min-max ranges learned from training rows.
///
/// `transform` maps training values into `[0, 1]`; unseen test values
/// outside the training range are clamped to the same interval so that
/// encoded angles stay within one `[0, π]` period.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureScaler {
    mins: Vec<f64>,
    maxs: Vec<f64>,
}

impl FeatureScaler {
    /// Number of features this scaler expects.
    pub fn num_features(&self) -> usize {
        self.mins.len()
    }

    /// Per-feature minima observed at fit time.
    pub fn mins(&self) -> &[f64] {
        &self.mins
    }

    /// Per-feature maxima observed at fit time.
    pub fn maxs(&self) -> &[f64] {
        &self.maxs
    }

    /// Scales one sample into `[0, 1]` per feature, clamping values that
    /// fall outside the training range. Constant features (max == min)
    /// map to 0.
    pub fn transform(&self, features: &[f64]) -> Result<Vec<f64>, EncodeError> {
        if features.len() != self.num_features() {
            return Err(EncodeError::ArityMismatch {
                expected: self.num_features(),
                actual: features.len(),
            });
        }
        features
            .iter()
            .enumerate()
            .map(|(i, &value)| {
                if !value.is_finite() {
                    return Err(EncodeError::NonFinite { index: i, value });
                }
                let span = self.maxs[i] - self.mins[i];
                if span == 0.0 {
                    return Ok(0.0);
                }
                Ok(((value - self.mins[i]) / span).clamp(0.0, 1.0))
            })
            .collect()
    }
}

/// Learns per-column min/max from training rows only.
pub fn fit_feature_scaler(train_matrix: ArrayView2<'_, f64>) -> Result<FeatureScaler, EncodeError> {
    if train_matrix.nrows() == 0 {
        return Err(EncodeError::EmptyTrainingMatrix);
    }
    if train_matrix.ncols() == 0 {
        return Err(EncodeError::NoFeatures);
    }
    let mut mins = vec![f64::INFINITY; train_matrix.ncols()];
    let mut maxs = vec![f64::NEG_INFINITY; train_matrix.ncols()];
    for row in train_matrix.rows() {
        for (i, &value) in row.iter().enumerate() {
            if !value.is_finite() {
                return Err(EncodeError::NonFinite { index: i, value });
            }
            mins[i] = mins[i].min(value);
            maxs[i] = maxs[i].max(value);
        }
    }
    Ok(FeatureScaler { mins, maxs })
}

/// A feature vector rendered as a bound quantum circuit.
#[derive(Debug, Clone)]
pub struct EncodedSample {
    circuit: Circuit,
    source_features: Vec<f64>,
}

impl EncodedSample {
    /// The data-loading circuit (one qubit per feature, zero free
    /// parameters).
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// The raw (unscaled) feature vector this sample encodes.
    pub fn source_features(&self) -> &[f64] {
        &self.source_features
    }

    /// Number of data qubits (== number of features).
    pub fn num_qubits(&self) -> usize {
        self.circuit.num_qubits()
    }
}

/// Encodes one sample as `RX(π·x̃_i)` on qubit `i` for each scaled
/// feature `x̃_i`.
pub fn angle_encode(
    features: &[f64],
    scaler: &FeatureScaler,
) -> Result<EncodedSample, EncodeError> {
    let scaled = scaler.transform(features)?;
    let mut circuit = Circuit::new(scaled.len())?;
    for (qubit, &x) in scaled.iter().enumerate() {
        circuit.push(Gate::rx(qubit, std::f64::consts::PI * x))?;
    }
    Ok(EncodedSample {
        circuit,
        source_features: features.to_vec(),
    })
}

/// Writes a vector directly into statevector amplitudes: zero-pad to the
/// next power of two (at least 2), then L2-normalize.
pub fn amplitude_encode(features: &[f64]) -> Result<StateVector, EncodeError> {
    if features.is_empty() {
        return Err(EncodeError::EmptyVector);
    }
    for (index, &value) in features.iter().enumerate() {
        if !value.is_finite() {
            return Err(EncodeError::NonFinite { index, value });
        }
    }
    let norm = features.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(EncodeError::ZeroVector);
    }
    let dim = features.len().next_power_of_two().max(2);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    for (slot, &value) in amplitudes.iter_mut().zip(features) {
        *slot = Complex64::new(value / norm, 0.0);
    }
    Ok(StateVector::from_amplitudes(amplitudes)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    use crate::sim::{expectation, run_circuit, PauliObservable};

    #[test]
    fn scaler_records_per_column_ranges() {
        let scaler = fit_feature_scaler(array![[2.0], [4.0], [6.0]].view()).unwrap();
        assert_eq!(scaler.mins(), &[2.0]);
        assert_eq!(scaler.maxs(), &[6.0]);

        let two = fit_feature_scaler(array![[0.0, 10.0], [1.0, -10.0]].view()).unwrap();
        assert_eq!(two.mins(), &[0.0, -10.0]);
        assert_eq!(two.maxs(), &[1.0, 10.0]);
    }

    #[test]
    fn constant_column_scales_to_zero() {
        let scaler = fit_feature_scaler(array![[5.0], [5.0]].view()).unwrap();
        assert_eq!(scaler.transform(&[5.0]).unwrap(), vec![0.0]);
        assert_eq!(scaler.transform(&[123.0]).unwrap(), vec![0.0]);
    }

    #[test]
    fn out_of_range_values_clamp() {
        let scaler = fit_feature_scaler(array![[0.0], [2.0]].view()).unwrap();
        assert_eq!(scaler.transform(&[-1.0]).unwrap(), vec![0.0]);
        assert_eq!(scaler.transform(&[3.0]).unwrap(), vec![1.0]);
        assert_eq!(scaler.transform(&[0.5]).unwrap(), vec![0.25]);
    }

    #[test]
    fn scaler_rejects_bad_inputs() {
        assert!(matches!(
            fit_feature_scaler(ndarray::Array2::<f64>::zeros((0, 3)).view()),
            Err(EncodeError::EmptyTrainingMatrix)
        ));
        assert!(matches!(
            fit_feature_scaler(array![[1.0, f64::NAN]].view()),
            Err(EncodeError::NonFinite { index: 1, .. })
        ));
        let scaler = fit_feature_scaler(array![[0.0], [1.0]].view()).unwrap();
        assert!(matches!(
            scaler.transform(&[0.1, 0.2]),
            Err(EncodeError::ArityMismatch {
                expected: 1,
                actual: 2
            })
        ));
        assert!(matches!(
            scaler.transform(&[f64::INFINITY]),
            Err(EncodeError::NonFinite { index: 0, .. })
        ));
    }

    #[test]
    fn minimum_features_encode_to_all_zero_state() {
        let scaler = fit_feature_scaler(array![[0.0, -2.0], [4.0, 2.0]].view()).unwrap();
        let sample = angle_encode(&[0.0, -2.0], &scaler).unwrap();
        let state = run_circuit(sample.circuit(), &[], None).unwrap();
        assert_abs_diff_eq!(state.amplitudes()[0].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(state.amplitudes()[0].im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn maximum_feature_lands_on_minus_i_one() {
        // Feature 1 at max, feature 0 at min: qubit 1 should be RX(π)|0⟩ = −i|1⟩.
        let scaler = fit_feature_scaler(array![[0.0, -2.0], [4.0, 2.0]].view()).unwrap();
        let sample = angle_encode(&[0.0, 2.0], &scaler).unwrap();
        let state = run_circuit(sample.circuit(), &[], None).unwrap();
        // Amplitude index 2 = qubit 1 set, qubit 0 clear.
        assert_abs_diff_eq!(state.amplitudes()[2].im, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(state.amplitudes()[2].re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(state.amplitudes()[0].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn midpoint_feature_has_zero_z_expectation() {
        let scaler = fit_feature_scaler(array![[0.0], [4.0]].view()).unwrap();
        let sample = angle_encode(&[2.0], &scaler).unwrap();
        let state = run_circuit(sample.circuit(), &[], None).unwrap();
        let z = expectation(&state, &PauliObservable::z(0)).unwrap();
        assert_abs_diff_eq!(z, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn encoding_is_deterministic_and_structure_stable() {
        let scaler = fit_feature_scaler(array![[0.0, 0.0], [1.0, 1.0]].view()).unwrap();
        let a = angle_encode(&[0.3, 0.9], &scaler).unwrap();
        let b = angle_encode(&[0.3, 0.9], &scaler).unwrap();
        assert_eq!(a.circuit().gates(), b.circuit().gates());

        // Different samples: same gate kinds and targets, angles differ.
        let c = angle_encode(&[0.8, 0.1], &scaler).unwrap();
        assert_eq!(a.circuit().gates().len(), c.circuit().gates().len());
        for (ga, gc) in a.circuit().gates().iter().zip(c.circuit().gates()) {
            assert_eq!(ga.kind(), gc.kind());
            assert_eq!(ga.targets(), gc.targets());
        }
    }

    #[test]
    fn encoded_states_are_normalized() {
        let scaler = fit_feature_scaler(array![[0.0, 0.0, 0.0], [1.0, 1.0, 1.0]].view()).unwrap();
        for features in [[0.1, 0.5, 0.9], [0.0, 1.0, 0.5], [0.77, 0.33, 0.21]] {
            let sample = angle_encode(&features, &scaler).unwrap();
            let state = run_circuit(sample.circuit(), &[], None).unwrap();
            assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn amplitude_encode_basis_state() {
        let state = amplitude_encode(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(state.num_qubits(), 2);
        assert_abs_diff_eq!(state.amplitudes()[0].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn amplitude_encode_normalizes() {
        let state = amplitude_encode(&[3.0, 4.0]).unwrap();
        assert_eq!(state.num_qubits(), 1);
        assert_abs_diff_eq!(state.amplitudes()[0].re, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(state.amplitudes()[1].re, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn amplitude_encode_pads_to_power_of_two() {
        let state = amplitude_encode(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(state.num_qubits(), 2);
        let expected = 1.0 / 3.0_f64.sqrt();
        for i in 0..3 {
            assert_abs_diff_eq!(state.amplitudes()[i].re, expected, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(state.amplitudes()[3].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn amplitude_encode_rejects_degenerate_vectors() {
        assert!(matches!(
            amplitude_encode(&[]),
            Err(EncodeError::EmptyVector)
        ));
        assert!(matches!(
            amplitude_encode(&[0.0, 0.0]),
            Err(EncodeError::ZeroVector)
        ));
        assert!(matches!(
            amplitude_encode(&[1.0, f64::NAN]),
            Err(EncodeError::NonFinite { index: 1, .. })
        ));
    }
}
