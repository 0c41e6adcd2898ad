//! Randomized invariants across modules: unitarity, output bounds,
//! loss-function shape, scaling ranges, sampling totals, and the
//! equivalence of the shared training loop with a hand-stepped Adam
//! update.

use ndarray::Array2;
use proptest::prelude::*;
use qmlbench_core::encoding::fit_feature_scaler;
use qmlbench_core::optim::{
    adam_update, fit, hinge_gradient, hinge_loss, AdamState, DifferentiableModel, TrainConfig,
};
use qmlbench_core::rng::mix;
use qmlbench_core::sim::{run_circuit, sample_measurements};
use qmlbench_core::vqc::VqcModel;
use qmlbench_testkit::circuits::random_circuit;

fn unit_float(seed: u64, tags: &[u64]) -> f64 {
    (mix(seed, tags) >> 11) as f64 / (1u64 << 53) as f64
}

proptest! {
    #[test]
    fn circuits_preserve_state_norm(
        seed in any::<u64>(),
        num_qubits in 1usize..=4,
        num_gates in 1usize..=12,
    ) {
        let circuit = random_circuit(seed, num_qubits, num_gates);
        let state = run_circuit(&circuit, &[], None).unwrap();
        prop_assert!((state.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn classifier_outputs_stay_in_the_expectation_range(
        seed in any::<u64>(),
        num_qubits in 1usize..=3,
    ) {
        let model = VqcModel::new(num_qubits, seed).unwrap();
        let features: Vec<f64> = (0..num_qubits)
            .map(|j| unit_float(seed, &[j as u64]))
            .collect();
        let mut probe = Array2::zeros((2, num_qubits));
        probe.row_mut(1).fill(1.0);
        let scaler = fit_feature_scaler(probe.view()).unwrap();
        let sample = qmlbench_core::encoding::angle_encode(&features, &scaler).unwrap();
        let output = model.forward(&sample).unwrap();
        prop_assert!((-1.0 - 1e-9..=1.0 + 1e-9).contains(&output));
    }

    #[test]
    fn hinge_loss_is_nonnegative_and_vanishes_past_the_margin(
        prediction in -10.0f64..10.0,
        positive in any::<bool>(),
    ) {
        let label = if positive { 1.0 } else { -1.0 };
        let loss = hinge_loss(prediction, label).unwrap();
        let grad = hinge_gradient(prediction, label).unwrap();
        prop_assert!(loss >= 0.0);
        if prediction * label >= 1.0 {
            prop_assert_eq!(loss, 0.0);
            prop_assert_eq!(grad, 0.0);
        } else {
            prop_assert!((loss - (1.0 - prediction * label)).abs() <= 1e-12);
            prop_assert_eq!(grad, -label);
        }
    }

    #[test]
    fn feature_scaling_lands_in_the_unit_interval(
        low in -1e6f64..1e6,
        span in 0.0f64..1e6,
        probe in -2e6f64..2e6,
    ) {
        let train = ndarray::array![[low], [low + span]];
        let scaler = fit_feature_scaler(train.view()).unwrap();
        let scaled = scaler.transform(&[probe]).unwrap();
        prop_assert!((0.0..=1.0).contains(&scaled[0]));
    }

    #[test]
    fn measurement_counts_sum_to_shots(
        seed in any::<u64>(),
        shots in 1u64..=4096,
    ) {
        let circuit = random_circuit(seed, 2, 6);
        let state = run_circuit(&circuit, &[], None).unwrap();
        let counts = sample_measurements(&state, shots, seed).unwrap();
        prop_assert_eq!(counts.values().sum::<u64>(), shots);
        for key in counts.keys() {
            prop_assert_eq!(key.len(), 2);
        }
    }
}

/// A linear scorer over fixed rows: output = w · x, gradient = x.
struct LinearModel {
    rows: Array2<f64>,
}

impl DifferentiableModel for LinearModel {
    fn num_parameters(&self) -> usize {
        self.rows.ncols()
    }

    fn num_samples(&self) -> usize {
        self.rows.nrows()
    }

    fn output(&self, params: &[f64], index: usize) -> f64 {
        self.rows
            .row(index)
            .iter()
            .zip(params)
            .map(|(x, w)| x * w)
            .sum()
    }

    fn output_gradient(&self, _params: &[f64], index: usize) -> Vec<f64> {
        self.rows.row(index).to_vec()
    }
}

/// The shared loop must be exactly Adam: hand-stepping the optimizer on
/// a one-sample model reproduces `fit` bit for bit.
#[test]
fn shared_training_loop_is_plain_adam() {
    let rows = ndarray::array![[0.3, -0.7, 0.2]];
    let labels = vec![1.0];
    let model = LinearModel { rows: rows.clone() };
    let config = TrainConfig {
        epochs: 3,
        learning_rate: 0.05,
        batch_size: 1,
        seed: 9,
        ..TrainConfig::default()
    };

    let mut trained = vec![0.1, 0.2, -0.3];
    fit(&model, &mut trained, &labels, &config).unwrap();

    let mut manual = vec![0.1, 0.2, -0.3];
    let mut state = AdamState::new(3);
    let adam = config.adam_params();
    for _ in 0..config.epochs {
        let prediction: f64 = rows.row(0).iter().zip(&manual).map(|(x, w)| x * w).sum();
        let upstream = hinge_gradient(prediction, labels[0]).unwrap();
        let grad: Vec<f64> = rows.row(0).iter().map(|x| upstream * x).collect();
        adam_update(&mut manual, &grad, &mut state, &adam).unwrap();
    }

    assert_eq!(trained, manual, "fit deviates from a hand-stepped Adam");
}
