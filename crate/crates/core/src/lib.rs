//! Core library of the `qmlbench` benchmark suite.
//!
//! The crate hosts everything the benchmark CLI needs, organized so each
//! layer is usable on its own:
//!
//! * [`sim`] — exact statevector simulation: states, gates, circuits,
//!   Pauli expectations, fidelities, and seeded shot sampling.
//! * [`encoding`] — turning real-valued feature vectors into quantum data
//!   (angle-encoded circuits, amplitude-encoded states).
//! * [`optim`] — the one shared training loop: hinge loss, Adam, and
//!   mini-batch scheduling used by every gradient-trained model here.
//! * [`vqc`] — the variational quantum classifier and its two hybrid
//!   quantum→dense variants, trained by parameter-shift gradients.
//! * [`qkernel`] — fidelity-kernel machinery: feature-map circuits, exact
//!   and shot-sampled kernels, Gram matrices, and a binary cache format.
//! * [`classical`] — classical counterparts: an SMO-based SVM over
//!   pluggable kernels and small dense tanh networks.
//! * [`data`] — dataset ingestion and preprocessing: CSV loading, one-hot
//!   encoding, train-only standardization, PCA, balancing, stratified
//!   subsampling/splitting, synthetic generators, and a hashed-bag text
//!   embedder.
//!
//! Determinism is a cross-cutting contract: every stochastic step takes an
//! explicit seed, parallel code collects results by index before reducing
//! in a fixed order, and reruns with equal inputs reproduce results bit for
//! bit regardless of thread count.

pub mod classical;
pub mod data;
pub mod encoding;
pub mod optim;
pub mod qkernel;
pub mod rng;
pub mod sim;
pub mod vqc;
