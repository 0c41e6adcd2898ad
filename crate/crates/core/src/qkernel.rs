//! Quantum fidelity kernels: a data-parametrized feature-map circuit,
//! exact and shot-sampled kernel entries, Gram/cross matrices, and a
//! small binary cache format.
//!
//! # Feature map
//!
//! One repetition applies `H` to every qubit, `RZ(2π·x_i)` to qubit
//! `i`, then `ZZ(π·x_i·x_{i+1})` along the linear chain. Inputs are
//! expected pre-scaled to `[0, 1]` (see
//! [`crate::encoding::FeatureScaler`]); the default benchmark depth is
//! 2 repetitions.
//!
//! # Kernel estimation
//!
//! * **Exact**: `K(x, y) = |⟨ψ(y)|ψ(x)⟩|²` from the two statevectors.
//! * **Sampled**: the inversion test — run `U(x)` then `U(y)⁻¹` on
//!   `|0…0⟩` and estimate the all-zeros outcome probability from a
//!   finite number of shots, which is what shot-based hardware provides.
//!
//! Gram construction computes the upper triangle only (mirrored), in
//! parallel; sampled entries draw from per-entry seeds derived as
//! `mix(master_seed, [i, j])` so thread scheduling cannot affect any
//! value. Exact Grams cache feature-map states in bounded-memory blocks
//! so sample counts in the thousands stay workable at 16 qubits.

use std::io::{Read, Write};
use std::path::Path;

use ndarray::{Array2, ArrayView2};
use rayon::prelude::*;
use thiserror::Error;

use crate::rng::mix;
use crate::sim::{
    fidelity_overlap, run_circuit, sample_measurements, Circuit, Gate, SimError, StateVector,
};

/// Cache-file magic bytes.
const CACHE_MAGIC: &[u8; 4] = b"QKM1";
/// Memory budget for cached feature-map states during Gram
/// construction (two blocks of states live at once).
const STATE_CACHE_BUDGET_BYTES: usize = 1 << 28;
/// Domain tag separating cross-matrix seed streams from Gram streams
/// (the ASCII bytes of "cross").
const CROSS_STREAM_TAG: u64 = 0x0063_726f_7373;

/// Errors raised by kernel construction and caching.
#[derive(Debug, Error)]
pub enum QkernelError {
    /// Feature-map specs need at least one qubit and one repetition.
    #[error("feature map needs num_qubits >= 1 and depth >= 1, got {num_qubits}, {depth}")]
    BadSpec { num_qubits: usize, depth: usize },
    /// Input length must equal the feature map's qubit count.
    #[error("input has {actual} features, feature map expects {expected}")]
    ArityMismatch { expected: usize, actual: usize },
    /// A feature value was NaN or infinite.
    #[error("non-finite feature {value} at index {index}")]
    NonFinite { index: usize, value: f64 },
    /// Sampled estimation needs at least one shot.
    #[error("sampled kernel estimation needs shots >= 1")]
    ZeroShots,
    /// Matrix construction needs at least one row.
    #[error("kernel matrix needs at least one input row")]
    EmptyInput,
    /// Cache file does not start with the expected magic bytes.
    #[error("kernel cache has wrong magic bytes")]
    BadMagic,
    /// Cache mode byte is neither 0 (exact) nor 1 (sampled).
    #[error("kernel cache has unknown mode byte {0}")]
    BadModeByte(u8),
    /// Cache payload is shorter than the header promises.
    #[error("kernel cache is truncated: expected {expected} matrix bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
    /// Underlying simulator failure.
    #[error(transparent)]
    Sim(#[from] SimError),
    /// Filesystem failure while reading or writing a cache.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Shape of the feature-map circuit: qubit count and repetition depth.
/// The entangling pattern is a fixed linear chain (qubit `i` with
/// `i+1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureMapSpec {
    num_qubits: usize,
    depth: usize,
}

impl FeatureMapSpec {
    /// Benchmark default repetition depth.
    pub const DEFAULT_DEPTH: usize = 2;

    /// Validates and builds a spec.
    pub fn new(num_qubits: usize, depth: usize) -> Result<Self, QkernelError> {
        if num_qubits == 0 || depth == 0 {
            return Err(QkernelError::BadSpec { num_qubits, depth });
        }
        Ok(Self { num_qubits, depth })
    }

    /// Number of data qubits (== input arity).
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Number of map repetitions.
    pub fn depth(&self) -> usize {
        self.depth
    }
}

/// How kernel values are estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    /// Statevector fidelity, exact to floating point.
    Exact,
    /// Inversion-test estimate from `shots` measurement samples. For a
    /// single entry, `seed` drives that entry's sampler; for a matrix,
    /// it is the master seed from which per-entry seeds are derived.
    Sampled { shots: u64, seed: u64 },
}

/// Provenance of a finished kernel matrix. Sampled matrices loaded from
/// a cache have an unknown shot count (the format does not store it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Exact,
    Sampled { shots: Option<u64> },
}

/// A symmetric positive-semidefinite kernel (Gram) matrix with its
/// provenance flag.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix {
    values: Array2<f64>,
    kind: KernelKind,
}

impl KernelMatrix {
    /// The n×n kernel values.
    pub fn values(&self) -> ArrayView2<'_, f64> {
        self.values.view()
    }

    /// Number of rows/columns.
    pub fn len(&self) -> usize {
        self.values.nrows()
    }

    /// True when the matrix is 0×0 (never produced by construction).
    pub fn is_empty(&self) -> bool {
        self.values.nrows() == 0
    }

    /// Exact or sampled provenance.
    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// One kernel row, aligned with the training order (for SVM
    /// prediction interfaces).
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.values.row(i).to_vec()
    }

    /// Writes the matrix in the binary cache layout: magic `QKM1`, the
    /// size as a 64-bit little-endian integer, one mode byte (0 exact,
    /// 1 sampled), then row-major 64-bit little-endian floats. Shot
    /// counts are not persisted.
    pub fn save(&self, path: &Path) -> Result<(), QkernelError> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(CACHE_MAGIC)?;
        file.write_all(&(self.len() as u64).to_le_bytes())?;
        let mode_byte = match self.kind {
            KernelKind::Exact => 0u8,
            KernelKind::Sampled { .. } => 1u8,
        };
        file.write_all(&[mode_byte])?;
        for value in self.values.iter() {
            file.write_all(&value.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a matrix written by [`KernelMatrix::save`].
    pub fn load(path: &Path) -> Result<Self, QkernelError> {
        let mut bytes = Vec::new();
        std::fs::File::open(path)?.read_to_end(&mut bytes)?;
        if bytes.len() < 13 || &bytes[..4] != CACHE_MAGIC {
            if bytes.len() >= 4 && &bytes[..4] != CACHE_MAGIC {
                return Err(QkernelError::BadMagic);
            }
            return Err(QkernelError::Truncated {
                expected: 13,
                actual: bytes.len(),
            });
        }
        let n = u64::from_le_bytes(bytes[4..12].try_into().unwrap()) as usize;
        let kind = match bytes[12] {
            0 => KernelKind::Exact,
            1 => KernelKind::Sampled { shots: None },
            other => return Err(QkernelError::BadModeByte(other)),
        };
        let payload = &bytes[13..];
        let expected = n * n * 8;
        if payload.len() < expected {
            return Err(QkernelError::Truncated {
                expected,
                actual: payload.len(),
            });
        }
        let mut values = Array2::zeros((n, n));
        for (slot, chunk) in values.iter_mut().zip(payload.chunks_exact(8)) {
            *slot = f64::from_le_bytes(chunk.try_into().unwrap());
        }
        Ok(Self { values, kind })
    }
}

fn check_input(x: &[f64], spec: &FeatureMapSpec) -> Result<(), QkernelError> {
    if x.len() != spec.num_qubits {
        return Err(QkernelError::ArityMismatch {
            expected: spec.num_qubits,
            actual: x.len(),
        });
    }
    for (index, &value) in x.iter().enumerate() {
        if !value.is_finite() {
            return Err(QkernelError::NonFinite { index, value });
        }
    }
    Ok(())
}

/// Builds the data-encoding circuit for one input vector. The gate
/// sequence depends only on the map's shape, never on the values, so
/// circuits of equal arity are structurally identical.
pub fn feature_map_circuit(x: &[f64], spec: &FeatureMapSpec) -> Result<Circuit, QkernelError> {
    check_input(x, spec)?;
    let q = spec.num_qubits;
    let mut circuit = Circuit::new(q)?;
    for _ in 0..spec.depth {
        for qubit in 0..q {
            circuit.push(Gate::h(qubit))?;
        }
        for (qubit, &value) in x.iter().enumerate() {
            circuit.push(Gate::rz(qubit, std::f64::consts::TAU * value))?;
        }
        for i in 0..q.saturating_sub(1) {
            circuit.push(Gate::zz(i, i + 1, std::f64::consts::PI * x[i] * x[i + 1]))?;
        }
    }
    Ok(circuit)
}

/// The feature-map state `U(x)|0…0⟩`.
fn feature_map_state(x: &[f64], spec: &FeatureMapSpec) -> Result<StateVector, QkernelError> {
    Ok(run_circuit(&feature_map_circuit(x, spec)?, &[], None)?)
}

/// One kernel value in `[0, 1]`.
pub fn kernel_entry(
    x: &[f64],
    y: &[f64],
    spec: &FeatureMapSpec,
    mode: KernelMode,
) -> Result<f64, QkernelError> {
    check_input(x, spec)?;
    check_input(y, spec)?;
    match mode {
        KernelMode::Exact => {
            let a = feature_map_state(x, spec)?;
            let b = feature_map_state(y, spec)?;
            Ok(fidelity_overlap(&a, &b)?.clamp(0.0, 1.0))
        }
        KernelMode::Sampled { shots, seed } => {
            if shots == 0 {
                return Err(QkernelError::ZeroShots);
            }
            let mut circuit = feature_map_circuit(x, spec)?;
            circuit.append(&feature_map_circuit(y, spec)?.inverse()?)?;
            let state = run_circuit(&circuit, &[], None)?;
            let counts = sample_measurements(&state, shots, seed)?;
            let zeros = "0".repeat(spec.num_qubits);
            let hits = counts.get(&zeros).copied().unwrap_or(0);
            Ok(hits as f64 / shots as f64)
        }
    }
}

/// Collects feature-map states for a slice of row indices, in parallel,
/// ordered by position.
fn states_for(
    rows: ArrayView2<'_, f64>,
    indices: std::ops::Range<usize>,
    spec: &FeatureMapSpec,
) -> Result<Vec<StateVector>, QkernelError> {
    indices
        .into_par_iter()
        .map(|i| feature_map_state(&rows.row(i).to_vec(), spec))
        .collect()
}

/// Exact Gram via block-cached states: rows are processed in blocks
/// small enough that two blocks of statevectors fit the memory budget.
fn exact_gram(
    rows: ArrayView2<'_, f64>,
    spec: &FeatureMapSpec,
) -> Result<Array2<f64>, QkernelError> {
    let n = rows.nrows();
    let state_bytes = (1usize << spec.num_qubits) * std::mem::size_of::<num_complex::Complex64>();
    let block = (STATE_CACHE_BUDGET_BYTES / (2 * state_bytes)).max(1).min(n);
    let mut values = Array2::zeros((n, n));

    let fill = |pairs: &[(usize, usize)],
                left: &[StateVector],
                left_start: usize,
                right: &[StateVector],
                right_start: usize,
                values: &mut Array2<f64>|
     -> Result<(), QkernelError> {
        let computed: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, j)| {
                fidelity_overlap(&left[i - left_start], &right[j - right_start])
                    .map(|v| v.clamp(0.0, 1.0))
            })
            .collect::<Result<_, _>>()?;
        for (&(i, j), value) in pairs.iter().zip(computed) {
            values[(i, j)] = value;
            values[(j, i)] = value;
        }
        Ok(())
    };

    let mut j_start = 0;
    while j_start < n {
        let j_end = (j_start + block).min(n);
        let j_states = states_for(rows, j_start..j_end, spec)?;

        // Upper triangle (diagonal included) within the block.
        let mut pairs = Vec::new();
        for i in j_start..j_end {
            for j in i..j_end {
                pairs.push((i, j));
            }
        }
        fill(&pairs, &j_states, j_start, &j_states, j_start, &mut values)?;

        // Earlier row blocks against this block.
        let mut i_start = 0;
        while i_start < j_start {
            let i_end = (i_start + block).min(j_start);
            let i_states = states_for(rows, i_start..i_end, spec)?;
            let mut pairs = Vec::new();
            for i in i_start..i_end {
                for j in j_start..j_end {
                    pairs.push((i, j));
                }
            }
            fill(&pairs, &i_states, i_start, &j_states, j_start, &mut values)?;
            i_start = i_end;
        }
        j_start = j_end;
    }
    Ok(values)
}

/// Builds the n×n kernel matrix over the given sample rows. Only the
/// upper triangle is computed and then mirrored; in sampled mode the
/// diagonal is set to exactly 1 (the inversion test of a state against
/// itself is the identity circuit) and entry `(i, j)` draws from the
/// seed `mix(seed, [i, j])`.
pub fn kernel_matrix(
    rows: ArrayView2<'_, f64>,
    spec: &FeatureMapSpec,
    mode: KernelMode,
) -> Result<KernelMatrix, QkernelError> {
    let n = rows.nrows();
    if n == 0 {
        return Err(QkernelError::EmptyInput);
    }
    for i in 0..n {
        check_input(&rows.row(i).to_vec(), spec)?;
    }
    match mode {
        KernelMode::Exact => Ok(KernelMatrix {
            values: exact_gram(rows, spec)?,
            kind: KernelKind::Exact,
        }),
        KernelMode::Sampled { shots, seed } => {
            if shots == 0 {
                return Err(QkernelError::ZeroShots);
            }
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pairs.push((i, j));
                }
            }
            let computed: Vec<f64> = pairs
                .par_iter()
                .map(|&(i, j)| {
                    kernel_entry(
                        &rows.row(i).to_vec(),
                        &rows.row(j).to_vec(),
                        spec,
                        KernelMode::Sampled {
                            shots,
                            seed: mix(seed, &[i as u64, j as u64]),
                        },
                    )
                })
                .collect::<Result<_, _>>()?;
            let mut values = Array2::zeros((n, n));
            for k in 0..n {
                values[(k, k)] = 1.0;
            }
            for (&(i, j), value) in pairs.iter().zip(computed) {
                values[(i, j)] = value;
                values[(j, i)] = value;
            }
            Ok(KernelMatrix {
                values,
                kind: KernelKind::Sampled { shots: Some(shots) },
            })
        }
    }
}

/// Rectangular kernel block between two sample sets (rows of `left`
/// against rows of `right`); used for test-versus-train prediction
/// rows. Sampled entries draw from a stream disjoint from Gram entries.
pub fn kernel_cross(
    left: ArrayView2<'_, f64>,
    right: ArrayView2<'_, f64>,
    spec: &FeatureMapSpec,
    mode: KernelMode,
) -> Result<Array2<f64>, QkernelError> {
    if left.nrows() == 0 || right.nrows() == 0 {
        return Err(QkernelError::EmptyInput);
    }
    for i in 0..left.nrows() {
        check_input(&left.row(i).to_vec(), spec)?;
    }
    for j in 0..right.nrows() {
        check_input(&right.row(j).to_vec(), spec)?;
    }
    if let KernelMode::Sampled { shots, .. } = mode {
        if shots == 0 {
            return Err(QkernelError::ZeroShots);
        }
    }
    let mut pairs = Vec::with_capacity(left.nrows() * right.nrows());
    for i in 0..left.nrows() {
        for j in 0..right.nrows() {
            pairs.push((i, j));
        }
    }
    let computed: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let entry_mode = match mode {
                KernelMode::Exact => KernelMode::Exact,
                KernelMode::Sampled { shots, seed } => KernelMode::Sampled {
                    shots,
                    seed: mix(seed, &[CROSS_STREAM_TAG, i as u64, j as u64]),
                },
            };
            kernel_entry(
                &left.row(i).to_vec(),
                &right.row(j).to_vec(),
                spec,
                entry_mode,
            )
        })
        .collect::<Result<_, _>>()?;
    let mut values = Array2::zeros((left.nrows(), right.nrows()));
    for (&(i, j), value) in pairs.iter().zip(computed) {
        values[(i, j)] = value;
    }
    Ok(values)
}
