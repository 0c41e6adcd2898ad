//! Ordered gate sequences with optional symbolic parameters.

use super::{Gate, SimError, MAX_QUBITS};

/// An ordered gate list over a fixed register width.
///
/// A circuit may declare `num_free_parameters` symbolic angles; gates refer
/// to them by index via [`Param::Free`](super::Param::Free). Circuits with
/// zero free parameters
/// are "bound" and can be inverted, appended to other circuits, and run
/// without a parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    num_free_parameters: usize,
}

impl Circuit {
    /// An empty bound circuit.
    pub fn new(num_qubits: usize) -> Result<Self, SimError> {
        Self::with_free_parameters(num_qubits, 0)
    }

    /// An empty circuit declaring `num_free_parameters` symbolic angles.
    pub fn with_free_parameters(
        num_qubits: usize,
        num_free_parameters: usize,
    ) -> Result<Self, SimError> {
        if num_qubits == 0 {
            return Err(SimError::EmptyRegister);
        }
        if num_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits {
                requested: num_qubits,
            });
        }
        Ok(Self {
            num_qubits,
            gates: Vec::new(),
            num_free_parameters,
        })
    }

    /// Appends a gate, validating targets and any symbolic index.
    pub fn push(&mut self, gate: Gate) -> Result<(), SimError> {
        gate.check_targets(self.num_qubits)?;
        if let Some(index) = gate.free_index() {
            if index >= self.num_free_parameters {
                return Err(SimError::ParameterIndexOutOfRange {
                    index,
                    count: self.num_free_parameters,
                });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of a *bound* circuit; `other` may be narrower
    /// than `self` (its qubit indices are reused verbatim).
    pub fn append(&mut self, other: &Circuit) -> Result<(), SimError> {
        if other.num_free_parameters != 0 {
            return Err(SimError::CircuitNotBound {
                free: other.num_free_parameters,
            });
        }
        if other.num_qubits > self.num_qubits {
            return Err(SimError::QubitCountMismatch {
                expected: self.num_qubits,
                actual: other.num_qubits,
            });
        }
        for gate in &other.gates {
            self.push(gate.clone())?;
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_free_parameters(&self) -> usize {
        self.num_free_parameters
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// A bound copy with every symbolic angle replaced by its value.
    pub fn bind(&self, values: &[f64]) -> Result<Circuit, SimError> {
        if values.len() != self.num_free_parameters {
            return Err(SimError::ParameterCountMismatch {
                expected: self.num_free_parameters,
                actual: values.len(),
            });
        }
        let gates = self
            .gates
            .iter()
            .map(|g| g.bind(values))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
            num_free_parameters: 0,
        })
    }

    /// The inverse of a bound circuit: gates reversed and each inverted.
    pub fn inverse(&self) -> Result<Circuit, SimError> {
        if self.num_free_parameters != 0 {
            return Err(SimError::CircuitNotBound {
                free: self.num_free_parameters,
            });
        }
        let gates = self
            .gates
            .iter()
            .rev()
            .map(Gate::inverse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Circuit {
            num_qubits: self.num_qubits,
            gates,
            num_free_parameters: 0,
        })
    }
}
