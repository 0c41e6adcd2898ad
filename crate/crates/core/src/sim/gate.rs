//! Gate descriptions and the in-place amplitude kernels that apply them.

use num_complex::Complex64;

use super::SimError;

/// The supported gate set.
///
/// `Xx` and `Zz` are the two-qubit couplings `exp(−i·θ/2·X⊗X)` and
/// `exp(−i·θ/2·Z⊗Z)`; the single-qubit rotations follow the same
/// half-angle convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Z,
    Rx,
    Ry,
    Rz,
    Cnot,
    Cz,
    Xx,
    Zz,
}

impl GateKind {
    /// Number of qubits the gate acts on (1 or 2).
    pub fn arity(self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Z
            | GateKind::Rx
            | GateKind::Ry
            | GateKind::Rz => 1,
            GateKind::Cnot | GateKind::Cz | GateKind::Xx | GateKind::Zz => 2,
        }
    }

    /// Whether the gate carries exactly one angle parameter.
    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Xx | GateKind::Zz
        )
    }
}

/// A rotation angle: either a concrete value in radians or a symbolic
/// reference into a circuit's parameter vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Bound(f64),
    Free(usize),
}

/// One gate instance: a kind, its target qubit(s), and — for the five
/// rotation kinds — exactly one [`Param`].
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: [usize; 2],
    param: Option<Param>,
}

impl Gate {
    pub fn h(q: usize) -> Self {
        Self::fixed1(GateKind::H, q)
    }

    pub fn x(q: usize) -> Self {
        Self::fixed1(GateKind::X, q)
    }

    pub fn z(q: usize) -> Self {
        Self::fixed1(GateKind::Z, q)
    }

    pub fn rx(q: usize, param: impl Into<Param>) -> Self {
        Self::rot1(GateKind::Rx, q, param.into())
    }

    pub fn ry(q: usize, param: impl Into<Param>) -> Self {
        Self::rot1(GateKind::Ry, q, param.into())
    }

    pub fn rz(q: usize, param: impl Into<Param>) -> Self {
        Self::rot1(GateKind::Rz, q, param.into())
    }

    /// Controlled-NOT with `control` flipping `target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::Cnot,
            targets: [control, target],
            param: None,
        }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self {
            kind: GateKind::Cz,
            targets: [a, b],
            param: None,
        }
    }

    pub fn xx(a: usize, b: usize, param: impl Into<Param>) -> Self {
        Self {
            kind: GateKind::Xx,
            targets: [a, b],
            param: Some(param.into()),
        }
    }

    pub fn zz(a: usize, b: usize, param: impl Into<Param>) -> Self {
        Self {
            kind: GateKind::Zz,
            targets: [a, b],
            param: Some(param.into()),
        }
    }

    fn fixed1(kind: GateKind, q: usize) -> Self {
        Self {
            kind,
            targets: [q, q],
            param: None,
        }
    }

    fn rot1(kind: GateKind, q: usize, param: Param) -> Self {
        Self {
            kind,
            targets: [q, q],
            param: Some(param),
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    /// Target qubits, one entry per qubit the gate acts on.
    pub fn targets(&self) -> &[usize] {
        &self.targets[..self.kind.arity()]
    }

    pub fn param(&self) -> Option<Param> {
        self.param
    }

    /// Highest symbolic parameter index used, if any.
    pub fn free_index(&self) -> Option<usize> {
        match self.param {
            Some(Param::Free(i)) => Some(i),
            _ => None,
        }
    }

    /// The concrete angle, resolving symbolic parameters against `values`.
    pub fn angle(&self, values: &[f64]) -> Result<Option<f64>, SimError> {
        match self.param {
            None => Ok(None),
            Some(Param::Bound(theta)) => Ok(Some(theta)),
            Some(Param::Free(index)) => values
                .get(index)
                .copied()
                .map(Some)
                .ok_or(SimError::UnboundParameter { index }),
        }
    }

    /// A copy with any symbolic parameter replaced by its value.
    pub fn bind(&self, values: &[f64]) -> Result<Gate, SimError> {
        let mut gate = self.clone();
        if let Some(Param::Free(index)) = self.param {
            let value = values
                .get(index)
                .copied()
                .ok_or(SimError::UnboundParameter { index })?;
            gate.param = Some(Param::Bound(value));
        }
        Ok(gate)
    }

    /// The inverse gate. Rotations negate their (bound) angle; the
    /// remaining kinds are self-inverse. Fails on unbound parameters.
    pub fn inverse(&self) -> Result<Gate, SimError> {
        let mut gate = self.clone();
        gate.param = match self.param {
            None => None,
            Some(Param::Bound(theta)) => Some(Param::Bound(-theta)),
            Some(Param::Free(index)) => return Err(SimError::UnboundParameter { index }),
        };
        Ok(gate)
    }

    /// Validates targets against a register width: in range and distinct.
    pub(crate) fn check_targets(&self, num_qubits: usize) -> Result<(), SimError> {
        for &q in self.targets() {
            if q >= num_qubits {
                return Err(SimError::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        if self.kind.arity() == 2 && self.targets[0] == self.targets[1] {
            return Err(SimError::DuplicateTargets {
                index: self.targets[0],
            });
        }
        Ok(())
    }
}

impl From<f64> for Param {
    fn from(theta: f64) -> Self {
        Param::Bound(theta)
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Applies `gate` to the amplitude array of an `num_qubits`-wide register,
/// resolving symbolic parameters against `values`.
pub(super) fn apply_in_place(
    amps: &mut [Complex64],
    num_qubits: usize,
    gate: &Gate,
    values: &[f64],
) -> Result<(), SimError> {
    gate.check_targets(num_qubits)?;
    let angle = gate.angle(values)?;
    let targets = gate.targets();
    match gate.kind() {
        GateKind::H => {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            single_qubit(amps, targets[0], |a, b| (h * (a + b), h * (a - b)));
        }
        GateKind::X => {
            single_qubit(amps, targets[0], |a, b| (b, a));
        }
        GateKind::Z => {
            let bit = 1usize << targets[0];
            for (i, amp) in amps.iter_mut().enumerate() {
                if i & bit != 0 {
                    *amp = -*amp;
                }
            }
        }
        GateKind::Rx => {
            let (c, s) = half_angle(angle);
            let ms = Complex64::new(0.0, -s);
            single_qubit(amps, targets[0], |a, b| (c * a + ms * b, ms * a + c * b));
        }
        GateKind::Ry => {
            let (c, s) = half_angle(angle);
            single_qubit(amps, targets[0], |a, b| (c * a - s * b, s * a + c * b));
        }
        GateKind::Rz => {
            let (c, s) = half_angle(angle);
            let minus = Complex64::new(c, -s);
            let plus = Complex64::new(c, s);
            let bit = 1usize << targets[0];
            for (i, amp) in amps.iter_mut().enumerate() {
                *amp *= if i & bit == 0 { minus } else { plus };
            }
        }
        GateKind::Cnot => {
            let control = 1usize << targets[0];
            let flip = 1usize << targets[1];
            for i in 0..amps.len() {
                if i & control != 0 && i & flip == 0 {
                    amps.swap(i, i | flip);
                }
            }
        }
        GateKind::Cz => {
            let mask = (1usize << targets[0]) | (1usize << targets[1]);
            for (i, amp) in amps.iter_mut().enumerate() {
                if i & mask == mask {
                    *amp = -*amp;
                }
            }
        }
        GateKind::Xx => {
            let (c, s) = half_angle(angle);
            let ms = Complex64::new(0.0, -s);
            let mask = (1usize << targets[0]) | (1usize << targets[1]);
            let high = 1usize << targets[0].max(targets[1]);
            for i in 0..amps.len() {
                if i & high == 0 {
                    let j = i ^ mask;
                    let (a, b) = (amps[i], amps[j]);
                    amps[i] = c * a + ms * b;
                    amps[j] = ms * a + c * b;
                }
            }
        }
        GateKind::Zz => {
            let (c, s) = half_angle(angle);
            let even = Complex64::new(c, -s);
            let odd = Complex64::new(c, s);
            let (qa, qb) = (targets[0], targets[1]);
            for (i, amp) in amps.iter_mut().enumerate() {
                let parity = ((i >> qa) ^ (i >> qb)) & 1;
                *amp *= if parity == 0 { even } else { odd };
            }
        }
    }
    Ok(())
}

/// `(cos(θ/2), sin(θ/2))` for a parametric gate's resolved angle.
fn half_angle(angle: Option<f64>) -> (f64, f64) {
    let theta = angle.expect("parametric gate always carries an angle");
    let half = theta / 2.0;
    (half.cos(), half.sin())
}

/// Applies a 2×2 action over all amplitude pairs split by `qubit`.
fn single_qubit(
    amps: &mut [Complex64],
    qubit: usize,
    action: impl Fn(Complex64, Complex64) -> (Complex64, Complex64),
) {
    let bit = 1usize << qubit;
    for i in 0..amps.len() {
        if i & bit == 0 {
            let j = i | bit;
            let (a, b) = (amps[i], amps[j]);
            let (na, nb) = action(a, b);
            amps[i] = na;
            amps[j] = nb;
        }
    }
}
