//! Seeded random-circuit generators shared by oracle-comparison tests.

use qmlbench_core::sim::{Circuit, Gate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random bound circuit drawing uniformly from the whole gate set.
///
/// Angles are uniform in `(−π, π)`; two-qubit targets are distinct by
/// construction. Deterministic per seed.
pub fn random_circuit(seed: u64, num_qubits: usize, num_gates: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut circuit = Circuit::new(num_qubits).expect("valid width");
    for _ in 0..num_gates {
        circuit
            .push(random_gate(&mut rng, num_qubits))
            .expect("generated gates are valid");
    }
    circuit
}

/// One random gate; two-qubit kinds are skipped on 1-qubit registers.
pub fn random_gate(rng: &mut ChaCha8Rng, num_qubits: usize) -> Gate {
    let q = rng.gen_range(0..num_qubits);
    let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let two_qubit_ok = num_qubits >= 2;
    loop {
        let choice = rng.gen_range(0..10);
        if !two_qubit_ok && choice >= 6 {
            continue;
        }
        let p = if two_qubit_ok {
            let mut p = rng.gen_range(0..num_qubits);
            while p == q {
                p = rng.gen_range(0..num_qubits);
            }
            p
        } else {
            q
        };
        return match choice {
            0 => Gate::h(q),
            1 => Gate::x(q),
            2 => Gate::z(q),
            3 => Gate::rx(q, theta),
            4 => Gate::ry(q, theta),
            5 => Gate::rz(q, theta),
            6 => Gate::cnot(q, p),
            7 => Gate::cz(q, p),
            8 => Gate::xx(q, p, theta),
            _ => Gate::zz(q, p, theta),
        };
    }
}
