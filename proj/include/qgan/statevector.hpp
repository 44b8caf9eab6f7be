#pragma once

#include <complex>
#include <vector>

namespace qgan {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 4;

/// Full amplitude vector of an n-qubit pure state (1 <= n <= 4).
///
/// Qubit ordering is little-endian: qubit 0 is the least significant bit
/// of the basis index, so |q3 q2 q1 q0> lives at index q0 + 2*q1 + 4*q2 + 8*q3.
struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
};

/// |0...0> on the given number of qubits.
StateVector zero_state(int num_qubits);

double norm_squared(const StateVector& state);

/// <psi| Z_qubit |psi>: +|a_i|^2 where bit `qubit` of i is 0, - where it is 1.
double expectation_pauli_z(const StateVector& state, int qubit);

} // namespace qgan
