#include "qgan/statevector.hpp"

#include <stdexcept>
#include <string>

namespace qgan {

StateVector zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("zero_state: num_qubits must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
    StateVector state;
    state.num_qubits = num_qubits;
    state.amplitudes.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    state.amplitudes[0] = cplx{1.0, 0.0};
    return state;
}

double norm_squared(const StateVector& state) {
    double total = 0.0;
    for (const cplx& a : state.amplitudes) total += std::norm(a);
    return total;
}

double expectation_pauli_z(const StateVector& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw std::invalid_argument("expectation_pauli_z: qubit " + std::to_string(qubit) +
                                    " out of range for " + std::to_string(state.num_qubits) +
                                    " qubits");
    }
    const std::size_t mask = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        value += (i & mask) ? -p : p;
    }
    return value;
}

} // namespace qgan
