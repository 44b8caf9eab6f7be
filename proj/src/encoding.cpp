#include "qgan/encoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgan {

StateVector basis_encode(std::span<const int> bits) {
    if (bits.empty() || bits.size() > kMaxQubits) {
        throw std::invalid_argument("basis_encode: need between 1 and " +
                                    std::to_string(kMaxQubits) + " bits");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] != 0 && bits[k] != 1) {
            throw std::invalid_argument("basis_encode: entry " + std::to_string(k) +
                                        " is not a bit");
        }
        index |= static_cast<std::size_t>(bits[k]) << k;
    }
    StateVector state = zero_state(static_cast<int>(bits.size()));
    state.amplitudes[0] = cplx{0.0, 0.0};
    state.amplitudes[index] = cplx{1.0, 0.0};
    return state;
}

StateVector amplitude_encode(std::span<const double> data) {
    if (data.empty() || data.size() > (std::size_t{1} << kMaxQubits)) {
        throw std::invalid_argument("amplitude_encode: length must be in [1, 16]");
    }
    double norm_sq = 0.0;
    for (double x : data) norm_sq += x * x;
    if (norm_sq == 0.0) {
        throw std::domain_error("amplitude_encode: all-zero vector has no normalization");
    }
    int num_qubits = 1;
    while ((std::size_t{1} << num_qubits) < data.size()) ++num_qubits;
    StateVector state = zero_state(num_qubits);
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    state.amplitudes[0] = cplx{0.0, 0.0};
    for (std::size_t i = 0; i < data.size(); ++i) {
        state.amplitudes[i] = cplx{data[i] * inv_norm, 0.0};
    }
    return state;
}

StateVector dense_angle_encode(std::span<const double> data) {
    if (data.empty() || data.size() % 2 != 0 || data.size() > 2 * kMaxQubits) {
        throw std::invalid_argument("dense_angle_encode: length must be even and in [2, 8]");
    }
    const std::size_t num_qubits = data.size() / 2;
    // Per-qubit single-qubit states, tensored little-endian (pair i -> qubit i).
    StateVector state = zero_state(static_cast<int>(num_qubits));
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        cplx amp{1.0, 0.0};
        for (std::size_t q = 0; q < num_qubits; ++q) {
            const double a = std::numbers::pi * data[2 * q];
            const double phase = 2.0 * std::numbers::pi * data[2 * q + 1];
            if (i & (std::size_t{1} << q)) {
                amp *= std::sin(a) * cplx{std::cos(phase), std::sin(phase)};
            } else {
                amp *= std::cos(a);
            }
        }
        state.amplitudes[i] = amp;
    }
    return state;
}

} // namespace qgan
