#pragma once

#include <span>

#include "qgan/statevector.hpp"

namespace qgan {

/// Computational basis state with bits[k] on qubit k (little-endian).
StateVector basis_encode(std::span<const int> bits);

/// Embeds the data into the amplitudes after Euclidean normalization,
/// zero-padding up to the next power of two (at least one qubit).
/// Throws std::domain_error on an all-zero vector.
StateVector amplitude_encode(std::span<const double> data);

/// Two features per qubit: cos(pi x_{2i})|0> + e^{i 2 pi x_{2i+1}} sin(pi x_{2i})|1>,
/// tensored with pair i on qubit i. Length must be even and at most 8.
StateVector dense_angle_encode(std::span<const double> data);

} // namespace qgan
