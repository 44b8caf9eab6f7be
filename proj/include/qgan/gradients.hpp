#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qgan/circuit.hpp"

namespace qgan {

/// Optional instrumentation: counts circuit evaluations and records the
/// l2 norm of each full gradient (vanishing-gradient diagnostic).
struct GradientTelemetry {
    std::uint64_t circuit_evaluations = 0;
    std::vector<double> gradient_norms;
};

/// Pauli-Z expectation of the bound circuit on the given qubit.
double expectation(const Circuit& circuit, std::span<const double> features,
                   std::span<const double> theta, int qubit,
                   GradientTelemetry* telemetry = nullptr);

/// Exact derivative d<Z>/d theta[i] via the +-pi/2 parameter shift.
double param_shift_derivative(const Circuit& circuit, std::span<const double> features,
                              std::span<const double> theta, int i, int qubit,
                              GradientTelemetry* telemetry = nullptr);

/// Full gradient; costs exactly 2 * num_trainable circuit evaluations.
std::vector<double> param_shift_gradient(const Circuit& circuit,
                                         std::span<const double> features,
                                         std::span<const double> theta, int qubit,
                                         GradientTelemetry* telemetry = nullptr);

/// Exact derivative d<Z>/d features[j]: sums the per-occurrence pi/2 shift
/// over every gate bound to feature j, chained through each gate's scale.
double feature_derivative(const Circuit& circuit, std::span<const double> features,
                          std::span<const double> theta, int j, int qubit,
                          GradientTelemetry* telemetry = nullptr);

/// Heuristic single-shift form k * [<Z>(x_j + delta) - <Z>(x_j - delta)]
/// with the shift applied in feature units.
double feature_shift_estimate(const Circuit& circuit, std::span<const double> features,
                              std::span<const double> theta, int j, int qubit,
                              double k, double delta,
                              GradientTelemetry* telemetry = nullptr);

/// Central-difference oracle for d<Z>/d theta[i]. epsilon must lie in
/// [1e-7, 1e-2].
double finite_difference(const Circuit& circuit, std::span<const double> features,
                         std::span<const double> theta, int i, int qubit,
                         double epsilon);

} // namespace qgan
