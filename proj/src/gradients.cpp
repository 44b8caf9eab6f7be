#include "qgan/gradients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qgan {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double eval(const Circuit& circuit, std::span<const double> features,
            std::span<const double> theta, int qubit, GradientTelemetry* telemetry) {
    if (telemetry) ++telemetry->circuit_evaluations;
    return expectation_pauli_z(bind_and_run(circuit, features, theta), qubit);
}

double eval_shifted(const Circuit& circuit, std::span<const double> features,
                    std::span<const double> theta, std::size_t gate, double shift,
                    int qubit, GradientTelemetry* telemetry) {
    if (telemetry) ++telemetry->circuit_evaluations;
    return expectation_pauli_z(bind_and_run_shifted(circuit, features, theta, gate, shift),
                               qubit);
}

void check_param_index(const Circuit& circuit, int i) {
    if (i < 0 || i >= circuit.num_trainable) {
        throw std::invalid_argument("parameter index " + std::to_string(i) +
                                    " out of range for " +
                                    std::to_string(circuit.num_trainable) + " parameters");
    }
}

} // namespace

double expectation(const Circuit& circuit, std::span<const double> features,
                   std::span<const double> theta, int qubit, GradientTelemetry* telemetry) {
    return eval(circuit, features, theta, qubit, telemetry);
}

double param_shift_derivative(const Circuit& circuit, std::span<const double> features,
                              std::span<const double> theta, int i, int qubit,
                              GradientTelemetry* telemetry) {
    check_param_index(circuit, i);
    std::vector<double> shifted(theta.begin(), theta.end());
    shifted[i] = theta[i] + kHalfPi;
    const double plus = eval(circuit, features, shifted, qubit, telemetry);
    shifted[i] = theta[i] - kHalfPi;
    const double minus = eval(circuit, features, shifted, qubit, telemetry);
    return 0.5 * (plus - minus);
}

std::vector<double> param_shift_gradient(const Circuit& circuit,
                                         std::span<const double> features,
                                         std::span<const double> theta, int qubit,
                                         GradientTelemetry* telemetry) {
    std::vector<double> grad(theta.size());
    for (int i = 0; i < circuit.num_trainable; ++i) {
        grad[i] = param_shift_derivative(circuit, features, theta, i, qubit, telemetry);
    }
    if (telemetry) {
        double norm_sq = 0.0;
        for (double g : grad) norm_sq += g * g;
        telemetry->gradient_norms.push_back(std::sqrt(norm_sq));
    }
    return grad;
}

double feature_derivative(const Circuit& circuit, std::span<const double> features,
                          std::span<const double> theta, int j, int qubit,
                          GradientTelemetry* telemetry) {
    if (j < 0 || j >= circuit.num_features) {
        throw std::invalid_argument("feature index " + std::to_string(j) +
                                    " out of range for " +
                                    std::to_string(circuit.num_features) + " features");
    }
    double total = 0.0;
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const auto& binding = circuit.gates[g].binding;
        if (!binding || binding->kind != ParamBinding::Kind::DataFeature ||
            binding->index != j) {
            continue;
        }
        const double plus =
            eval_shifted(circuit, features, theta, g, kHalfPi, qubit, telemetry);
        const double minus =
            eval_shifted(circuit, features, theta, g, -kHalfPi, qubit, telemetry);
        total += binding->scale * 0.5 * (plus - minus);
    }
    return total;
}

double feature_shift_estimate(const Circuit& circuit, std::span<const double> features,
                              std::span<const double> theta, int j, int qubit,
                              double k, double delta, GradientTelemetry* telemetry) {
    if (j < 0 || j >= circuit.num_features) {
        throw std::invalid_argument("feature index " + std::to_string(j) + " out of range");
    }
    std::vector<double> shifted(features.begin(), features.end());
    shifted[j] = features[j] + delta;
    const double plus = eval(circuit, shifted, theta, qubit, telemetry);
    shifted[j] = features[j] - delta;
    const double minus = eval(circuit, shifted, theta, qubit, telemetry);
    return k * (plus - minus);
}

double finite_difference(const Circuit& circuit, std::span<const double> features,
                         std::span<const double> theta, int i, int qubit, double epsilon) {
    if (!(epsilon >= 1e-7 && epsilon <= 1e-2)) {
        throw std::invalid_argument("finite_difference: epsilon must lie in [1e-7, 1e-2]");
    }
    check_param_index(circuit, i);
    std::vector<double> shifted(theta.begin(), theta.end());
    shifted[i] = theta[i] + epsilon;
    const double plus = eval(circuit, features, shifted, qubit, nullptr);
    shifted[i] = theta[i] - epsilon;
    const double minus = eval(circuit, features, shifted, qubit, nullptr);
    return (plus - minus) / (2.0 * epsilon);
}

} // namespace qgan
