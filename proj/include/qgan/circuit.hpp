#pragma once

#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "qgan/gates.hpp"
#include "qgan/statevector.hpp"

namespace qgan {

/// Source of a gate's rotation angle: a fixed constant, a scaled input data
/// feature, or one component of the trainable parameter vector.
struct ParamBinding {
    enum class Kind { Constant, DataFeature, Trainable };

    Kind kind = Kind::Constant;
    double value = 0.0;                      // Constant only
    int index = 0;                           // DataFeature / Trainable
    double scale = std::numbers::pi;         // DataFeature only

    static ParamBinding constant(double angle);
    static ParamBinding feature(int index, double scale = std::numbers::pi);
    static ParamBinding trainable(int index);
};

/// One gate instance: kind, target qubits, and the angle binding
/// (absent exactly when the kind takes no angle).
struct GateSpec {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    std::optional<ParamBinding> binding;
};

/// Ordered gate list with declared parameter and feature arities.
/// Trainable and feature indices are dense: a circuit declaring
/// num_trainable = T uses every index in [0, T), and likewise for features.
struct Circuit {
    int num_qubits = 0;
    std::vector<GateSpec> gates;
    int num_trainable = 0;
    int num_features = 0;
    std::vector<int> readout_qubits;
};

/// Checks structural invariants (arity, target ranges, index density).
/// Throws std::invalid_argument with a description of the first violation.
void validate(const Circuit& circuit);

double resolve_angle(const GateSpec& gate, std::span<const double> features,
                     std::span<const double> theta);

/// Applies every gate in order to |0...0>, resolving bindings to angles.
StateVector bind_and_run(const Circuit& circuit, std::span<const double> features,
                         std::span<const double> theta);

/// Same, with an extra angle offset applied to the single gate at
/// shift_gate (per-occurrence parameter shift).
StateVector bind_and_run_shifted(const Circuit& circuit, std::span<const double> features,
                                 std::span<const double> theta, std::size_t shift_gate,
                                 double shift);

/// Concatenates the parts. Trainable indices of later parts are re-based so
/// the composite parameter vector is the concatenation of the part vectors;
/// feature indices are shared; readout qubits come from the last part.
Circuit compose(std::span<const Circuit> parts);

int count_gates(const Circuit& circuit);
int count_trainable(const Circuit& circuit);

} // namespace qgan
