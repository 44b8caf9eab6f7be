#include "qgan/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgan {

ParamBinding ParamBinding::constant(double angle) {
    ParamBinding b;
    b.kind = Kind::Constant;
    b.value = angle;
    return b;
}

ParamBinding ParamBinding::feature(int index, double scale) {
    ParamBinding b;
    b.kind = Kind::DataFeature;
    b.index = index;
    b.scale = scale;
    return b;
}

ParamBinding ParamBinding::trainable(int index) {
    ParamBinding b;
    b.kind = Kind::Trainable;
    b.index = index;
    return b;
}

void validate(const Circuit& circuit) {
    if (circuit.num_qubits < 1 || circuit.num_qubits > kMaxQubits) {
        throw std::invalid_argument("circuit: num_qubits out of range");
    }
    if (circuit.num_trainable < 0 || circuit.num_features < 0) {
        throw std::invalid_argument("circuit: negative arity");
    }
    std::vector<bool> trainable_used(circuit.num_trainable, false);
    std::vector<bool> feature_used(circuit.num_features, false);
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const GateSpec& gate = circuit.gates[g];
        const std::string where = "circuit: gate " + std::to_string(g) + " ";
        if (static_cast<int>(gate.targets.size()) != gate_arity(gate.kind)) {
            throw std::invalid_argument(where + "has wrong target arity");
        }
        for (int t : gate.targets) {
            if (t < 0 || t >= circuit.num_qubits) {
                throw std::invalid_argument(where + "targets qubit out of range");
            }
        }
        if (gate.targets.size() == 2 && gate.targets[0] == gate.targets[1]) {
            throw std::invalid_argument(where + "has duplicate targets");
        }
        if (gate_is_angled(gate.kind) != gate.binding.has_value()) {
            throw std::invalid_argument(where + "binding presence does not match gate kind");
        }
        if (!gate.binding) continue;
        const ParamBinding& b = *gate.binding;
        switch (b.kind) {
            case ParamBinding::Kind::Constant:
                if (!std::isfinite(b.value)) {
                    throw std::invalid_argument(where + "has non-finite constant angle");
                }
                break;
            case ParamBinding::Kind::DataFeature:
                if (b.index < 0 || b.index >= circuit.num_features) {
                    throw std::invalid_argument(where + "feature index out of range");
                }
                if (!std::isfinite(b.scale) || b.scale == 0.0) {
                    throw std::invalid_argument(where + "feature scale must be finite and nonzero");
                }
                feature_used[b.index] = true;
                break;
            case ParamBinding::Kind::Trainable:
                if (b.index < 0 || b.index >= circuit.num_trainable) {
                    throw std::invalid_argument(where + "trainable index out of range");
                }
                trainable_used[b.index] = true;
                break;
        }
    }
    for (int i = 0; i < circuit.num_trainable; ++i) {
        if (!trainable_used[i]) {
            throw std::invalid_argument("circuit: trainable index " + std::to_string(i) +
                                        " declared but unused");
        }
    }
    for (int i = 0; i < circuit.num_features; ++i) {
        if (!feature_used[i]) {
            throw std::invalid_argument("circuit: feature index " + std::to_string(i) +
                                        " declared but unused");
        }
    }
    for (int q : circuit.readout_qubits) {
        if (q < 0 || q >= circuit.num_qubits) {
            throw std::invalid_argument("circuit: readout qubit out of range");
        }
    }
}

double resolve_angle(const GateSpec& gate, std::span<const double> features,
                     std::span<const double> theta) {
    if (!gate.binding) return 0.0;
    const ParamBinding& b = *gate.binding;
    switch (b.kind) {
        case ParamBinding::Kind::Constant: return b.value;
        case ParamBinding::Kind::DataFeature: return b.scale * features[b.index];
        case ParamBinding::Kind::Trainable: return theta[b.index];
    }
    return 0.0;
}

namespace {

void check_arities(const Circuit& circuit, std::span<const double> features,
                   std::span<const double> theta) {
    if (static_cast<int>(features.size()) != circuit.num_features) {
        throw std::invalid_argument("bind_and_run: expected " +
                                    std::to_string(circuit.num_features) + " features, got " +
                                    std::to_string(features.size()));
    }
    if (static_cast<int>(theta.size()) != circuit.num_trainable) {
        throw std::invalid_argument("bind_and_run: expected " +
                                    std::to_string(circuit.num_trainable) + " parameters, got " +
                                    std::to_string(theta.size()));
    }
}

} // namespace

StateVector bind_and_run(const Circuit& circuit, std::span<const double> features,
                         std::span<const double> theta) {
    check_arities(circuit, features, theta);
    StateVector state = zero_state(circuit.num_qubits);
    for (const GateSpec& gate : circuit.gates) {
        apply_gate_in_place(state, gate.kind, resolve_angle(gate, features, theta),
                            gate.targets);
    }
    return state;
}

StateVector bind_and_run_shifted(const Circuit& circuit, std::span<const double> features,
                                 std::span<const double> theta, std::size_t shift_gate,
                                 double shift) {
    check_arities(circuit, features, theta);
    if (shift_gate >= circuit.gates.size()) {
        throw std::invalid_argument("bind_and_run_shifted: gate index out of range");
    }
    StateVector state = zero_state(circuit.num_qubits);
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const GateSpec& gate = circuit.gates[g];
        double angle = resolve_angle(gate, features, theta);
        if (g == shift_gate) angle += shift;
        apply_gate_in_place(state, gate.kind, angle, gate.targets);
    }
    return state;
}

Circuit compose(std::span<const Circuit> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("compose: empty part list");
    }
    Circuit out;
    out.num_qubits = parts[0].num_qubits;
    for (const Circuit& part : parts) {
        if (part.num_qubits != out.num_qubits) {
            throw std::invalid_argument("compose: parts disagree on qubit count");
        }
        const int base = out.num_trainable;
        for (GateSpec gate : part.gates) {
            if (gate.binding && gate.binding->kind == ParamBinding::Kind::Trainable) {
                gate.binding->index += base;
            }
            out.gates.push_back(std::move(gate));
        }
        out.num_trainable += part.num_trainable;
        out.num_features = std::max(out.num_features, part.num_features);
    }
    out.readout_qubits = parts.back().readout_qubits;
    validate(out);
    return out;
}

int count_gates(const Circuit& circuit) { return static_cast<int>(circuit.gates.size()); }

int count_trainable(const Circuit& circuit) { return circuit.num_trainable; }

} // namespace qgan
