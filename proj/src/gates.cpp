#include "qgan/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgan {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_targets(const StateVector& state, GateKind kind, std::span<const int> targets) {
    const int arity = gate_arity(kind);
    if (static_cast<int>(targets.size()) != arity) {
        throw std::invalid_argument(std::string("apply_gate: ") + std::string(gate_name(kind)) +
                                    " expects " + std::to_string(arity) + " target(s), got " +
                                    std::to_string(targets.size()));
    }
    for (int t : targets) {
        if (t < 0 || t >= state.num_qubits) {
            throw std::invalid_argument("apply_gate: target " + std::to_string(t) +
                                        " out of range for " + std::to_string(state.num_qubits) +
                                        " qubits");
        }
    }
    if (arity == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument("apply_gate: duplicate target qubit " +
                                    std::to_string(targets[0]));
    }
}

void apply_1q(StateVector& state, const GateMatrix& m, int target) {
    const std::size_t mask = std::size_t{1} << target;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        if (i & mask) continue;
        const cplx a0 = state.amplitudes[i];
        const cplx a1 = state.amplitudes[i | mask];
        state.amplitudes[i] = m.at(0, 0) * a0 + m.at(0, 1) * a1;
        state.amplitudes[i | mask] = m.at(1, 0) * a0 + m.at(1, 1) * a1;
    }
}

void apply_2q(StateVector& state, const GateMatrix& m, int t0, int t1) {
    // Sub-block index convention: bit 0 of the 4x4 basis is targets[0].
    const std::size_t mask0 = std::size_t{1} << t0;
    const std::size_t mask1 = std::size_t{1} << t1;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        if ((i & mask0) || (i & mask1)) continue;
        const std::size_t idx[4] = {i, i | mask0, i | mask1, i | mask0 | mask1};
        cplx in[4];
        for (int k = 0; k < 4; ++k) in[k] = state.amplitudes[idx[k]];
        for (int r = 0; r < 4; ++r) {
            cplx acc{0.0, 0.0};
            for (int c = 0; c < 4; ++c) acc += m.at(r, c) * in[c];
            state.amplitudes[idx[r]] = acc;
        }
    }
}

} // namespace

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return 1;
        case GateKind::RXX:
        case GateKind::RYY:
            return 2;
    }
    throw std::invalid_argument("gate_arity: unknown gate kind");
}

bool gate_is_angled(GateKind kind) { return kind != GateKind::H; }

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::RXX: return "RXX";
        case GateKind::RYY: return "RYY";
    }
    throw std::invalid_argument("gate_name: unknown gate kind");
}

std::optional<GateKind> gate_from_name(std::string_view name) {
    if (name == "H") return GateKind::H;
    if (name == "RX") return GateKind::RX;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "RXX") return GateKind::RXX;
    if (name == "RYY") return GateKind::RYY;
    return std::nullopt;
}

GateMatrix gate_matrix(GateKind kind, double angle) {
    GateMatrix m;
    if (kind == GateKind::H) {
        const double s = 1.0 / std::sqrt(2.0);
        m.dim = 2;
        m.at(0, 0) = s;
        m.at(0, 1) = s;
        m.at(1, 0) = s;
        m.at(1, 1) = -s;
        return m;
    }
    if (!std::isfinite(angle)) {
        throw std::invalid_argument(std::string("gate_matrix: non-finite angle for ") +
                                    std::string(gate_name(kind)));
    }
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
        case GateKind::RX:
            m.dim = 2;
            m.at(0, 0) = c;
            m.at(0, 1) = -kI * s;
            m.at(1, 0) = -kI * s;
            m.at(1, 1) = c;
            break;
        case GateKind::RY:
            m.dim = 2;
            m.at(0, 0) = c;
            m.at(0, 1) = -s;
            m.at(1, 0) = s;
            m.at(1, 1) = c;
            break;
        case GateKind::RZ:
            m.dim = 2;
            m.at(0, 0) = c - kI * s;
            m.at(1, 1) = c + kI * s;
            break;
        case GateKind::RXX:
            // generator sigma_x (x) sigma_x: flips both bits
            m.dim = 4;
            for (int k = 0; k < 4; ++k) {
                m.at(k, k) = c;
                m.at(k ^ 3, k) = -kI * s;
            }
            break;
        case GateKind::RYY:
            // sigma_y (x) sigma_y |b1 b0> = -(-1)^(b0+b1) |~b1 ~b0>
            m.dim = 4;
            for (int k = 0; k < 4; ++k) {
                const double sign = (k == 0 || k == 3) ? -1.0 : 1.0;
                m.at(k, k) = c;
                m.at(k ^ 3, k) = -kI * s * sign;
            }
            break;
        case GateKind::H:
            break;  // handled above
    }
    return m;
}

void apply_gate_in_place(StateVector& state, GateKind kind, double angle,
                         std::span<const int> targets) {
    check_targets(state, kind, targets);
    const GateMatrix m = gate_matrix(kind, angle);
    if (m.dim == 2) {
        apply_1q(state, m, targets[0]);
    } else {
        apply_2q(state, m, targets[0], targets[1]);
    }
}

StateVector apply_gate(StateVector state, GateKind kind, double angle,
                       std::span<const int> targets) {
    apply_gate_in_place(state, kind, angle, targets);
    return state;
}

} // namespace qgan
