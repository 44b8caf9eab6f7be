#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "qgan/statevector.hpp"

namespace qgan {

/// Gate set used by the circuits in this project. All angled kinds are
/// half-angle rotations exp(-i (theta/2) P) whose generator P is a Pauli
/// word with eigenvalues +-1, so the pi/2 parameter-shift rule applies.
enum class GateKind { H, RX, RY, RZ, RXX, RYY };

int gate_arity(GateKind kind);
bool gate_is_angled(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// Row-major 2x2 or 4x4 unitary.
struct GateMatrix {
    std::size_t dim = 0;
    std::array<cplx, 16> elems{};

    cplx at(std::size_t row, std::size_t col) const { return elems[row * dim + col]; }
    cplx& at(std::size_t row, std::size_t col) { return elems[row * dim + col]; }
};

/// Matrix of the gate. Angled kinds return cos(theta/2) I - i sin(theta/2) P;
/// H ignores the angle. Throws std::invalid_argument on a non-finite angle
/// for angled kinds.
GateMatrix gate_matrix(GateKind kind, double angle);

/// Applies the gate to the listed target qubits and returns the new state.
/// For two-qubit kinds, targets[0] addresses the low bit of the 4x4 block.
StateVector apply_gate(StateVector state, GateKind kind, double angle,
                       std::span<const int> targets);

/// In-place variant used by the circuit runner.
void apply_gate_in_place(StateVector& state, GateKind kind, double angle,
                         std::span<const int> targets);

} // namespace qgan
