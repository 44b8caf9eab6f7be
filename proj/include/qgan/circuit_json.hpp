#pragma once

#include <json.hpp>

#include "qgan/circuit.hpp"

namespace qgan {

/// Serializes a circuit to the documented JSON schema (see README):
/// { num_qubits, num_trainable, num_features, readout_qubits, gates: [...] }.
nlohmann::json circuit_to_json(const Circuit& circuit);

/// Inverse of circuit_to_json; validates the result.
Circuit circuit_from_json(const nlohmann::json& doc);

} // namespace qgan
