#include "qgan/circuit_json.hpp"

#include <stdexcept>

namespace qgan {

using nlohmann::json;

namespace {

json binding_to_json(const ParamBinding& b) {
    switch (b.kind) {
        case ParamBinding::Kind::Constant:
            return json{{"type", "constant"}, {"angle", b.value}};
        case ParamBinding::Kind::DataFeature:
            return json{{"type", "feature"}, {"index", b.index}, {"scale", b.scale}};
        case ParamBinding::Kind::Trainable:
            return json{{"type", "trainable"}, {"index", b.index}};
    }
    throw std::invalid_argument("binding_to_json: unknown binding kind");
}

ParamBinding binding_from_json(const json& doc) {
    const std::string type = doc.at("type").get<std::string>();
    if (type == "constant") return ParamBinding::constant(doc.at("angle").get<double>());
    if (type == "feature") {
        return ParamBinding::feature(doc.at("index").get<int>(), doc.at("scale").get<double>());
    }
    if (type == "trainable") return ParamBinding::trainable(doc.at("index").get<int>());
    throw std::invalid_argument("circuit_from_json: unknown binding type '" + type + "'");
}

} // namespace

json circuit_to_json(const Circuit& circuit) {
    json gates = json::array();
    for (const GateSpec& gate : circuit.gates) {
        json g{{"kind", std::string(gate_name(gate.kind))}, {"targets", gate.targets}};
        if (gate.binding) g["binding"] = binding_to_json(*gate.binding);
        gates.push_back(std::move(g));
    }
    return json{{"num_qubits", circuit.num_qubits},
                {"num_trainable", circuit.num_trainable},
                {"num_features", circuit.num_features},
                {"readout_qubits", circuit.readout_qubits},
                {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const json& doc) {
    Circuit circuit;
    circuit.num_qubits = doc.at("num_qubits").get<int>();
    circuit.num_trainable = doc.at("num_trainable").get<int>();
    circuit.num_features = doc.at("num_features").get<int>();
    circuit.readout_qubits = doc.at("readout_qubits").get<std::vector<int>>();
    for (const json& g : doc.at("gates")) {
        GateSpec gate;
        const std::string kind = g.at("kind").get<std::string>();
        const auto parsed = gate_from_name(kind);
        if (!parsed) {
            throw std::invalid_argument("circuit_from_json: unknown gate kind '" + kind + "'");
        }
        gate.kind = *parsed;
        gate.targets = g.at("targets").get<std::vector<int>>();
        if (g.contains("binding")) gate.binding = binding_from_json(g.at("binding"));
        circuit.gates.push_back(std::move(gate));
    }
    validate(circuit);
    return circuit;
}

} // namespace qgan
