#include "qgan/builders.hpp"

#include <stdexcept>
#include <string>

namespace qgan {

namespace {

GateSpec h(int q) { return GateSpec{GateKind::H, {q}, std::nullopt}; }

GateSpec rot(GateKind kind, int q, ParamBinding binding) {
    return GateSpec{kind, {q}, binding};
}

GateSpec ent(GateKind kind, ParamBinding binding) {
    return GateSpec{kind, {0, 1}, binding};
}

} // namespace

Circuit build_generator() {
    Circuit c;
    c.num_qubits = 2;
    c.num_features = 2;
    c.num_trainable = 11;
    c.readout_qubits = {0, 1};
    c.gates.push_back(rot(GateKind::RY, 0, ParamBinding::feature(0)));
    c.gates.push_back(rot(GateKind::RY, 1, ParamBinding::feature(1)));
    int p = 0;
    for (int block = 0; block < 3; ++block) {
        c.gates.push_back(rot(GateKind::RY, 0, ParamBinding::trainable(p++)));
        c.gates.push_back(rot(GateKind::RY, 1, ParamBinding::trainable(p++)));
        c.gates.push_back(ent(GateKind::RXX, ParamBinding::trainable(p++)));
    }
    c.gates.push_back(rot(GateKind::RY, 0, ParamBinding::trainable(p++)));
    c.gates.push_back(rot(GateKind::RY, 1, ParamBinding::trainable(p++)));
    validate(c);
    return c;
}

Circuit build_generator_truncated() {
    Circuit c = build_generator();
    c.gates.pop_back();
    c.gates.pop_back();
    c.num_trainable -= 2;
    validate(c);
    return c;
}

namespace {

Circuit build_encoder(GateKind second_entangler) {
    Circuit c;
    c.num_qubits = 2;
    c.num_features = 2;
    c.num_trainable = 4;
    c.readout_qubits = {0};
    c.gates.push_back(h(0));
    c.gates.push_back(h(1));
    c.gates.push_back(rot(GateKind::RX, 0, ParamBinding::feature(0)));
    c.gates.push_back(rot(GateKind::RX, 1, ParamBinding::feature(1)));
    c.gates.push_back(ent(GateKind::RYY, ParamBinding::trainable(0)));
    c.gates.push_back(rot(GateKind::RX, 0, ParamBinding::feature(0)));
    c.gates.push_back(rot(GateKind::RZ, 0, ParamBinding::feature(1)));
    c.gates.push_back(ent(second_entangler, ParamBinding::trainable(1)));
    c.gates.push_back(rot(GateKind::RZ, 0, ParamBinding::trainable(2)));
    c.gates.push_back(rot(GateKind::RZ, 1, ParamBinding::trainable(3)));
    validate(c);
    return c;
}

} // namespace

Circuit build_encoder_e1() { return build_encoder(GateKind::RXX); }

Circuit build_encoder_e2() { return build_encoder(GateKind::RYY); }

Circuit build_ansatz_a() {
    Circuit c;
    c.num_qubits = 2;
    c.num_features = 0;
    c.num_trainable = 6;
    c.readout_qubits = {0};
    c.gates.push_back(h(0));
    c.gates.push_back(h(1));
    c.gates.push_back(rot(GateKind::RX, 0, ParamBinding::trainable(0)));
    c.gates.push_back(rot(GateKind::RX, 1, ParamBinding::trainable(1)));
    c.gates.push_back(ent(GateKind::RXX, ParamBinding::trainable(2)));
    c.gates.push_back(ent(GateKind::RYY, ParamBinding::trainable(3)));
    c.gates.push_back(rot(GateKind::RZ, 0, ParamBinding::trainable(4)));
    c.gates.push_back(rot(GateKind::RZ, 1, ParamBinding::trainable(5)));
    validate(c);
    return c;
}

Circuit build_discriminator(int stages) {
    if (stages < 1 || stages > 5) {
        throw std::invalid_argument("build_discriminator: stages must be in [1, 5]");
    }
    const std::vector<Circuit> parts(static_cast<std::size_t>(stages), build_encoder_e1());
    return compose(parts);
}

Circuit build_network(int id) {
    switch (id) {
        case 1:
            return build_discriminator(5);
        case 2: {
            const std::vector<Circuit> parts(5, build_encoder_e2());
            return compose(parts);
        }
        case 3: {
            const std::vector<Circuit> parts{build_encoder_e1(), build_ansatz_a()};
            return compose(parts);
        }
        case 4: {
            const std::vector<Circuit> parts{build_encoder_e2(), build_ansatz_a()};
            return compose(parts);
        }
        case 5: {
            const std::vector<Circuit> parts{build_encoder_e1(), build_encoder_e1(),
                                             build_ansatz_a()};
            return compose(parts);
        }
        default:
            throw std::invalid_argument("build_network: id must be in [1, 5], got " +
                                        std::to_string(id));
    }
}

std::optional<Circuit> circuit_by_name(std::string_view name) {
    if (name == "generator") return build_generator();
    if (name == "generator-truncated") return build_generator_truncated();
    if (name == "e1") return build_encoder_e1();
    if (name == "e2") return build_encoder_e2();
    if (name == "ansatz-a") return build_ansatz_a();
    if (name.size() == 4 && name.starts_with("net")) {
        const char d = name[3];
        if (d >= '1' && d <= '5') return build_network(d - '0');
    }
    return std::nullopt;
}

} // namespace qgan
