#pragma once

#include <optional>
#include <string_view>

#include "qgan/circuit.hpp"

namespace qgan {

/// Generator QNN: RY angle encoding of the two noise components, then an
/// alternating ansatz [RY, RY, RXX] x3 + [RY, RY]. 13 gates, 11 trainable,
/// readout on both qubits.
Circuit build_generator();

/// Generator variant with the final RY pair dropped (11 gates, 9 trainable).
/// Kept as a deliberately weakened architecture for mode-collapse studies.
Circuit build_generator_truncated();

/// Trainable encoding block E1: H pair, RX data pair, trainable RYY,
/// RX/RZ data re-upload on qubit 0, trainable RXX, trainable RZ pair.
/// 10 gates, 4 trainable, 2 features.
Circuit build_encoder_e1();

/// E2: identical to E1 with the trainable RXX swapped for an RYY.
Circuit build_encoder_e2();

/// Pure ansatz block A: H pair, trainable RX pair, trainable RXX, trainable
/// RYY, trainable RZ pair. 8 gates, 6 trainable, no features.
Circuit build_ansatz_a();

/// N-stage stack of E1 blocks (1 <= stages <= 5), readout on qubit 0.
Circuit build_discriminator(int stages);

/// The five candidate discriminator networks:
///   net1 = E1 x5, net2 = E2 x5, net3 = [E1, A], net4 = [E2, A],
///   net5 = [E1, E1, A].
Circuit build_network(int id);

/// Lookup by CLI name: "generator", "e1", "e2", "ansatz-a", "net1".."net5".
std::optional<Circuit> circuit_by_name(std::string_view name);

} // namespace qgan
