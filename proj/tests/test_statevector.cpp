#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qgan/data.hpp"
#include "qgan/encoding.hpp"
#include "qgan/gates.hpp"
#include "qgan/statevector.hpp"

using namespace qgan;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense complex matrix helpers for the series-exponential oracle. Kept
// independent of the closed forms in gate_matrix.
using Mat = std::vector<std::vector<cplx>>;

Mat identity(std::size_t n) {
    Mat m(n, std::vector<cplx>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

Mat multiply(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat out(n, std::vector<cplx>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    Mat out(na * nb, std::vector<cplx>(na * nb, 0.0));
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
    return out;
}

// exp(A) by Taylor series; converges quickly for the bounded generators here.
Mat series_exp(const Mat& a) {
    Mat result = identity(a.size());
    Mat term = identity(a.size());
    for (int k = 1; k <= 40; ++k) {
        term = multiply(term, a);
        for (auto& row : term)
            for (cplx& x : row) x /= static_cast<double>(k);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) result[i][j] += term[i][j];
    }
    return result;
}

const Mat kSigmaX = {{0.0, 1.0}, {1.0, 0.0}};
const Mat kSigmaY = {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
const Mat kSigmaZ = {{1.0, 0.0}, {0.0, -1.0}};

Mat generator_of(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return kSigmaX;
        case GateKind::RY: return kSigmaY;
        case GateKind::RZ: return kSigmaZ;
        // Little-endian: targets[0] is the low bit of the 4x4 block, so the
        // high-qubit factor comes first in the Kronecker product.
        case GateKind::RXX: return kron(kSigmaX, kSigmaX);
        case GateKind::RYY: return kron(kSigmaY, kSigmaY);
        default: throw std::logic_error("no generator for H");
    }
}

Mat oracle_rotation(GateKind kind, double angle) {
    Mat a = generator_of(kind);
    for (auto& row : a)
        for (cplx& x : row) x *= cplx(0.0, -angle / 2.0);
    return series_exp(a);
}

double max_abs_diff(const GateMatrix& got, const Mat& want) {
    double worst = 0.0;
    for (std::size_t r = 0; r < got.dim; ++r)
        for (std::size_t c = 0; c < got.dim; ++c)
            worst = std::max(worst, std::abs(got.at(r, c) - want[r][c]));
    return worst;
}

const std::vector<GateKind> kAngledKinds = {GateKind::RX, GateKind::RY, GateKind::RZ,
                                            GateKind::RXX, GateKind::RYY};

StateVector random_state(int num_qubits, Rng& rng) {
    StateVector state = zero_state(num_qubits);
    double norm_sq = 0.0;
    for (cplx& a : state.amplitudes) {
        a = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        norm_sq += std::norm(a);
    }
    for (cplx& a : state.amplitudes) a /= std::sqrt(norm_sq);
    return state;
}

} // namespace

TEST_SUITE_BEGIN("statevector");

TEST_CASE("zero_state places all amplitude at index 0") {
    const StateVector one = zero_state(1);
    REQUIRE(one.amplitudes.size() == 2);
    CHECK(one.amplitudes[0] == cplx(1.0, 0.0));
    CHECK(one.amplitudes[1] == cplx(0.0, 0.0));

    const StateVector two = zero_state(2);
    REQUIRE(two.amplitudes.size() == 4);
    CHECK(two.amplitudes[0] == cplx(1.0, 0.0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(two.amplitudes[i] == cplx(0.0, 0.0));

    CHECK_THROWS_AS(zero_state(5), std::invalid_argument);
    CHECK_THROWS_AS(zero_state(0), std::invalid_argument);
}

TEST_CASE("gate_matrix matches the series-exponential oracle") {
    Rng rng(11);
    for (GateKind kind : kAngledKinds) {
        for (int rep = 0; rep < 20; ++rep) {
            const double angle = rng.uniform(-2.0 * kPi, 2.0 * kPi);
            CHECK(max_abs_diff(gate_matrix(kind, angle), oracle_rotation(kind, angle)) <
                  1e-12);
        }
    }
}

TEST_CASE("gate_matrix basics") {
    const GateMatrix ry0 = gate_matrix(GateKind::RY, 0.0);
    CHECK(ry0.at(0, 0) == cplx(1.0, 0.0));
    CHECK(ry0.at(0, 1) == cplx(0.0, 0.0));
    CHECK(ry0.at(1, 0) == cplx(0.0, 0.0));
    CHECK(ry0.at(1, 1) == cplx(1.0, 0.0));

    const double s = 1.0 / std::sqrt(2.0);
    const GateMatrix h = gate_matrix(GateKind::H, 123.0);  // angle ignored
    CHECK(std::abs(h.at(0, 0) - s) < 1e-15);
    CHECK(std::abs(h.at(0, 1) - s) < 1e-15);
    CHECK(std::abs(h.at(1, 0) - s) < 1e-15);
    CHECK(std::abs(h.at(1, 1) + s) < 1e-15);

    CHECK_THROWS_AS(gate_matrix(GateKind::RX, std::nan("")), std::invalid_argument);
}

TEST_CASE("RXX on |00> gives cos|00> - i sin|11>") {
    const StateVector state =
        apply_gate(zero_state(2), GateKind::RXX, kPi / 2, std::vector<int>{0, 1});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(state.amplitudes[0] - cplx(s, 0.0)) < 1e-12);
    CHECK(std::abs(state.amplitudes[3] - cplx(0.0, -s)) < 1e-12);
    CHECK(std::abs(state.amplitudes[1]) < 1e-15);
    CHECK(std::abs(state.amplitudes[2]) < 1e-15);
}

TEST_CASE("RYY on |00> gives cos|00> + i sin|11>") {
    const StateVector state =
        apply_gate(zero_state(2), GateKind::RYY, kPi / 2, std::vector<int>{0, 1});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(state.amplitudes[0] - cplx(s, 0.0)) < 1e-12);
    CHECK(std::abs(state.amplitudes[3] - cplx(0.0, s)) < 1e-12);
}

TEST_CASE("apply_gate examples and errors") {
    const StateVector flipped =
        apply_gate(zero_state(1), GateKind::RY, kPi, std::vector<int>{0});
    CHECK(std::abs(flipped.amplitudes[0]) < 1e-15);
    CHECK(std::abs(flipped.amplitudes[1] - cplx(1.0, 0.0)) < 1e-15);

    const StateVector plus = apply_gate(zero_state(2), GateKind::H, 0.0, std::vector<int>{0});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(plus.amplitudes[0] - s) < 1e-15);
    CHECK(std::abs(plus.amplitudes[1] - s) < 1e-15);
    CHECK(std::abs(plus.amplitudes[2]) < 1e-15);
    CHECK(std::abs(plus.amplitudes[3]) < 1e-15);

    CHECK_THROWS_AS(apply_gate(zero_state(2), GateKind::RXX, 0.3, std::vector<int>{0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(zero_state(2), GateKind::RX, 0.3, std::vector<int>{2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(zero_state(2), GateKind::RX, 0.3, std::vector<int>{0, 1}),
                    std::invalid_argument);
}

TEST_CASE("two-qubit embedding works on nonadjacent and swapped targets") {
    // RXX is symmetric in its targets; also check in a 3-qubit register.
    Rng rng(5);
    const StateVector state = random_state(3, rng);
    const StateVector a = apply_gate(state, GateKind::RYY, 0.7, std::vector<int>{0, 2});
    const StateVector b = apply_gate(state, GateKind::RYY, 0.7, std::vector<int>{2, 0});
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        CHECK(std::abs(a.amplitudes[i] - b.amplitudes[i]) < 1e-14);
    }
    CHECK(std::abs(norm_squared(a) - 1.0) < 1e-12);
}

TEST_CASE("expectation_pauli_z basics") {
    CHECK(expectation_pauli_z(zero_state(1), 0) == 1.0);

    const StateVector one = apply_gate(zero_state(1), GateKind::RY, kPi, std::vector<int>{0});
    CHECK(expectation_pauli_z(one, 0) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(expectation_pauli_z(zero_state(1), 1), std::invalid_argument);
}

TEST_CASE("RY analytic oracle: <Z> after RY(theta) equals cos(theta)") {
    Rng rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        const double theta = rng.uniform(-2.0 * kPi, 2.0 * kPi);
        const StateVector state =
            apply_gate(zero_state(1), GateKind::RY, theta, std::vector<int>{0});
        CHECK(std::abs(expectation_pauli_z(state, 0) - std::cos(theta)) < 1e-10);
    }
    for (double theta : {kPi / 3, kPi / 4}) {
        const StateVector state =
            apply_gate(zero_state(1), GateKind::RY, theta, std::vector<int>{0});
        CHECK(std::abs(expectation_pauli_z(state, 0) - std::cos(theta)) < 1e-12);
    }
}

TEST_CASE("unitarity: M M^dagger = I for random angles") {
    Rng rng(23);
    auto check_unitary = [](const GateMatrix& m) {
        for (std::size_t r = 0; r < m.dim; ++r) {
            for (std::size_t c = 0; c < m.dim; ++c) {
                cplx acc{0.0, 0.0};
                for (std::size_t k = 0; k < m.dim; ++k) {
                    acc += m.at(r, k) * std::conj(m.at(c, k));
                }
                const cplx want = r == c ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
                CHECK(std::abs(acc - want) < 1e-12);
            }
        }
    };
    check_unitary(gate_matrix(GateKind::H, 0.0));
    for (GateKind kind : kAngledKinds) {
        for (int rep = 0; rep < 100; ++rep) {
            check_unitary(gate_matrix(kind, rng.uniform(-2.0 * kPi, 2.0 * kPi)));
        }
    }
}

TEST_CASE("norm is preserved across long random gate sequences") {
    Rng rng(31);
    const std::vector<GateKind> all = {GateKind::H,  GateKind::RX,  GateKind::RY,
                                       GateKind::RZ, GateKind::RXX, GateKind::RYY};
    for (int num_qubits = 1; num_qubits <= 4; ++num_qubits) {
        StateVector state = random_state(num_qubits, rng);
        for (int g = 0; g < 100; ++g) {
            GateKind kind = all[rng.next_u64() % all.size()];
            if (num_qubits == 1 && gate_arity(kind) == 2) kind = GateKind::RY;
            std::vector<int> targets{static_cast<int>(rng.next_u64() % num_qubits)};
            if (gate_arity(kind) == 2) {
                int second = static_cast<int>(rng.next_u64() % num_qubits);
                while (second == targets[0]) second = static_cast<int>(rng.next_u64() % num_qubits);
                targets.push_back(second);
            }
            apply_gate_in_place(state, kind, rng.uniform(-2.0 * kPi, 2.0 * kPi), targets);
            CHECK(std::abs(norm_squared(state) - 1.0) < 1e-12);
        }
        // Expectations stay inside [-1, 1] up to roundoff.
        for (int q = 0; q < num_qubits; ++q) {
            CHECK(std::abs(expectation_pauli_z(state, q)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("half-angle convention: shifting theta by 2 pi negates the matrix") {
    Rng rng(37);
    for (GateKind kind : kAngledKinds) {
        const double theta = rng.uniform(-kPi, kPi);
        const GateMatrix base = gate_matrix(kind, theta);
        const GateMatrix shifted = gate_matrix(kind, theta + 2.0 * kPi);
        for (std::size_t r = 0; r < base.dim; ++r) {
            for (std::size_t c = 0; c < base.dim; ++c) {
                CHECK(std::abs(shifted.at(r, c) + base.at(r, c)) < 1e-12);
            }
        }
    }
}

TEST_CASE("basis_encode") {
    const StateVector s10 = basis_encode(std::vector<int>{1, 0});
    CHECK(s10.amplitudes[1] == cplx(1.0, 0.0));
    CHECK(s10.amplitudes[0] == cplx(0.0, 0.0));

    const StateVector s00 = basis_encode(std::vector<int>{0, 0});
    CHECK(s00.amplitudes[0] == cplx(1.0, 0.0));

    const StateVector s11 = basis_encode(std::vector<int>{1, 1});
    CHECK(s11.amplitudes[3] == cplx(1.0, 0.0));

    CHECK_THROWS_AS(basis_encode(std::vector<int>{0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(basis_encode(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("amplitude_encode") {
    const StateVector a = amplitude_encode(std::vector<double>{3.0, 4.0});
    CHECK(std::abs(a.amplitudes[0] - cplx(0.6, 0.0)) < 1e-15);
    CHECK(std::abs(a.amplitudes[1] - cplx(0.8, 0.0)) < 1e-15);

    const StateVector b = amplitude_encode(std::vector<double>{1.0, 1.0, 1.0, 1.0});
    for (const cplx& amp : b.amplitudes) CHECK(std::abs(amp - cplx(0.5, 0.0)) < 1e-15);

    const StateVector padded = amplitude_encode(std::vector<double>{1.0, 0.0, 0.0});
    REQUIRE(padded.amplitudes.size() == 4);
    CHECK(std::abs(padded.amplitudes[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(padded.amplitudes[3]) == 0.0);
    CHECK(std::abs(norm_squared(padded) - 1.0) < 1e-12);

    CHECK_THROWS_AS(amplitude_encode(std::vector<double>{0.0, 0.0}), std::domain_error);
}

TEST_CASE("dense_angle_encode") {
    const StateVector zero = dense_angle_encode(std::vector<double>{0.0, 0.37});
    CHECK(std::abs(zero.amplitudes[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(zero.amplitudes[1]) < 1e-15);

    const StateVector one = dense_angle_encode(std::vector<double>{0.5, 0.0});
    CHECK(std::abs(one.amplitudes[0]) < 1e-15);
    CHECK(std::abs(one.amplitudes[1] - cplx(1.0, 0.0)) < 1e-15);

    const StateVector quarter = dense_angle_encode(std::vector<double>{0.25, 0.25});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(quarter.amplitudes[0] - cplx(s, 0.0)) < 1e-12);
    CHECK(std::abs(quarter.amplitudes[1] - cplx(0.0, s)) < 1e-12);

    CHECK_THROWS_AS(dense_angle_encode(std::vector<double>{0.1}), std::invalid_argument);
    // Two qubits, norm still 1.
    const StateVector two =
        dense_angle_encode(std::vector<double>{0.13, 0.77, 0.42, 0.09});
    CHECK(std::abs(norm_squared(two) - 1.0) < 1e-12);
}

TEST_SUITE_END();
