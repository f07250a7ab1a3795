#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qpusim/parse.hpp"
#include "qpusim/unitary.hpp"

using namespace qpusim;

namespace {

constexpr double kTol = 1e-12;

UnitaryMatrix unitary_of(const std::string& text) {
    return circuit_unitary(parse_program(text));
}

double diff(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return max_abs_diff_up_to_phase(a, b);
}

}  // namespace

TEST_CASE("single-qubit gate identities") {
    const UnitaryMatrix identity(1);
    CHECK(diff(unitary_of("physical 1\nH q0\nH q0\n"), identity) < kTol);
    CHECK(diff(unitary_of("physical 1\nX q0\nX q0\n"), identity) < kTol);
    CHECK(diff(unitary_of("physical 1\nS q0\nS q0\n"), unitary_of("physical 1\nZ q0\n")) < kTol);
    CHECK(diff(unitary_of("physical 1\nT q0\nT q0\n"), unitary_of("physical 1\nS q0\n")) < kTol);
    CHECK(diff(unitary_of("physical 1\nS q0\nSDG q0\n"), identity) < kTol);
    CHECK(diff(unitary_of("physical 1\nT q0\nTDG q0\n"), identity) < kTol);
    // Y = i XZ, equal up to the global phase the comparison removes.
    CHECK(diff(unitary_of("physical 1\nY q0\n"), unitary_of("physical 1\nZ q0\nX q0\n")) < kTol);
    CHECK(diff(unitary_of("physical 1\nH q0\nX q0\nH q0\n"), unitary_of("physical 1\nZ q0\n")) <
          kTol);
}

TEST_CASE("basis convention: qubit 0 is the most significant bit") {
    // X on qubit 1 of two flips the low-order bit of the index.
    const auto u = unitary_of("physical 2\nX q1\n");
    CHECK(std::abs(u.at(1, 0) - Amplitude{1.0}) < kTol);
    CHECK(std::abs(u.at(0, 1) - Amplitude{1.0}) < kTol);
    const auto v = unitary_of("physical 2\nX q0\n");
    CHECK(std::abs(v.at(2, 0) - Amplitude{1.0}) < kTol);
}

TEST_CASE("two-qubit gates") {
    const auto cnot = unitary_of("physical 2\nCNOT q0 q1\n");
    // |10> -> |11>, |11> -> |10>, |0x> fixed.
    CHECK(std::abs(cnot.at(3, 2) - Amplitude{1.0}) < kTol);
    CHECK(std::abs(cnot.at(2, 3) - Amplitude{1.0}) < kTol);
    CHECK(std::abs(cnot.at(0, 0) - Amplitude{1.0}) < kTol);
    CHECK(std::abs(cnot.at(1, 1) - Amplitude{1.0}) < kTol);
    // CZ is symmetric in its operands.
    CHECK(diff(unitary_of("physical 2\nCZ q0 q1\n"), unitary_of("physical 2\nCZ q1 q0\n")) < kTol);
    const auto cz = unitary_of("physical 2\nCZ q0 q1\n");
    CHECK(std::abs(cz.at(3, 3) - Amplitude{-1.0}) < kTol);
}

TEST_CASE("multi-controlled semantics") {
    const auto toffoli = unitary_of("logical 3\nTOFFOLI q0 q1 q2\n");
    CHECK(std::abs(toffoli.at(7, 6) - Amplitude{1.0}) < kTol);
    CHECK(std::abs(toffoli.at(6, 7) - Amplitude{1.0}) < kTol);
    for (std::size_t d = 0; d < 6; ++d) CHECK(std::abs(toffoli.at(d, d) - Amplitude{1.0}) < kTol);
    const auto mcz = unitary_of("logical 4\nMCZ q0 q1 q2 q3\n");
    CHECK(std::abs(mcz.at(15, 15) - Amplitude{-1.0}) < kTol);
    for (std::size_t d = 0; d < 15; ++d) CHECK(std::abs(mcz.at(d, d) - Amplitude{1.0}) < kTol);
    // MCZ is symmetric under operand reordering.
    CHECK(diff(unitary_of("logical 4\nMCZ q0 q1 q2 q3\n"),
               unitary_of("logical 4\nMCZ q3 q1 q0 q2\n")) < kTol);
}

TEST_CASE("INIT prefix and READ suffix rules") {
    CHECK_NOTHROW(unitary_of("physical 2\nINIT q0\nINIT q1\nH q0\nREAD q0\nREAD q1\n"));
    CHECK_THROWS_AS(unitary_of("physical 2\nH q0\nINIT q0\n"), std::invalid_argument);
    CHECK_THROWS_AS(unitary_of("physical 2\nREAD q0\nH q0\n"), std::invalid_argument);
    std::vector<Amplitude> state(2, Amplitude{0.0});
    CHECK_THROWS_AS(apply_instruction(state, 1, make_instruction(Opcode::INIT, {0})),
                    std::invalid_argument);
}

TEST_CASE("register size limit") {
    Program big;
    big.level = ProgramLevel::physical;
    big.capacity = kMaxUnitaryQubits + 1;
    big.instructions = {make_instruction(Opcode::H, {0})};
    CHECK_THROWS_AS(circuit_unitary(big), std::invalid_argument);
    CHECK_THROWS_AS(circuit_unitary(Program{}), std::invalid_argument);  // zero qubits
}

TEST_CASE("global phase is ignored by the comparison") {
    const auto z = unitary_of("physical 1\nZ q0\n");
    // XZX = -Z: same operator up to global phase, so the distance vanishes.
    const auto xzx = unitary_of("physical 1\nX q0\nZ q0\nX q0\n");
    CHECK(diff(z, xzx) < kTol);
    // X vs Z differ genuinely.
    CHECK(diff(z, unitary_of("physical 1\nX q0\n")) > 0.5);
}

TEST_CASE("apply_program starts from the ground state") {
    const auto state = apply_program(parse_program("physical 2\nINIT q0\nINIT q1\nX q1\n"));
    REQUIRE(state.size() == 4);
    CHECK(std::abs(state[1] - Amplitude{1.0}) < kTol);
}
