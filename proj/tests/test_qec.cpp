#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <sstream>

#include "doctest.h"
#include "qpusim/qec.hpp"
#include "support/random_programs.hpp"

using namespace qpusim;

namespace {

Program single_gate(Opcode op, std::uint32_t capacity) {
    Program program;
    program.level = ProgramLevel::physical;
    program.capacity = capacity;
    if (*opcode_arity(op) == 1) {
        program.instructions = {make_instruction(op, {0})};
    } else {
        program.instructions = {make_instruction(op, {0, 1})};
    }
    return program;
}

QecConfig config_with_levels(std::uint32_t levels) {
    QecConfig config;
    config.levels = levels;
    return config;
}

}  // namespace

TEST_CASE("syndrome round budget") {
    const auto round = ec_round_cost(config_with_levels(1));
    CHECK(round.count(Opcode::INIT) == 30);
    CHECK(round.count(Opcode::H) == 6);
    CHECK(round.count(Opcode::CNOT) == 54);
    CHECK(round.count(Opcode::READ) == 30);
    CHECK(round.total() == 120);
}

TEST_CASE("one level around a single gate") {
    const auto h1 = lower_qec(single_gate(Opcode::H, 1), config_with_levels(1));
    CHECK(h1.tally.count(Opcode::H) == 13);  // 7 transversal + 6 seeds
    CHECK(h1.tally.count(Opcode::INIT) == 30);
    CHECK(h1.tally.count(Opcode::CNOT) == 54);
    CHECK(h1.tally.count(Opcode::READ) == 30);
    CHECK(h1.tally.class_count(GateClass::UNITARY) == 67);
    CHECK(h1.tally.total() == 127);

    // A two-qubit gate touches two blocks, so it pays two syndrome rounds.
    const auto cx1 = lower_qec(single_gate(Opcode::CNOT, 2), config_with_levels(1));
    CHECK(cx1.tally.count(Opcode::INIT) == 60);
    CHECK(cx1.tally.count(Opcode::READ) == 60);
    CHECK(cx1.tally.class_count(GateClass::UNITARY) == 127);
    CHECK(cx1.tally.total() == 247);
}

TEST_CASE("magic-state surcharge on T gates") {
    QecConfig config = config_with_levels(1);
    config.t_cost_multiplier = 2;
    const auto result = lower_qec(single_gate(Opcode::T, 1), config);
    CHECK(result.tally.count(Opcode::T) == 14);
    CHECK(result.tally.count(Opcode::INIT) == 30);  // still one round
    REQUIRE(result.program.has_value());
    CHECK(tally_program(*result.program) == result.tally);
}

TEST_CASE("qubit footprint") {
    CHECK(physical_qubits(5, config_with_levels(0)).data == 5);
    CHECK(physical_qubits(5, config_with_levels(0)).peak_ancilla == 0);
    CHECK(physical_qubits(1, config_with_levels(1)).data == 7);
    CHECK(physical_qubits(1, config_with_levels(1)).peak_ancilla == 5);
    CHECK(physical_qubits(3, config_with_levels(2)).data == 147);
    CHECK(physical_qubits(3, config_with_levels(2)).peak_ancilla == 40);
    QecConfig no_ec = config_with_levels(2);
    no_ec.policy = EcPolicy::none;
    CHECK(physical_qubits(3, no_ec).peak_ancilla == 0);
}

TEST_CASE("materialized stream matches counts exactly") {
    std::mt19937 rng(7);
    for (std::uint32_t levels : {1u, 2u}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto program = qpusim::testing::random_physical_program(rng, 10, 3);
            const auto result = lower_qec(program, config_with_levels(levels));
            REQUIRE(result.program.has_value());
            CHECK(tally_program(*result.program) == result.tally);
            CHECK(result.tally == lower_qec_tally(tally_program(program), config_with_levels(levels)));
            CHECK(validate_program(*result.program).ok());
            CHECK(result.program->capacity ==
                  physical_qubits(program.capacity, config_with_levels(levels)).total());
        }
    }
}

TEST_CASE("materialization stops at the qubit budget") {
    Program wide;
    wide.level = ProgramLevel::physical;
    wide.capacity = 30;  // 30 * 7 = 210 data qubits, over the limit
    wide.instructions = {make_instruction(Opcode::H, {0})};
    const auto over = lower_qec(wide, config_with_levels(1));
    CHECK(!over.program.has_value());
    CHECK(over.tally.total() == 127);

    wide.capacity = 28;  // 196 data qubits, inside the limit
    const auto under = lower_qec(wide, config_with_levels(1));
    CHECK(under.program.has_value());
}

TEST_CASE("level zero is the identity") {
    const auto program = single_gate(Opcode::CNOT, 2);
    const auto result = lower_qec(program, config_with_levels(0));
    REQUIRE(result.program.has_value());
    CHECK(*result.program == program);
    CHECK(result.tally == tally_program(program));
}

TEST_CASE("tallies grow strictly with the level") {
    const auto program = single_gate(Opcode::H, 1);
    std::uint64_t previous = 0;
    for (std::uint32_t level = 0; level <= 3; ++level) {
        const auto total = lower_qec_tally(tally_program(program), config_with_levels(level)).total();
        CHECK(total > previous);
        previous = total;
    }
}

TEST_CASE("tally lowering is additive") {
    GateTally a;
    a.add(Opcode::H, 3);
    a.add(Opcode::CNOT, 2);
    GateTally b;
    b.add(Opcode::T, 5);
    b.add(Opcode::READ, 1);
    GateTally sum = a;
    sum.add_scaled(b);
    const auto config = config_with_levels(2);
    GateTally expect = lower_qec_tally(a, config);
    expect.add_scaled(lower_qec_tally(b, config));
    CHECK(lower_qec_tally(sum, config) == expect);
}

TEST_CASE("encode-only policy") {
    QecConfig config = config_with_levels(1);
    config.policy = EcPolicy::none;
    const auto result = lower_qec(single_gate(Opcode::H, 1), config);
    CHECK(result.tally.total() == 7);
    CHECK(result.tally.count(Opcode::H) == 7);
    config.levels = 2;
    CHECK(lower_qec(single_gate(Opcode::H, 1), config).tally.count(Opcode::H) == 49);
}

TEST_CASE("logical opcodes cannot be encoded") {
    GateTally tally;
    tally.add(Opcode::TOFFOLI);
    CHECK_THROWS_AS(lower_qec_tally(tally, config_with_levels(1)), std::invalid_argument);
    Program logical;
    logical.level = ProgramLevel::logical;
    logical.capacity = 3;
    logical.instructions = {make_instruction(Opcode::TOFFOLI, {0, 1, 2})};
    CHECK_THROWS_AS(lower_qec(logical, config_with_levels(1)), std::invalid_argument);
}

TEST_CASE("config file parsing") {
    std::istringstream full(R"({
        "levels": 2,
        "ec_policy": "per_gate",
        "stabilizer_cost": {"init": 5, "single_qubit": 1, "cnot": 9, "read": 5},
        "t_cost_multiplier": 1
    })");
    const auto config = load_qec_config(full);
    CHECK(config.levels == 2);
    CHECK(config.policy == EcPolicy::per_gate);
    CHECK(config.stabilizer_cost == StabilizerCost{});
    CHECK(config.t_cost_multiplier == 1);

    std::istringstream minimal(R"({"levels": 0})");
    CHECK(load_qec_config(minimal).levels == 0);

    const auto rejects = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS(load_qec_config(in));
    };
    rejects(R"({})");
    rejects(R"({"levels": 1, "ec_policy": "sometimes"})");
    rejects(R"({"levels": 1, "t_cost_multiplier": 0})");
    rejects(R"({"levels": 99})");
    rejects(R"({"levels": 1, "stabilizer_cost": {"cat": 4}})");
    rejects(R"({"levels": 1, "extra": true})");
    rejects(R"(not json)");
}

TEST_CASE("custom stabilizer budgets still materialize consistently") {
    QecConfig config = config_with_levels(1);
    config.stabilizer_cost = {3, 2, 5, 3};
    const auto result = lower_qec(single_gate(Opcode::CNOT, 2), config);
    REQUIRE(result.program.has_value());
    CHECK(tally_program(*result.program) == result.tally);
    CHECK(validate_program(*result.program).ok());
    CHECK(result.tally.count(Opcode::INIT) == 2 * 6 * 3);
    CHECK(result.tally.count(Opcode::READ) == 2 * 6 * 3);
}
