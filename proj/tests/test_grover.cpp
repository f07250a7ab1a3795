#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cmath>

#include "doctest.h"
#include "qpusim/grover.hpp"
#include "qpusim/parse.hpp"
#include "qpusim/unitary.hpp"

using namespace qpusim;

namespace {

constexpr double kTol = 1e-9;

// Probability that reading the data register yields the marked pattern. Data
// qubits precede the ladder ancillas, so the marked basis index is the
// pattern shifted past the ancilla bits, which a correct lowering leaves at 0.
double marked_probability(const Program& physical, const SearchInstance& instance) {
    const auto state = apply_program(physical);
    const std::uint32_t ancilla_bits = physical.capacity - instance.qubit_count;
    const std::size_t index = static_cast<std::size_t>(instance.marked) << ancilla_bits;
    return std::norm(state[index]);
}

}  // namespace

TEST_CASE("iteration count") {
    CHECK(grover_iterations(4) == 1);
    CHECK(grover_iterations(8) == 2);
    CHECK(grover_iterations(16) == 3);
    CHECK(grover_iterations(64) == 6);
    CHECK(grover_iterations(1024) == 25);
    CHECK_THROWS_AS(grover_iterations(0), std::invalid_argument);
    CHECK_THROWS_AS(grover_iterations(2), std::invalid_argument);
    CHECK_THROWS_AS(grover_iterations(3), std::invalid_argument);
    CHECK_THROWS_AS(grover_iterations(24), std::invalid_argument);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(validate_instance({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_instance({63, 0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_instance({4, 16}), std::invalid_argument);
    CHECK_NOTHROW(validate_instance({4, 15}));
    CHECK(database_size({5, 0}) == 32);
}

TEST_CASE("ladder workspace in the plan") {
    CHECK(plan_search({2, 0}).ancilla_count == 0);
    CHECK(plan_search({3, 0}).ancilla_count == 0);
    CHECK(plan_search({4, 0}).ancilla_count == 1);
    CHECK(plan_search({10, 0}).ancilla_count == 7);
}

TEST_CASE("two-qubit search program, marked 3") {
    const auto program = generate_grover({2, 3});
    CHECK(render_program(program) ==
          "logical 2\n"
          "INIT q0\n"
          "INIT q1\n"
          "H q0\n"
          "H q1\n"
          "H q1\n"
          "CNOT q0 q1\n"
          "H q1\n"
          "H q0\n"
          "H q1\n"
          "X q0\n"
          "X q1\n"
          "H q1\n"
          "CNOT q0 q1\n"
          "H q1\n"
          "X q0\n"
          "X q1\n"
          "H q0\n"
          "H q1\n"
          "READ q0\n"
          "READ q1\n");
}

TEST_CASE("instruction counts at small n") {
    // marked -> {logical, physical} instruction counts.
    const std::array<std::array<std::uint64_t, 2>, 4> n2 = {{{24, 24}, {22, 22}, {22, 22}, {20, 20}}};
    for (std::uint64_t marked = 0; marked < 4; ++marked) {
        const auto logical = generate_grover({2, marked});
        CHECK(logical.instructions.size() == n2[marked][0]);
        CHECK(lower_to_physical(logical).instructions.size() == n2[marked][1]);
    }
    CHECK(generate_grover({3, 7}).instructions.size() == 45);
    CHECK(lower_to_physical(generate_grover({3, 7})).instructions.size() == 101);
    CHECK(generate_grover({3, 0}).instructions.size() == 57);
    CHECK(lower_to_physical(generate_grover({3, 0})).instructions.size() == 113);
}

TEST_CASE("closed-form shapes match materialized programs") {
    for (std::uint32_t n = 2; n <= 9; ++n) {
        const std::uint64_t all_ones = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t marked : {std::uint64_t{0}, all_ones, all_ones / 3}) {
            const SearchInstance instance{n, marked};
            const auto logical = generate_grover(instance);
            const auto physical = lower_to_physical(logical);
            const auto logical_shape = grover_logical_shape(instance);
            const auto physical_shape = grover_physical_shape(instance);
            CHECK(tally_program(logical) == logical_shape.tally);
            CHECK(tally_program(physical) == physical_shape.tally);
            CHECK(logical.capacity == logical_shape.capacity);
            CHECK(physical.capacity == physical_shape.capacity);
            CHECK(validate_program(physical).ok());
        }
    }
}

TEST_CASE("fifteen-gate sequence realizes TOFFOLI") {
    const auto seq = toffoli_sequence(0, 1, 2);
    REQUIRE(seq.size() == 15);
    GateTally tally;
    for (const auto& instr : seq) tally.add(instr.opcode);
    CHECK(tally.count(Opcode::H) == 2);
    CHECK(tally.count(Opcode::T) == 4);
    CHECK(tally.count(Opcode::TDG) == 3);
    CHECK(tally.count(Opcode::CNOT) == 6);

    Program program;
    program.level = ProgramLevel::physical;
    program.capacity = 3;
    program.instructions = seq;
    const auto direct = instruction_unitary(3, make_instruction(Opcode::TOFFOLI, {0, 1, 2}));
    CHECK(max_abs_diff_up_to_phase(circuit_unitary(program), direct) < kTol);
}

TEST_CASE("ladder sizes") {
    const std::array<std::uint32_t, 3> controls3 = {0, 1, 2};
    const std::array<std::uint32_t, 5> controls5 = {0, 1, 2, 3, 4};
    const std::array<std::uint32_t, 1> one_anc = {4};
    const std::array<std::uint32_t, 3> three_anc = {6, 7, 8};
    const std::array<std::uint32_t, 1> c1 = {0};
    const std::array<std::uint32_t, 2> c2 = {0, 1};
    CHECK(decompose_mcx(c1, 1, {}).size() == 1);
    CHECK(decompose_mcx(c2, 2, {}).size() == 1);
    CHECK(decompose_mcx(controls3, 3, one_anc).size() == 3);
    CHECK(decompose_mcx(controls5, 5, three_anc).size() == 7);
    CHECK_THROWS_AS(decompose_mcx(controls3, 3, {}), std::invalid_argument);
}

namespace {

// The ladder acts on controls+target+ancillas; restrict to the subspace
// where every ancilla is 0 (here: one ancilla, the least significant bit).
UnitaryMatrix ancilla_zero_block(const UnitaryMatrix& u) {
    UnitaryMatrix block(u.qubit_count() - 1);
    for (std::size_t r = 0; r < block.dim(); ++r) {
        for (std::size_t c = 0; c < block.dim(); ++c) {
            block.at(r, c) = u.at(r << 1, c << 1);
        }
    }
    return block;
}

Program ladder_program(std::span<const Instruction> steps, std::uint32_t capacity) {
    Program program;
    program.level = ProgramLevel::logical;
    program.capacity = capacity;
    program.instructions.assign(steps.begin(), steps.end());
    return program;
}

}  // namespace

TEST_CASE("three-control ladder equals the direct gate on the clean-ancilla block") {
    const std::array<std::uint32_t, 3> controls = {0, 1, 2};
    const std::array<std::uint32_t, 1> ancillas = {4};
    const auto steps = decompose_mcx(controls, 3, ancillas);
    const auto u = circuit_unitary(ladder_program(steps, 5));
    const auto direct = instruction_unitary(4, make_instruction(Opcode::MCX, {0, 1, 2, 3}));
    CHECK(max_abs_diff_up_to_phase(ancilla_zero_block(u), direct) < kTol);
    // No leakage between ancilla subspaces, and the ancilla is restored even
    // when it starts dirty: every basis state maps to one basis state with
    // the same ancilla bit.
    for (std::size_t col = 0; col < u.dim(); ++col) {
        std::size_t image = u.dim();
        for (std::size_t row = 0; row < u.dim(); ++row) {
            if (std::abs(u.at(row, col)) > 0.5) image = row;
        }
        REQUIRE(image < u.dim());
        CHECK((image & 1) == (col & 1));
    }
}

TEST_CASE("lowering maps the phase form through the ladder") {
    Program logical;
    logical.level = ProgramLevel::logical;
    logical.capacity = 4;
    logical.instructions = {make_instruction(Opcode::MCZ, {0, 1, 2, 3})};
    const auto physical = lower_to_physical(logical);
    CHECK(physical.capacity == 5);
    CHECK(validate_program(physical).ok());
    const auto direct = instruction_unitary(4, make_instruction(Opcode::MCZ, {0, 1, 2, 3}));
    CHECK(max_abs_diff_up_to_phase(ancilla_zero_block(circuit_unitary(physical)), direct) < kTol);
}

TEST_CASE("lowering passes physical gates through") {
    const auto logical = generate_grover({2, 3});
    const auto physical = lower_to_physical(logical);
    CHECK(physical.level == ProgramLevel::physical);
    CHECK(physical.capacity == 2);
    CHECK(physical.instructions == logical.instructions);
    CHECK_THROWS_AS(lower_to_physical(physical), std::invalid_argument);
}

TEST_CASE("search succeeds at desk scale") {
    for (std::uint64_t marked = 0; marked < 4; ++marked) {
        const SearchInstance instance{2, marked};
        const auto physical = lower_to_physical(generate_grover(instance));
        CHECK(marked_probability(physical, instance) == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (std::uint64_t marked = 0; marked < 8; ++marked) {
        const SearchInstance instance{3, marked};
        const auto physical = lower_to_physical(generate_grover(instance));
        CHECK(marked_probability(physical, instance) ==
              doctest::Approx(0.9453125).epsilon(1e-9));
    }
    // n = 4 exercises the ladder inside the full construction.
    const SearchInstance instance{4, 11};
    const auto physical = lower_to_physical(generate_grover(instance));
    CHECK(physical.capacity == 5);
    CHECK(marked_probability(physical, instance) > 0.94);
}
