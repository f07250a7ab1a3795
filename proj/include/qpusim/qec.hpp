#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qpusim/gate_model.hpp"
#include "qpusim/isa.hpp"

// Concatenated [[7,1,3]] code overhead. Lowering by one level maps every
// qubit to a 7-qubit block, applies gates transversally, and follows each
// instruction with a syndrome-extraction round on every block it touched;
// concatenation repeats this per level. Small cases materialize the expanded
// instruction stream, large ones are tracked as exact per-opcode tallies.

namespace qpusim {

// Gate budget for measuring one weight-4 stabilizer generator with a
// verified cat state: 4 cat qubits + 1 verifier prepared and read out, a
// seed H, 3 preparation + 2 verification + 4 data-coupling CNOTs.
struct StabilizerCost {
    std::uint64_t init = 5;
    std::uint64_t single_qubit = 1;
    std::uint64_t cnot = 9;
    std::uint64_t read = 5;

    bool operator==(const StabilizerCost&) const = default;
};

enum class EcPolicy : std::uint8_t {
    per_gate,  // syndrome round on every touched block after every instruction
    none,      // encode only, no syndrome extraction
};

std::string_view ec_policy_name(EcPolicy policy);
std::optional<EcPolicy> ec_policy_from_name(std::string_view name);

struct QecConfig {
    std::uint32_t levels = 0;
    EcPolicy policy = EcPolicy::per_gate;
    StabilizerCost stabilizer_cost{};
    // Surcharge factor on transversal T/TDG applications (magic-state cost
    // knob); 1 means plain transversal application.
    std::uint64_t t_cost_multiplier = 1;

    bool operator==(const QecConfig&) const = default;
};

void validate_config(const QecConfig& config);

// JSON schema: {"levels": L, "ec_policy": "per_gate"|"none",
// "stabilizer_cost": {"init","single_qubit","cnot","read"},
// "t_cost_multiplier": m}; levels is required, the rest default as above.
QecConfig load_qec_config(std::istream& in);
QecConfig load_qec_config_file(const std::string& path);

inline constexpr std::uint32_t kBlockSize = 7;
inline constexpr std::uint32_t kStabilizerCount = 6;  // weight-4 generators of [[7,1,3]]

// Expanded streams are materialized only under both limits; tallies stay
// exact either way.
inline constexpr std::uint64_t kMaterializeQubitLimit = 200;
inline constexpr std::uint64_t kMaterializeGateLimit = 1000000;

struct QubitFootprint {
    std::uint64_t data = 0;          // n * 7^L
    std::uint64_t peak_ancilla = 0;  // shared syndrome pool, summed across levels

    std::uint64_t total() const;
};

// Footprint of an n-qubit register lowered through the configured levels.
// The syndrome pool is reused across blocks and stabilizers within a level,
// so one level adds max(init, read) ancillas per concatenation step.
QubitFootprint physical_qubits(std::uint64_t register_size, const QecConfig& config);

// Per-block syndrome round: kStabilizerCount times the stabilizer budget,
// with the seed H counted under H.
GateTally ec_round_cost(const QecConfig& config);

struct QecResult {
    GateTally tally;
    std::optional<Program> program;  // present when both materialization limits hold

    std::optional<std::uint64_t> expanded_capacity;  // with the program
};

// Lowers a physical-level program through config.levels concatenation steps.
QecResult lower_qec(const Program& physical, const QecConfig& config);

// Counts-only path for streams too large to hold; exactly matches the tally
// of the materialized expansion.
GateTally lower_qec_tally(const GateTally& tally, const QecConfig& config);

}  // namespace qpusim
