#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "qpusim/isa.hpp"

namespace qpusim {

enum class GateClass : std::uint8_t { INIT, UNITARY, READ };

inline constexpr std::size_t kGateClassCount = 3;

inline constexpr std::size_t gate_class_index(GateClass c) {
    return static_cast<std::size_t>(c);
}

// Class of a physical opcode; throws std::invalid_argument for the
// logical-only opcodes, which have no hardware cost of their own.
GateClass opcode_class(Opcode op);

std::string_view gate_class_name(GateClass c);
std::optional<GateClass> gate_class_from_name(std::string_view name);

// Timing and energy entry for one gate class or opcode. Durations are integer
// nanoseconds and energies integer zeptojoules so tallies stay exact.
// power_aW is carried as device metadata and never enters the arithmetic;
// the energy column is authoritative.
struct GateModel {
    std::uint64_t duration_ns = 1;
    std::uint64_t power_aW = 0;
    std::uint64_t energy_zJ = 0;

    bool operator==(const GateModel&) const = default;
};

// Per-class models with optional per-opcode overrides.
class MicrocodeTable {
public:
    MicrocodeTable() = default;

    static MicrocodeTable with_class_models(const std::array<GateModel, kGateClassCount>& models);

    // Shipped silicon QPU model: INIT 300 us / 5 aJ, unitary 40 ns / 4 zJ,
    // READ 100 us / 5 aJ, all at 0.1 fW class power.
    static MicrocodeTable silicon_default();

    // Opcode override if present, class model otherwise. Throws
    // std::invalid_argument for logical-only opcodes: they have no microcode.
    const GateModel& resolve(Opcode op) const;

    const GateModel& class_model(GateClass c) const;
    void set_class_model(GateClass c, const GateModel& model);

    void set_override(Opcode op, const GateModel& model);
    const std::optional<GateModel>& override_for(Opcode op) const;

    bool operator==(const MicrocodeTable&) const = default;

private:
    std::array<GateModel, kGateClassCount> class_models_{};
    std::array<std::optional<GateModel>, kOpcodeCount> overrides_{};
};

// JSON schema: one object per class name (INIT/UNITARY/READ), each with
// duration_ns, power_aW, energy_zJ; optional "opcode_overrides" keyed by
// opcode name. Durations must be positive. Throws std::runtime_error with a
// descriptive message on schema violations.
MicrocodeTable load_gate_models(std::istream& in);
MicrocodeTable load_gate_models_file(const std::string& path);
void save_gate_models(const MicrocodeTable& table, std::ostream& out);

// Exact per-opcode instruction counts with per-class roll-up. All arithmetic
// is overflow-checked.
class GateTally {
public:
    void add(Opcode op, std::uint64_t count = 1);
    void add_scaled(const GateTally& other, std::uint64_t times = 1);

    std::uint64_t count(Opcode op) const;
    std::uint64_t class_count(GateClass c) const;
    std::uint64_t total() const;

    bool operator==(const GateTally&) const = default;

private:
    std::array<std::uint64_t, kOpcodeCount> counts_{};
};

GateTally tally_program(const Program& program);

}  // namespace qpusim
