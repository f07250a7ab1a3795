#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "qpusim/gate_model.hpp"
#include "qpusim/isa.hpp"

// Discrete-event model of one compute node: a host dispatching into a
// control unit that routes each opcode to the execution unit owning its gate
// class. The instruction stream executes strictly serially; a gate starts
// only after its predecessor completes.

namespace qpusim {

enum class EventKind : std::uint8_t {
    DISPATCH,        // host hands the instruction to the control unit
    OPCODE_ISSUE,    // control unit routes it to an execution unit
    GATE_START,
    GATE_COMPLETE,
    READOUT_RETURN,  // classical result leaves the device, READ only
};

std::string_view event_kind_name(EventKind kind);

struct Event {
    std::uint64_t timestamp_ns = 0;
    std::uint64_t sequence = 0;  // creation order; ties on timestamp resolve by it
    EventKind kind = EventKind::DISPATCH;
    std::uint32_t instruction_index = 0;

    bool operator==(const Event&) const = default;
};

using EventLog = std::vector<Event>;

struct NodeTopology {
    std::uint32_t execution_unit_count = 3;
    // Gate class -> execution unit id.
    std::array<std::uint32_t, kGateClassCount> class_unit = {0, 1, 2};
    // Per hop: host -> control unit and control unit -> execution unit.
    std::uint64_t dispatch_latency_ns = 0;
};

void validate_topology(const NodeTopology& topology);

struct SimStats {
    GateTally tally;
    std::uint64_t total_time_ns = 0;
    std::uint64_t total_energy_zJ = 0;
    std::uint64_t event_count = 0;

    bool operator==(const SimStats&) const = default;
};

// Executes a physical program against the table. Throws std::invalid_argument
// on validation failure or an opcode the table cannot resolve.
SimStats run_simulation(const Program& program, const MicrocodeTable& table,
                        const NodeTopology& topology = {});
SimStats run_simulation(const Program& program, const MicrocodeTable& table,
                        const NodeTopology& topology, EventLog& log);

// Closed-form cross-check of the serial schedule: per-opcode counts times the
// table, plus the two dispatch hops per instruction. No event engine.
SimStats analytic_tally(const Program& program, const MicrocodeTable& table,
                        const NodeTopology& topology = {});

// Counts-only stats for streams that exist as tallies. Assumes zero dispatch
// latency; event_count covers the four per-instruction events plus one
// readout return per READ.
SimStats stats_from_tally(const GateTally& tally, const MicrocodeTable& table);

// One line per event: `<timestamp_ns> <seq> <kind> <instruction_index>`.
void write_event_log(const EventLog& log, std::ostream& out);

}  // namespace qpusim
