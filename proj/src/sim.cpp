#include "qpusim/sim.hpp"

#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

#include "qpusim/arith.hpp"

namespace qpusim {

std::string_view event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::DISPATCH:
            return "DISPATCH";
        case EventKind::OPCODE_ISSUE:
            return "OPCODE_ISSUE";
        case EventKind::GATE_START:
            return "GATE_START";
        case EventKind::GATE_COMPLETE:
            return "GATE_COMPLETE";
        case EventKind::READOUT_RETURN:
            return "READOUT_RETURN";
    }
    return "?";
}

void validate_topology(const NodeTopology& topology) {
    if (topology.execution_unit_count == 0) {
        throw std::invalid_argument("node needs at least one execution unit");
    }
    for (std::size_t c = 0; c < kGateClassCount; ++c) {
        if (topology.class_unit[c] >= topology.execution_unit_count) {
            throw std::invalid_argument(
                std::string(gate_class_name(static_cast<GateClass>(c))) +
                " routed to execution unit " + std::to_string(topology.class_unit[c]) +
                " of " + std::to_string(topology.execution_unit_count));
        }
    }
}

namespace {

void check_program(const Program& program) {
    if (program.level != ProgramLevel::physical) {
        throw std::invalid_argument("simulator executes physical programs only");
    }
    if (auto report = validate_program(program); !report.ok()) {
        const auto& v = report.violations.front();
        throw std::invalid_argument("invalid program at instruction " +
                                    std::to_string(v.instruction_index) + ": " + v.rule);
    }
}

struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
        if (a.timestamp_ns != b.timestamp_ns) return a.timestamp_ns > b.timestamp_ns;
        return a.sequence > b.sequence;
    }
};

}  // namespace

SimStats run_simulation(const Program& program, const MicrocodeTable& table,
                        const NodeTopology& topology, EventLog& log) {
    check_program(program);
    validate_topology(topology);
    // Resolve up front so a table gap is reported before any event fires.
    for (const auto& instr : program.instructions) table.resolve(instr.opcode);

    SimStats stats;
    std::priority_queue<Event, std::vector<Event>, EventOrder> queue;
    std::uint64_t next_sequence = 0;
    const std::uint64_t hop = topology.dispatch_latency_ns;

    const auto push = [&](std::uint64_t ts, EventKind kind, std::uint32_t index) {
        queue.push(Event{ts, next_sequence++, kind, index});
    };

    if (!program.instructions.empty()) push(0, EventKind::DISPATCH, 0);

    while (!queue.empty()) {
        const Event event = queue.top();
        queue.pop();
        log.push_back(event);
        ++stats.event_count;
        stats.total_time_ns = event.timestamp_ns;
        const auto& instr = program.instructions[event.instruction_index];
        switch (event.kind) {
            case EventKind::DISPATCH:
                push(checked_add(event.timestamp_ns, hop), EventKind::OPCODE_ISSUE,
                     event.instruction_index);
                break;
            case EventKind::OPCODE_ISSUE:
                // Routing decision; the class mapping was validated above.
                push(checked_add(event.timestamp_ns, hop), EventKind::GATE_START,
                     event.instruction_index);
                break;
            case EventKind::GATE_START: {
                const auto& model = table.resolve(instr.opcode);
                const std::uint64_t done = checked_add(event.timestamp_ns, model.duration_ns);
                if (opcode_class(instr.opcode) == GateClass::READ) {
                    push(done, EventKind::READOUT_RETURN, event.instruction_index);
                }
                push(done, EventKind::GATE_COMPLETE, event.instruction_index);
                break;
            }
            case EventKind::READOUT_RETURN:
                break;
            case EventKind::GATE_COMPLETE: {
                stats.tally.add(instr.opcode);
                stats.total_energy_zJ =
                    checked_add(stats.total_energy_zJ, table.resolve(instr.opcode).energy_zJ);
                const std::uint32_t next = event.instruction_index + 1;
                if (next < program.instructions.size()) {
                    push(event.timestamp_ns, EventKind::DISPATCH, next);
                }
                break;
            }
        }
    }
    return stats;
}

SimStats run_simulation(const Program& program, const MicrocodeTable& table,
                        const NodeTopology& topology) {
    EventLog log;
    return run_simulation(program, table, topology, log);
}

SimStats analytic_tally(const Program& program, const MicrocodeTable& table,
                        const NodeTopology& topology) {
    check_program(program);
    validate_topology(topology);
    SimStats stats = stats_from_tally(tally_program(program), table);
    // Serial schedule: each instruction adds two dispatch hops ahead of its
    // gate time.
    const auto instruction_count = static_cast<std::uint64_t>(program.instructions.size());
    stats.total_time_ns = checked_add(
        stats.total_time_ns,
        checked_mul(checked_mul(topology.dispatch_latency_ns, 2), instruction_count));
    return stats;
}

SimStats stats_from_tally(const GateTally& tally, const MicrocodeTable& table) {
    SimStats stats;
    stats.tally = tally;
    for (std::size_t i = 0; i < kOpcodeCount; ++i) {
        const auto op = static_cast<Opcode>(i);
        const std::uint64_t count = tally.count(op);
        if (count == 0) continue;
        const auto& model = table.resolve(op);
        stats.total_time_ns =
            checked_add(stats.total_time_ns, checked_mul(count, model.duration_ns));
        stats.total_energy_zJ =
            checked_add(stats.total_energy_zJ, checked_mul(count, model.energy_zJ));
    }
    stats.event_count = checked_add(checked_mul(tally.total(), 4),
                                    tally.class_count(GateClass::READ));
    return stats;
}

void write_event_log(const EventLog& log, std::ostream& out) {
    for (const auto& event : log) {
        out << event.timestamp_ns << ' ' << event.sequence << ' '
            << event_kind_name(event.kind) << ' ' << event.instruction_index << '\n';
    }
}

}  // namespace qpusim
