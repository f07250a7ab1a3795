#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpusim/isa.hpp"

// Dense reference semantics for small registers. This is a verification
// backend, not a performance path: it exists so gate decompositions and the
// search construction can be checked against exact linear algebra.

namespace qpusim {

using Amplitude = std::complex<double>;

// Largest register the dense backend accepts (32-dimensional state space).
inline constexpr std::uint32_t kMaxUnitaryQubits = 5;

class UnitaryMatrix {
public:
    explicit UnitaryMatrix(std::uint32_t qubit_count);  // identity

    std::uint32_t qubit_count() const { return qubit_count_; }
    std::size_t dim() const { return dim_; }

    Amplitude& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Amplitude& at(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

private:
    std::uint32_t qubit_count_;
    std::size_t dim_;
    std::vector<Amplitude> data_;
};

// Basis convention: qubit 0 is the most significant bit of the basis index,
// so |q0 q1 ... q_{m-1}> maps to index (q0 << (m-1)) | ... | q_{m-1}.

// In-place action of one instruction on a state vector. Logical
// multi-controlled opcodes act by their textbook definition.
void apply_instruction(std::vector<Amplitude>& state, std::uint32_t qubit_count,
                       const Instruction& instr);

// Ordered product of the gate matrices of a program on at most
// kMaxUnitaryQubits qubits. INIT is accepted only as a leading run and READ
// only as a trailing run; both are skipped in the product. The program must
// validate cleanly. Logical programs are accepted with textbook
// multi-controlled semantics.
UnitaryMatrix circuit_unitary(const Program& program);

// State reached from |0...0> by the same gate sequence.
std::vector<Amplitude> apply_program(const Program& program);

// Full-register matrix of a single instruction, for decomposition checks.
UnitaryMatrix instruction_unitary(std::uint32_t qubit_count, const Instruction& instr);

// max_ij |phase * a_ij - b_ij| with the phase chosen from the largest entry
// of a. Zero (to rounding) iff the matrices agree up to global phase.
double max_abs_diff_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b);

}  // namespace qpusim
