#pragma once

#include <cstdint>
#include <stdexcept>

// Overflow-checked unsigned 64-bit helpers. Sweep tallies at deep code
// distances overflow silently otherwise; every accumulation in the counting
// paths goes through these.

namespace qpusim {

struct ArithmeticOverflow : std::overflow_error {
    ArithmeticOverflow() : std::overflow_error("64-bit tally overflow") {}
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t result = 0;
    if (__builtin_add_overflow(a, b, &result)) throw ArithmeticOverflow();
    return result;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t result = 0;
    if (__builtin_mul_overflow(a, b, &result)) throw ArithmeticOverflow();
    return result;
}

// a^b with the same overflow discipline.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exponent) {
    std::uint64_t result = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) result = checked_mul(result, base);
    return result;
}

}  // namespace qpusim
