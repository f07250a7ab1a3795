#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

// Energy model for conventional brute-force search: scanning half the
// database on average, paying an n-bit compare per element and, optionally,
// the memory traffic to fetch it.

namespace qpusim {

struct CpuModel {
    // Compare cost per element is compare_base_zJ_per_bit * n^compare_exponent;
    // exponent 0 models a flat comparator, 1 a cost proportional to width.
    std::uint64_t compare_base_zJ_per_bit = 1000000;
    std::uint32_t compare_exponent = 0;
    // Fetch cost per element is fetch_zJ_per_element * words_per_element.
    std::uint64_t fetch_zJ_per_element = 1300000000000;
    std::uint64_t words_per_element = 1;
    bool include_memory = true;

    bool operator==(const CpuModel&) const = default;
};

// Average-case search energy over a database of N = 2^n elements:
// (N/2) * (compare(n) + [include_memory] * fetch). Throws
// std::invalid_argument unless N is a power of two, at least 2.
std::uint64_t cpu_search_energy(std::uint64_t database_size, const CpuModel& model);

// JSON schema: {"compare_base_zJ_per_bit", "fetch_zJ_per_element",
// "words_per_element"} with optional "compare_exponent"; include_memory is a
// runtime toggle, not a file key.
CpuModel load_cpu_model(std::istream& in);
CpuModel load_cpu_model_file(const std::string& path);

}  // namespace qpusim
