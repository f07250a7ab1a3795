#include "qpusim/cpu_model.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "json.hpp"
#include "qpusim/arith.hpp"

namespace qpusim {

std::uint64_t cpu_search_energy(std::uint64_t database_size, const CpuModel& model) {
    if (database_size < 2 || !std::has_single_bit(database_size)) {
        throw std::invalid_argument("database size must be a power of two, at least 2");
    }
    const auto n = static_cast<std::uint32_t>(std::countr_zero(database_size));
    std::uint64_t per_element =
        checked_mul(model.compare_base_zJ_per_bit, checked_pow(n, model.compare_exponent));
    if (model.include_memory) {
        per_element = checked_add(
            per_element, checked_mul(model.fetch_zJ_per_element, model.words_per_element));
    }
    return checked_mul(database_size / 2, per_element);
}

CpuModel load_cpu_model(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw std::runtime_error(std::string("processor model is not valid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw std::runtime_error("processor model must hold a JSON object");
    CpuModel model;
    for (auto& [key, value] : doc.items()) {
        if (!value.is_number_unsigned()) {
            throw std::runtime_error("`" + key + "` must be a non-negative integer");
        }
        const auto amount = value.get<std::uint64_t>();
        if (key == "compare_base_zJ_per_bit") {
            model.compare_base_zJ_per_bit = amount;
        } else if (key == "compare_exponent") {
            if (amount > 8) throw std::runtime_error("compare_exponent capped at 8");
            model.compare_exponent = static_cast<std::uint32_t>(amount);
        } else if (key == "fetch_zJ_per_element") {
            model.fetch_zJ_per_element = amount;
        } else if (key == "words_per_element") {
            model.words_per_element = amount;
        } else {
            throw std::runtime_error("processor model: unknown key `" + key + "`");
        }
    }
    return model;
}

CpuModel load_cpu_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open processor model file: " + path);
    return load_cpu_model(in);
}

}  // namespace qpusim
