#pragma once

#include <optional>
#include <string>

#include "orbitobs/factor.hpp"

namespace orbitobs {

enum class OutputFormat { json, csv, text };

struct RunConfig {
    BigInt prime_budget = 1000000;             // default prime scan bound
    unsigned long factor_effort = 1ul << 23;   // rho iteration budget per factorization
    unsigned long coordinate_bit_cap = 1ul << 20;
    std::optional<std::string> cache_path;     // ORBITOBS_CACHE overrides
    OutputFormat output_format = OutputFormat::text;

    FactorOptions factor_options() const;
};

// Flat "key = value" file; '#' starts a comment. Unknown keys are an
// error, as are non-positive budgets.
RunConfig load_config_file(const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

OutputFormat parse_output_format(const std::string& name);
std::string format_name(OutputFormat f);

} // namespace orbitobs
