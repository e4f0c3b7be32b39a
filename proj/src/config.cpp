#include "orbitobs/config.hpp"

#include <fstream>

namespace orbitobs {

FactorOptions RunConfig::factor_options() const {
    FactorOptions opt;
    opt.effort = factor_effort;
    return opt;
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "text") return OutputFormat::text;
    throw Error(ErrorKind::invalid_input, "unknown output format '" + name + "'");
}

std::string format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::text: return "text";
    }
    return "text";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

unsigned long parse_positive(const std::string& key, const std::string& value) {
    try {
        const long long v = std::stoll(value);
        if (v <= 0) throw std::out_of_range("non-positive");
        return static_cast<unsigned long>(v);
    } catch (const std::exception&) {
        throw Error(ErrorKind::invalid_input, "config: " + key + " needs a positive integer, got '" + value + "'");
    }
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "prime_budget") {
        BigInt v;
        try {
            v = BigInt(value);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorKind::invalid_input, "config: prime_budget needs an integer, got '" + value + "'");
        }
        if (v <= 0) throw Error(ErrorKind::invalid_input, "config: prime_budget must be positive");
        cfg.prime_budget = v;
    } else if (key == "factor_effort") {
        cfg.factor_effort = parse_positive(key, value);
    } else if (key == "coordinate_bit_cap") {
        cfg.coordinate_bit_cap = parse_positive(key, value);
    } else if (key == "cache_path") {
        cfg.cache_path = value;
    } else if (key == "output_format") {
        cfg.output_format = parse_output_format(value);
    } else {
        throw Error(ErrorKind::invalid_input, "config: unknown key '" + key + "'");
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_input, "cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::invalid_input, "config: expected 'key = value', got '" + line + "'");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

} // namespace orbitobs
