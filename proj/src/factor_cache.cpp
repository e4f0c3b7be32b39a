#include "orbitobs/factor_cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <json.hpp>

namespace orbitobs {

namespace {

using nlohmann::json;

bool entry_replays(const BigInt& value, const std::vector<std::pair<BigInt, unsigned>>& factors) {
    BigInt prod = 1;
    for (const auto& [p, e] : factors) {
        if (e == 0 || !is_prime(p)) return false;
        prod *= pow_int(p, e);
    }
    return prod == value;
}

FactorCacheMap parse_entries(const std::string& text) {
    FactorCacheMap out;
    json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("entries")) return out;
    if (!doc["entries"].is_object()) return out;
    for (const auto& [key, val] : doc["entries"].items()) {
        BigInt value;
        std::vector<std::pair<BigInt, unsigned>> factors;
        try {
            value = BigInt(key);
            if (!val.is_array()) continue;
            bool ok = true;
            for (const auto& pe : val) {
                if (!pe.is_array() || pe.size() != 2 || !pe[0].is_string() ||
                    !pe[1].is_number_unsigned()) {
                    ok = false;
                    break;
                }
                factors.emplace_back(BigInt(pe[0].get<std::string>()), pe[1].get<unsigned>());
            }
            if (!ok) continue;
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (entry_replays(value, factors)) out.emplace(std::move(value), std::move(factors));
    }
    return out;
}

std::string render(const FactorCacheMap& entries) {
    json doc;
    doc["version"] = FactorCache::version;
    json obj = json::object();
    for (const auto& [value, factors] : entries) {
        json list = json::array();
        for (const auto& [p, e] : factors) list.push_back(json::array({p.get_str(), e}));
        obj[value.get_str()] = std::move(list);
    }
    doc["entries"] = std::move(obj);
    return doc.dump();
}

} // namespace

FactorCache FactorCache::load(const std::string& path) {
    FactorCache cache;
    std::ifstream in(path);
    if (!in) return cache; // a missing cache is just cold
    std::ostringstream buf;
    buf << in.rdbuf();
    cache.entries = parse_entries(buf.str());
    return cache;
}

void FactorCache::save(const std::string& path) const {
    const int fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd < 0) throw Error(ErrorKind::invalid_input, "cannot open cache file '" + path + "'");
    ::flock(fd, LOCK_EX);

    std::string existing;
    {
        std::ifstream in(path);
        std::ostringstream buf;
        buf << in.rdbuf();
        existing = buf.str();
    }
    FactorCacheMap merged = parse_entries(existing);
    for (const auto& [k, v] : entries) merged[k] = v; // our results win per key

    const std::string text = render(merged);
    if (::ftruncate(fd, 0) != 0 || ::lseek(fd, 0, SEEK_SET) < 0 ||
        ::write(fd, text.data(), text.size()) != static_cast<ssize_t>(text.size())) {
        ::flock(fd, LOCK_UN);
        ::close(fd);
        throw Error(ErrorKind::invalid_input, "cannot write cache file '" + path + "'");
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
}

} // namespace orbitobs
