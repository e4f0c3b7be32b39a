#pragma once

// Persistent factorization cache. Entries are re-verified on load
// (product and primality replay); corrupt ones are dropped, never
// trusted. Saving merges with whatever is on disk under an advisory
// flock, so concurrent runs against one cache file settle as
// last-writer-wins per key.

#include <string>

#include "orbitobs/factor.hpp"

namespace orbitobs {

struct FactorCache {
    static constexpr const char* version = "1";
    FactorCacheMap entries;

    static FactorCache load(const std::string& path); // missing file -> empty cache
    void save(const std::string& path) const;
};

} // namespace orbitobs
