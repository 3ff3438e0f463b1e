#pragma once

#include <cstdlib>
#include <random>

inline std::uint64_t test_seed() {
    const char* s = std::getenv("HYPERLOOP_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 20240611ULL;
}

inline std::mt19937_64 test_rng() { return std::mt19937_64(test_seed()); }
