#pragma once

#include "tentcode/mu.hpp"

#include <cstdint>
#include <vector>

namespace tentcode::verify {

struct Options {
    std::vector<Mu> mus;
    std::size_t max_n = 10;
    std::uint64_t seed = 0;
    int trials = 20000;
    /// Test-only negative control: flips one delta entry in each table the
    /// suites walk, so a correct build must report failures.
    bool inject_fault = false;
};

/// Runs every invariant suite at the configured sizes, printing one
/// ok/FAIL line per suite. Returns the number of failing suites.
int run_all(const Options& options);

}  // namespace tentcode::verify
