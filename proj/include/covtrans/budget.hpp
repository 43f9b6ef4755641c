#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace covtrans {

inline constexpr std::uint64_t kDefaultVerificationBudget = 100'000'000;

// Elementary-step budget for exhaustive verification; COVTRANS_BUDGET
// overrides the default when set to a positive integer.
std::uint64_t verification_budget();

// Worker cap for data-parallel scans; 0 means hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs `scan(begin, end)` over [0, count) split into contiguous chunks, one
// per worker. Each call returns the first failing index in its range, if
// any; the smallest such index over all chunks is returned, so the result
// does not depend on scheduling.
std::optional<std::uint64_t> parallel_first(
    std::uint64_t count,
    const std::function<std::optional<std::uint64_t>(std::uint64_t, std::uint64_t)>& scan);

}  // namespace covtrans
