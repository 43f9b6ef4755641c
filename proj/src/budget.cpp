#include "covtrans/budget.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace covtrans {

namespace {
std::atomic<unsigned> g_threads{0};
}

std::uint64_t verification_budget() {
  if (const char* env = std::getenv("COVTRANS_BUDGET")) {
    try {
      const auto value = std::stoull(env);
      if (value > 0) return value;
    } catch (const std::exception&) {
    }
  }
  return kDefaultVerificationBudget;
}

void set_thread_count(unsigned threads) { g_threads = threads; }

unsigned thread_count() {
  const unsigned requested = g_threads.load();
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::optional<std::uint64_t> parallel_first(
    std::uint64_t count,
    const std::function<std::optional<std::uint64_t>(std::uint64_t, std::uint64_t)>& scan) {
  const std::uint64_t workers = std::min<std::uint64_t>(thread_count(), count);
  if (workers <= 1) return scan(0, count);

  std::vector<std::optional<std::uint64_t>> found(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = count * w / workers;
      const std::uint64_t end = count * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { found[w] = scan(begin, end); });
    }
  }
  // Chunks are ordered, so the first chunk with a hit holds the minimum.
  for (const auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace covtrans
