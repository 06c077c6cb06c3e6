#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace sylsim {

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, total) into at most `parts` contiguous, non-empty ranges.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> partition_ranges(std::uint64_t total,
                                                                             int parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  if (total == 0 || parts < 1) return ranges;
  const auto p = static_cast<std::uint64_t>(parts);
  const std::uint64_t base = total / p;
  const std::uint64_t rem = total % p;
  std::uint64_t begin = 0;
  for (std::uint64_t i = 0; i < p && begin < total; ++i) {
    const std::uint64_t len = base + (i < rem ? 1 : 0);
    if (len == 0) continue;
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

/// Runs fn(begin, end) over a partition of [0, total) and returns the partial
/// results ordered by range. The ordering, and therefore any merge performed
/// by the caller, is independent of the number of threads.
template <typename Result, typename Fn>
std::vector<Result> run_partitioned(std::uint64_t total, int threads, Fn&& fn) {
  const auto ranges = partition_ranges(total, resolve_thread_count(threads));
  std::vector<Result> results(ranges.size());
  if (ranges.size() <= 1) {
    if (!ranges.empty()) results[0] = fn(ranges[0].first, ranges[0].second);
    return results;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(ranges.size());
  workers.reserve(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        results[i] = fn(ranges[i].first, ranges[i].second);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace sylsim
