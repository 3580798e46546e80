#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace augsp::parallel {

// Runs task(i) for i in [0, tasks) on up to `workers` threads.
template <typename Fn>
void for_each_task(std::size_t tasks, std::size_t workers, Fn&& task) {
  workers = std::max<std::size_t>(1, std::min(workers, tasks));
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks; i = next++) task(i);
    });
  }
}

// Splits [0, count) into contiguous chunks, asks scan(begin, end) for the
// first hit inside each chunk and returns the hit of the lowest chunk. The
// result equals a sequential scan regardless of the worker count.
template <typename T, typename Scan>
std::optional<T> first_hit(std::uint64_t count, std::size_t workers, Scan&& scan) {
  if (count == 0) return std::nullopt;
  if (workers <= 1) return scan(std::uint64_t{0}, count);

  const std::uint64_t chunks = std::min<std::uint64_t>(count, workers * 8);
  const std::uint64_t step = (count + chunks - 1) / chunks;
  std::vector<std::optional<T>> hits(chunks);
  std::atomic<std::uint64_t> best{chunks};

  for_each_task(chunks, workers, [&](std::size_t c) {
    if (c > best.load()) return;
    const std::uint64_t begin = c * step;
    const std::uint64_t end = std::min(count, begin + step);
    if (begin >= end) return;
    hits[c] = scan(begin, end);
    if (hits[c]) {
      std::uint64_t cur = best.load();
      while (c < cur && !best.compare_exchange_weak(cur, c)) {
      }
    }
  });

  for (auto& h : hits)
    if (h) return std::move(h);
  return std::nullopt;
}

}  // namespace augsp::parallel
