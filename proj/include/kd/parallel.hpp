#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace kd {

/// Splits [0, total) into `workers` contiguous chunks, folds each chunk into
/// its own copy of `identity`, and merges the partial results in chunk order.
/// With a commutative-monoid merge the result does not depend on `workers`.
template <class Acc, class Fold, class Merge>
Acc parallel_reduce(std::uint64_t total, int workers, const Acc& identity, Fold fold, Merge merge) {
  const std::uint64_t chunks =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(workers, 1)), total));
  if (chunks == 1) {
    Acc acc = identity;
    fold(std::uint64_t{0}, total, acc);
    return acc;
  }
  std::vector<Acc> partial(chunks, identity);
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = total / chunks * c + std::min(c, total % chunks);
    const std::uint64_t end = begin + total / chunks + (c < total % chunks ? 1 : 0);
    threads.emplace_back([&, c, begin, end] {
      try {
        fold(begin, end, partial[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc acc = identity;
  for (const auto& p : partial) merge(acc, p);
  return acc;
}

}  // namespace kd
