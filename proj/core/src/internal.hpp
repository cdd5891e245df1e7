// Copyright 2026 The maxlin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Portable random helpers and a deterministic parallel loop. Distributions
// from <random> are implementation-defined, so sampling goes through these.

#ifndef MAXLIN_SRC_INTERNAL_HPP_
#define MAXLIN_SRC_INTERNAL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace maxlin::internal {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the i-th independent stream derived from `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(splitmix64(seed) ^ splitmix64(i + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t hash_words(std::span<const std::uint32_t> words,
                                std::uint64_t h = 0) {
  for (std::uint32_t w : words) h = splitmix64(h ^ w);
  return h;
}

// Uniform integer in [0, n), n >= 1, by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

// Uniform double in [0, 1).
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

inline unsigned worker_count(std::size_t tasks, unsigned requested) {
  unsigned hw = requested != 0 ? requested
                               : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(hw, tasks)));
}

// Calls fn on every vector of length m with exactly w nonzero entries over
// F_q, in lexicographic order.
inline void for_each_of_weight(
    std::size_t m, std::size_t w, std::uint64_t q,
    const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> v(m, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                          std::size_t left) {
    if (left == 0) {
      fn(v);
      return;
    }
    if (m - pos > left) {
      v[pos] = 0;
      rec(pos + 1, left);
    }
    for (std::uint64_t a = 1; a < q; ++a) {
      v[pos] = static_cast<std::uint32_t>(a);
      rec(pos + 1, left - 1);
    }
    v[pos] = 0;
  };
  if (w <= m) rec(0, w);
}

// Runs fn(i) for every i in [0, count) on up to `threads` workers (0 means
// hardware concurrency). Each index is visited exactly once, so callers
// that write to slot i get results independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = worker_count(count, threads);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace maxlin::internal

#endif  // MAXLIN_SRC_INTERNAL_HPP_
