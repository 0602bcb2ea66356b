#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace fidelity {

/// Seeded permutation of 0..n-1. Uses only the engine's raw output so the
/// sequence is identical across standard libraries.
inline std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(idx[i], idx[j]);
  }
  return idx;
}

/// `s` distinct row indices out of `n`, ascending. All rows when s >= n.
inline std::vector<std::size_t> seeded_subsample(std::size_t n, std::size_t s, std::uint64_t seed) {
  if (s >= n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }
  auto perm = seeded_permutation(n, seed);
  perm.resize(s);
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace fidelity
