#pragma once

#include "warpsgk/symexpr/expr.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace warpsgk::symexpr {

/// Seeded generator of rational sample points in [-1, 1]^k with
/// denominator 64. The stream depends only on the seed and the symbol list,
/// so reports that record the seed are reproducible across platforms.
class SampleBox {
 public:
  static constexpr int kDenominator = 64;

  SampleBox(std::vector<int> symbols, std::uint64_t seed);
  SampleBox(const Chart& chart, std::uint64_t seed) : SampleBox(chart.symbols(), seed) {}

  Point next();
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<int> symbols_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

}  // namespace warpsgk::symexpr
