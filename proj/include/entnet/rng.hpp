#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <vector>

namespace entnet {

/// Seeded random source threaded through every stochastic operation.
///
/// The conversions to doubles and bounded integers are done by hand so that
/// outputs are identical across standard library implementations.
/// Forced outcomes let tests drive measurements down a chosen branch.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  int bit() { return static_cast<int>(engine_() >> 63); }

  /// Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Queue measurement outcomes that the next measurements must produce.
  void force_outcomes(const std::vector<int>& outcomes) {
    forced_.insert(forced_.end(), outcomes.begin(), outcomes.end());
  }

  std::optional<int> take_forced() {
    if (forced_.empty()) return std::nullopt;
    int v = forced_.front();
    forced_.pop_front();
    return v;
  }

  bool has_forced() const { return !forced_.empty(); }

  /// Fisher-Yates over 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      std::size_t j = below(i);
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
  std::deque<int> forced_;
};

}  // namespace entnet
