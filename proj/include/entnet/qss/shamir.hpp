#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/rng.hpp"

namespace entnet::qss {

inline constexpr std::int64_t kDefaultPrime = 257;

struct Share {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const Share&) const = default;
};

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b = mod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t p) {
  if (mod(a, p) == 0) throw InvalidInput("zero has no inverse");
  return pow_mod(a, p - 2, p);
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::int64_t eval(const std::vector<std::int64_t>& coeff, std::int64_t x, std::int64_t p) {
  std::int64_t y = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) y = (y * x + *it) % p;
  return y;
}

}  // namespace detail

/// Degree k-1 polynomial over GF(p) with constant term `secret`; share i is
/// its value at x = i (1-based).
inline std::vector<Share> shamir_split(std::int64_t secret, int k, int n, Rng& rng, std::int64_t p = kDefaultPrime) {
  if (!detail::is_prime(p)) throw InvalidInput("field size must be prime");
  if (k < 1 || k > n) throw InvalidInput("need 1 <= k <= n");
  if (n >= p) throw InvalidInput("need fewer shares than field elements");
  if (secret < 0 || secret >= p) throw InvalidInput("secret must be a field element");
  std::vector<std::int64_t> coeff{secret};
  for (int i = 1; i < k; ++i) coeff.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p))));
  std::vector<Share> out;
  for (int x = 1; x <= n; ++x) out.push_back({x, detail::eval(coeff, x, p)});
  return out;
}

/// Lagrange interpolation at 0 from any k shares (extra shares are ignored).
inline std::int64_t shamir_reconstruct(const std::vector<Share>& shares, int k, std::int64_t p = kDefaultPrime) {
  if (static_cast<int>(shares.size()) < k) throw InvalidInput("not enough shares");
  std::set<std::int64_t> xs;
  for (int i = 0; i < k; ++i)
    if (!xs.insert(detail::mod(shares[static_cast<std::size_t>(i)].x, p)).second) throw InvalidInput("repeated share");
  std::int64_t s = 0;
  for (int i = 0; i < k; ++i) {
    std::int64_t num = 1, den = 1;
    const auto xi = shares[static_cast<std::size_t>(i)].x;
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      const auto xj = shares[static_cast<std::size_t>(j)].x;
      num = num * detail::mod(-xj, p) % p;
      den = den * detail::mod(xi - xj, p) % p;
    }
    s = (s + detail::mod(shares[static_cast<std::size_t>(i)].y, p) * num % p * detail::inverse(den, p)) % p;
  }
  return s;
}

/// For every candidate secret, the number of degree k-1 polynomials agreeing
/// with the given shares. Exhaustive over p^(k-1) polynomials per secret.
inline std::map<std::int64_t, std::int64_t> consistent_secret_counts(const std::vector<Share>& shares, int k, std::int64_t p) {
  std::int64_t total = 1;
  for (int i = 1; i < k; ++i) total *= p;
  if (total > 1'000'000) throw LimitExceeded("field too large for exhaustive consistency check");
  std::map<std::int64_t, std::int64_t> out;
  for (std::int64_t s = 0; s < p; ++s) {
    std::int64_t count = 0;
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::vector<std::int64_t> coeff{s};
      auto r = idx;
      for (int i = 1; i < k; ++i) {
        coeff.push_back(r % p);
        r /= p;
      }
      bool ok = true;
      for (const auto& sh : shares) ok = ok && detail::eval(coeff, detail::mod(sh.x, p), p) == detail::mod(sh.y, p);
      count += ok;
    }
    out[s] = count;
  }
  return out;
}

}  // namespace entnet::qss
