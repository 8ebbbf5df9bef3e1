#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/rng.hpp"
#include "entnet/statevec.hpp"

namespace entnet::qss {

inline constexpr double kDefaultTheta = std::numbers::pi / 5;

struct Homogenized {
  Register reg;                       // physical order
  std::vector<std::size_t> ordering;  // physical slot i holds logical qubit ordering[i]; 0 = system
  double theta = kDefaultTheta;
};

/// System qubit meets N reservoir qubits (all |0>) one after another through
/// partial swaps; the output qubits are then shuffled.
inline Homogenized homogenize(const Register& system, int N, double theta, Rng& rng) {
  if (system.num_sites() != 1 || system.dim(0) != 2) throw InvalidInput("system must be one qubit");
  if (N < 0 || N > 8) throw LimitExceeded("reservoir size must be in 0..8");
  Register reg = system;
  if (N > 0) reg = tensor(reg, basis_state(std::vector<int>(static_cast<std::size_t>(N), 2), std::vector<int>(static_cast<std::size_t>(N), 0)));
  for (int j = 1; j <= N; ++j) apply_inplace(reg, gates::PartialSwap(0, static_cast<std::size_t>(j), theta));
  auto order = rng.permutation(static_cast<std::size_t>(N) + 1);
  return {permuted(reg, order), order, theta};
}

/// Undoes the shuffle claimed by `ordering`, then the partial swaps in
/// reverse. Returns the register in logical order (system first).
inline Register unwind(const Register& reg, const std::vector<std::size_t>& ordering, double theta) {
  if (ordering.size() != reg.num_sites()) throw InvalidInput("ordering length mismatch");
  std::vector<std::size_t> inv(ordering.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    if (ordering[i] >= ordering.size()) throw InvalidInput("ordering is not a permutation");
    inv[ordering[i]] = i;
  }
  Register out = permuted(reg, inv);
  for (std::size_t j = reg.num_sites(); j-- > 1;) apply_inplace(out, gates::PartialSwap(0, j, -theta));
  return out;
}

inline double unwind_fidelity(const Homogenized& h, const std::vector<std::size_t>& ordering, const Register& system) {
  return subset_fidelity(unwind(h.reg, ordering, h.theta), {0}, system);
}

/// Orderings as permutation indices in lexicographic order, for key sharing.
inline std::size_t ordering_index(const std::vector<std::size_t>& p) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < p.size(); ++j) smaller += p[j] < p[i];
    idx = idx * (p.size() - i) + smaller;
  }
  return idx;
}

inline std::vector<std::size_t> ordering_from_index(std::size_t idx, std::size_t n) {
  std::vector<std::size_t> digits(n), pool(n), out;
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = n; i-- > 0;) {
    digits[i] = idx % (n - i);
    idx /= (n - i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return out;
}

}  // namespace entnet::qss
