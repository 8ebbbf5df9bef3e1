#pragma once

#include <array>
#include <cstddef>

#include "entnet/error.hpp"
#include "entnet/statevec.hpp"

namespace entnet::qss {

// ((2,3)) qutrit threshold code: |s> -> sum_a |a, a+s, a+2s> / sqrt(3).
// Share at position p carries a + p*s.

namespace detail {
inline int mod3(int v) { return ((v % 3) + 3) % 3; }
}  // namespace detail

/// Encodes the qutrit at `secret` using two fresh |0> qutrits. Returns the
/// sites holding positions 0, 1, 2.
inline std::array<std::size_t, 3> qts23_encode_sites(Register& reg, std::size_t secret, std::size_t anc1, std::size_t anc2) {
  for (auto s : {secret, anc1, anc2})
    if (reg.dim(s) != 3) throw InvalidInput("the (2,3) code acts on qutrits");
  apply_inplace(reg, gates::Custom(gates::fourier(3), {anc1}, "F"));
  apply_inplace(reg, gates::Custom(gates::add_multiple(3, 1), {anc1, anc2}, "add"));
  apply_inplace(reg, gates::Custom(gates::add_multiple(3, 2), {secret, anc2}, "add2"));
  apply_inplace(reg, gates::Custom(gates::add_multiple(3, 1), {anc1, secret}, "add"));
  return {anc1, secret, anc2};
}

/// Three shares in position order.
inline Register qts23_encode(const Register& secret) {
  if (secret.num_sites() != 1 || secret.dim(0) != 3) throw InvalidInput("secret must be a single qutrit");
  Register reg = tensor(secret, basis_state({3, 3}, {0, 0}));
  auto pos = qts23_encode_sites(reg, 0, 1, 2);
  return permuted(reg, {pos[0], pos[1], pos[2]});
}

/// Decodes from the shares at sites u (position i) and v (position j). The
/// secret ends up at v, in a product state with everything else.
inline std::size_t qts23_decode_sites(Register& reg, std::size_t u, int i, std::size_t v, int j) {
  if (i == j || i < 0 || i > 2 || j < 0 || j > 2) throw InvalidInput("positions must be two distinct values in 0..2");
  if (u == v) throw InvalidInput("need two different shares");
  const int k = 3 - i - j;
  const int inv = detail::mod3(j - i) == 1 ? 1 : 2;  // inverse mod 3
  apply_inplace(reg, gates::Custom(gates::add_multiple(3, 2), {u, v}, "sub"));
  apply_inplace(reg, gates::Custom(gates::multiply(3, inv), {v}, "scale"));
  apply_inplace(reg, gates::Custom(gates::add_multiple(3, detail::mod3(k - i)), {v, u}, "add"));
  return v;
}

/// `shares` holds three qutrits in site order; the shares at sites
/// (sites[0], sites[1]) are claimed to be positions (positions[0], positions[1]).
inline Register qts23_decode(Register shares, std::array<std::size_t, 2> sites, std::array<int, 2> positions) {
  if (shares.num_sites() != 3) throw InvalidInput("expected three shares");
  const auto out = qts23_decode_sites(shares, sites[0], positions[0], sites[1], positions[1]);
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < 3; ++s)
    if (s != out) rest.push_back(s);
  return discard_sites(shares, rest);
}

/// Exchanges the shares at sites a and b.
inline Register swap_shares(const Register& shares, std::size_t a, std::size_t b) {
  std::vector<std::size_t> order(shares.num_sites());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::swap(order.at(a), order.at(b));
  return permuted(shares, order);
}

}  // namespace entnet::qss
