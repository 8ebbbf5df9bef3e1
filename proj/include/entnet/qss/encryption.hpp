#pragma once

#include <cstdint>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/rng.hpp"
#include "entnet/statevec.hpp"

namespace entnet::qss {

/// Two key bits per qubit: 00 -> I, 01 -> X, 10 -> Y, 11 -> Z.
using PauliKey = std::vector<int>;

inline Matrix pauli_for(int b1, int b2) {
  switch (b1 * 2 + b2) {
    case 0: return Matrix::Identity(2, 2);
    case 1: return gates::pauli_x();
    case 2: return gates::pauli_y();
    case 3: return gates::pauli_z();
  }
  throw InvalidInput("key entries must be bits");
}

inline PauliKey random_pauli_key(std::size_t qubits, Rng& rng) {
  PauliKey k(2 * qubits);
  for (auto& b : k) b = rng.bit();
  return k;
}

inline Register pauli_encrypt(Register reg, const PauliKey& key) {
  if (key.size() != 2 * reg.num_sites()) throw InvalidInput("key needs two bits per qubit");
  for (std::size_t q = 0; q < reg.num_sites(); ++q) {
    if (reg.dim(q) != 2) throw InvalidInput("Pauli encryption acts on qubits");
    apply_inplace(reg, gates::Custom(pauli_for(key[2 * q], key[2 * q + 1]), {q}, "pauli"));
  }
  return reg;
}

// Paulis are involutions (Y Y = I exactly), so decryption re-applies the key.
inline Register pauli_decrypt(Register reg, const PauliKey& key) { return pauli_encrypt(std::move(reg), key); }

/// Average of the encrypted density matrix over all 4^s keys.
inline Matrix key_average_density(const Register& reg) {
  const std::size_t s = reg.num_sites();
  if (s > 6) throw LimitExceeded("key averaging is exhaustive; at most 6 qubits");
  const auto dim = static_cast<Eigen::Index>(reg.size());
  Matrix rho = Matrix::Zero(dim, dim);
  const std::uint64_t keys = std::uint64_t{1} << (2 * s);
  for (std::uint64_t k = 0; k < keys; ++k) {
    PauliKey key(2 * s);
    for (std::size_t i = 0; i < 2 * s; ++i) key[i] = static_cast<int>((k >> (2 * s - 1 - i)) & 1u);
    const Register e = pauli_encrypt(reg, key);
    rho += e.amps() * e.amps().adjoint();
  }
  return rho / static_cast<double>(keys);
}

/// Qudit generalisation X^a Z^b used to encrypt qutrit shares.
inline Matrix weyl(int d, int a, int b) { return gates::shift(d, a) * gates::clock(d, b); }

inline void weyl_encrypt_site(Register& reg, std::size_t site, int a, int b) {
  const int d = reg.dim(site);
  apply_inplace(reg, gates::Custom(weyl(d, a, b), {site}, "weyl"));
}

inline void weyl_decrypt_site(Register& reg, std::size_t site, int a, int b) {
  const int d = reg.dim(site);
  apply_inplace(reg, gates::Custom(weyl(d, a, b).adjoint(), {site}, "weyl-inverse"));
}

}  // namespace entnet::qss
