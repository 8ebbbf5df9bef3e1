#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "entnet/error.hpp"
#include "entnet/rng.hpp"

namespace entnet {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kTol = 1e-10;
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 22;

/// Dense pure state over mixed-dimension sites. Site 0 is the most
/// significant digit of the basis index.
class Register {
 public:
  Register() : amps_(Vector::Ones(1)) {}

  Register(std::vector<int> dims, Vector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != dimension_of(dims_))
      throw InvalidInput("amplitude count does not match site dimensions");
  }

  static std::size_t dimension_of(const std::vector<int>& dims) {
    std::size_t total = 1;
    for (int d : dims) {
      if (d < 2) throw InvalidInput("site dimension must be at least 2");
      total *= static_cast<std::size_t>(d);
      if (total > kMaxDimension) throw LimitExceeded("register exceeds 2^22 amplitudes");
    }
    return total;
  }

  const std::vector<int>& dims() const { return dims_; }
  const Vector& amps() const { return amps_; }
  Vector& amps() { return amps_; }
  std::size_t num_sites() const { return dims_.size(); }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  int dim(std::size_t site) const { return dims_.at(site); }

  std::size_t stride(std::size_t site) const {
    std::size_t s = 1;
    for (std::size_t i = site + 1; i < dims_.size(); ++i) s *= static_cast<std::size_t>(dims_[i]);
    return s;
  }

  int digit(std::size_t index, std::size_t site) const {
    return static_cast<int>((index / stride(site)) % static_cast<std::size_t>(dims_[site]));
  }

  double norm_squared() const { return amps_.squaredNorm(); }

  cplx amp(const std::vector<int>& labels) const {
    if (labels.size() != dims_.size()) throw InvalidInput("label count does not match site count");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (labels[i] < 0 || labels[i] >= dims_[i]) throw InvalidInput("label out of range");
      idx = idx * static_cast<std::size_t>(dims_[i]) + static_cast<std::size_t>(labels[i]);
    }
    return amps_[static_cast<Eigen::Index>(idx)];
  }

 private:
  std::vector<int> dims_;
  Vector amps_;
};

inline Register basis_state(const std::vector<int>& dims, const std::vector<int>& labels) {
  if (dims.size() != labels.size()) throw InvalidInput("dims and labels differ in length");
  const std::size_t total = Register::dimension_of(dims);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= dims[i]) throw InvalidInput("label out of range for site");
    idx = idx * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(labels[i]);
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(total));
  amps[static_cast<Eigen::Index>(idx)] = 1.0;
  return Register(dims, std::move(amps));
}

/// Builds a register from raw amplitudes; they must already be normalized.
inline Register from_amplitudes(const std::vector<int>& dims, const std::vector<cplx>& values) {
  Vector amps(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) amps[static_cast<Eigen::Index>(i)] = values[i];
  Register r(dims, std::move(amps));
  if (std::abs(r.norm_squared() - 1.0) > kTol) throw InvalidInput("amplitudes are not normalized");
  return r;
}

/// (|0...0> + |1...1>)/sqrt(2) over n qubits; n = 1 gives |+>.
inline Register cat_state(std::size_t n) {
  if (n == 0) throw InvalidInput("cat state needs at least one qubit");
  std::vector<int> dims(n, 2);
  Vector amps = Vector::Zero(Eigen::Index{1} << n);
  amps[0] = M_SQRT1_2;
  amps[amps.size() - 1] = M_SQRT1_2;
  return Register(dims, std::move(amps));
}

inline Register tensor(const Register& a, const Register& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  Register::dimension_of(dims);
  Vector amps(static_cast<Eigen::Index>(a.size() * b.size()));
  const auto nb = static_cast<Eigen::Index>(b.size());
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) amps.segment(i * nb, nb) = a.amps()[i] * b.amps();
  return Register(std::move(dims), std::move(amps));
}

// ---------------------------------------------------------------------------
// Gates

enum class GateKind { X, Y, Z, H, CNOT, QutritPermutation, PartialSwap, Custom };

struct GateSpec {
  GateKind kind = GateKind::Custom;
  std::string name;
  Matrix matrix;
  std::vector<std::size_t> targets;
};

inline bool is_unitary(const Matrix& u, double tol = kTol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() < tol;
}

namespace gates {

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m * M_SQRT1_2;
}
inline Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

/// cos(t) I + i sin(t) SWAP on two qubits.
inline Matrix partial_swap(double theta) {
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  return std::cos(theta) * Matrix::Identity(4, 4) + cplx(0, std::sin(theta)) * swap;
}

/// |j> -> |perm[j]>.
inline Matrix permutation(const std::vector<int>& perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  Matrix m = Matrix::Zero(d, d);
  std::vector<bool> seen(perm.size(), false);
  for (Eigen::Index j = 0; j < d; ++j) {
    const int p = perm[static_cast<std::size_t>(j)];
    if (p < 0 || p >= d || seen[static_cast<std::size_t>(p)]) throw InvalidGate("not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
    m(p, j) = 1;
  }
  return m;
}

/// Weyl shift |j> -> |j+a mod d>.
inline Matrix shift(int d, int a) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) perm[static_cast<std::size_t>(j)] = ((j + a) % d + d) % d;
  return permutation(perm);
}

/// Weyl clock |j> -> w^{bj}|j>, w = exp(2 pi i / d).
inline Matrix clock(int d, int b) {
  Matrix m = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) m(j, j) = std::polar(1.0, 2.0 * M_PI * ((b * j) % d) / d);
  return m;
}

/// |j> -> |c*j mod d>; c must be invertible mod d.
inline Matrix multiply(int d, int c) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) perm[static_cast<std::size_t>(j)] = ((c * j) % d + d) % d;
  return permutation(perm);
}

/// |u,v> -> |u, v + c*u mod d>.
inline Matrix add_multiple(int d, int c) {
  std::vector<int> perm(static_cast<std::size_t>(d * d));
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) perm[static_cast<std::size_t>(u * d + v)] = u * d + ((v + c * u) % d + d) % d;
  return permutation(perm);
}

inline Matrix fourier(int d) {
  Matrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(j, k) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * M_PI * ((j * k) % d) / d);
  return m;
}

inline GateSpec X(std::size_t t) { return {GateKind::X, "X", pauli_x(), {t}}; }
inline GateSpec Y(std::size_t t) { return {GateKind::Y, "Y", pauli_y(), {t}}; }
inline GateSpec Z(std::size_t t) { return {GateKind::Z, "Z", pauli_z(), {t}}; }
inline GateSpec H(std::size_t t) { return {GateKind::H, "H", hadamard(), {t}}; }
inline GateSpec CNOT(std::size_t control, std::size_t target) {
  return {GateKind::CNOT, "CNOT", cnot(), {control, target}};
}
inline GateSpec QutritPermutation(std::size_t t, const std::vector<int>& perm) {
  if (perm.size() != 3) throw InvalidGate("qutrit permutation needs 3 entries");
  return {GateKind::QutritPermutation, "QutritPermutation", permutation(perm), {t}};
}
inline GateSpec PartialSwap(std::size_t a, std::size_t b, double theta) {
  return {GateKind::PartialSwap, "PartialSwap", partial_swap(theta), {a, b}};
}
inline GateSpec Custom(const Matrix& m, std::vector<std::size_t> targets, std::string name = "Custom") {
  if (!is_unitary(m)) throw InvalidGate("matrix is not unitary: " + name);
  return {GateKind::Custom, std::move(name), m, std::move(targets)};
}

}  // namespace gates

namespace detail {

inline void check_targets(const Register& reg, const std::vector<std::size_t>& targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= reg.num_sites()) throw InvalidInput("gate target out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (targets[i] == targets[j]) throw InvalidInput("gate targets must be distinct");
  }
}

// Offsets (into the full index) of every joint value of the targets, in the
// order matching the gate matrix (first target most significant).
inline std::vector<std::size_t> target_offsets(const Register& reg, const std::vector<std::size_t>& targets) {
  std::vector<std::size_t> offs{0};
  for (std::size_t t : targets) {
    const std::size_t s = reg.stride(t);
    std::vector<std::size_t> next;
    next.reserve(offs.size() * static_cast<std::size_t>(reg.dim(t)));
    for (std::size_t o : offs)
      for (int v = 0; v < reg.dim(t); ++v) next.push_back(o + static_cast<std::size_t>(v) * s);
    offs = std::move(next);
  }
  return offs;
}

// Indices with every target digit equal to zero.
inline std::vector<std::size_t> base_indices(const Register& reg, const std::vector<std::size_t>& targets) {
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < reg.num_sites(); ++s)
    if (std::find(targets.begin(), targets.end(), s) == targets.end()) rest.push_back(s);
  return target_offsets(reg, rest);
}

}  // namespace detail

inline void apply_inplace(Register& reg, const GateSpec& gate) {
  detail::check_targets(reg, gate.targets);
  std::size_t d = 1;
  for (std::size_t t : gate.targets) d *= static_cast<std::size_t>(reg.dim(t));
  if (static_cast<std::size_t>(gate.matrix.rows()) != d || gate.matrix.cols() != gate.matrix.rows())
    throw InvalidGate("matrix shape does not match target dimensions for " + gate.name);
  if (!is_unitary(gate.matrix)) throw InvalidGate("matrix is not unitary: " + gate.name);

  const auto offs = detail::target_offsets(reg, gate.targets);
  const auto bases = detail::base_indices(reg, gate.targets);
  Vector in(static_cast<Eigen::Index>(d));
  Vector& a = reg.amps();
  for (std::size_t b : bases) {
    for (std::size_t j = 0; j < d; ++j) in[static_cast<Eigen::Index>(j)] = a[static_cast<Eigen::Index>(b + offs[j])];
    Vector out = gate.matrix * in;
    for (std::size_t j = 0; j < d; ++j) a[static_cast<Eigen::Index>(b + offs[j])] = out[static_cast<Eigen::Index>(j)];
  }
}

inline Register apply(Register reg, const GateSpec& gate) {
  apply_inplace(reg, gate);
  return reg;
}

// ---------------------------------------------------------------------------
// Measurement

enum class Basis { Computational, Diagonal };

struct Outcome {
  int value = 0;
  Basis basis = Basis::Computational;
};

inline std::vector<double> outcome_probabilities(const Register& reg, std::size_t site) {
  if (site >= reg.num_sites()) throw InvalidInput("site out of range");
  std::vector<double> p(static_cast<std::size_t>(reg.dim(site)), 0.0);
  const std::size_t s = reg.stride(site);
  const auto d = static_cast<std::size_t>(reg.dim(site));
  for (std::size_t i = 0; i < reg.size(); ++i) p[(i / s) % d] += std::norm(reg.amps()[static_cast<Eigen::Index>(i)]);
  return p;
}

/// Collapses the site onto `value` (kept in the register) and renormalizes.
inline void project_inplace(Register& reg, std::size_t site, int value) {
  const std::size_t s = reg.stride(site);
  const auto d = static_cast<std::size_t>(reg.dim(site));
  double total = 0;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    auto& a = reg.amps()[static_cast<Eigen::Index>(i)];
    if (static_cast<int>((i / s) % d) != value)
      a = 0;
    else
      total += std::norm(a);
  }
  if (total < 1e-14) throw InternalError("measurement branch has zero probability");
  reg.amps() /= std::sqrt(total);
}

inline std::pair<Outcome, Register> measure(Register reg, std::size_t site, Basis basis, Rng& rng) {
  if (site >= reg.num_sites()) throw InvalidInput("site out of range");
  if (basis == Basis::Diagonal) {
    if (reg.dim(site) != 2) throw InvalidInput("diagonal basis is defined only for qubits");
    apply_inplace(reg, gates::H(site));
  }
  const auto p = outcome_probabilities(reg, site);
  int value = 0;
  if (auto forced = rng.take_forced()) {
    value = *forced;
    if (value < 0 || value >= reg.dim(site)) throw InvalidInput("forced outcome out of range");
  } else {
    const double u = rng.uniform();
    double acc = 0;
    value = static_cast<int>(p.size()) - 1;
    for (std::size_t v = 0; v < p.size(); ++v) {
      acc += p[v];
      if (u < acc) {
        value = static_cast<int>(v);
        break;
      }
    }
    while (value > 0 && p[static_cast<std::size_t>(value)] < 1e-14) --value;
  }
  project_inplace(reg, site, value);
  if (basis == Basis::Diagonal) apply_inplace(reg, gates::H(site));
  return {Outcome{value, basis}, std::move(reg)};
}

// ---------------------------------------------------------------------------
// Comparison and subsystem helpers

inline double fidelity(const Register& a, const Register& b) {
  if (a.dims() != b.dims()) throw InvalidInput("fidelity of registers with different dims");
  return std::norm(a.amps().dot(b.amps()));
}

inline bool equal_up_to_global_phase(const Register& a, const Register& b, double tol = kTol) {
  if (a.dims() != b.dims()) return false;
  Eigen::Index k = 0;
  b.amps().cwiseAbs().maxCoeff(&k);
  const cplx bk = b.amps()[k];
  const cplx ak = a.amps()[k];
  if (std::abs(bk) < tol) return a.amps().norm() <= tol;
  if (std::abs(ak) < tol) return false;
  const cplx c = (ak / bk) / std::abs(ak / bk);
  return (a.amps() - c * b.amps()).norm() <= tol;
}

/// Reorders sites so that new site i is old site order[i].
inline Register permuted(const Register& reg, const std::vector<std::size_t>& order) {
  if (order.size() != reg.num_sites()) throw InvalidInput("permutation length mismatch");
  std::vector<int> dims;
  for (std::size_t o : order) {
    if (o >= reg.num_sites()) throw InvalidInput("permutation entry out of range");
    dims.push_back(reg.dim(o));
  }
  std::vector<std::size_t> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw InvalidInput("not a permutation of sites");
  Register out(dims, Vector::Zero(static_cast<Eigen::Index>(reg.size())));
  std::vector<std::size_t> old_strides(reg.num_sites());
  for (std::size_t i = 0; i < reg.num_sites(); ++i) old_strides[i] = reg.stride(order[i]);
  for (std::size_t n = 0; n < out.size(); ++n) {
    std::size_t rem = n, old = 0;
    for (std::size_t i = reg.num_sites(); i-- > 0;) {
      const auto d = static_cast<std::size_t>(dims[i]);
      old += (rem % d) * old_strides[i];
      rem /= d;
    }
    out.amps()[static_cast<Eigen::Index>(n)] = reg.amps()[static_cast<Eigen::Index>(old)];
  }
  return out;
}

/// Psi with rows indexed by `sites` (in the given order) and columns by the
/// remaining sites in register order.
inline Matrix split_matrix(const Register& reg, const std::vector<std::size_t>& sites) {
  std::vector<std::size_t> order(sites);
  for (std::size_t s = 0; s < reg.num_sites(); ++s)
    if (std::find(sites.begin(), sites.end(), s) == sites.end()) order.push_back(s);
  const Register p = permuted(reg, order);
  std::size_t rows = 1;
  for (std::size_t s : sites) rows *= static_cast<std::size_t>(reg.dim(s));
  const std::size_t cols = reg.size() / rows;
  Matrix psi(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p.amps()[static_cast<Eigen::Index>(r * cols + c)];
  return psi;
}

inline Matrix reduced_density(const Register& reg, const std::vector<std::size_t>& sites) {
  const Matrix psi = split_matrix(reg, sites);
  return psi * psi.adjoint();
}

/// <tau| rho_S |tau> for a pure target over `sites` (given order).
inline double subset_fidelity(const Register& reg, const std::vector<std::size_t>& sites, const Register& target) {
  const Matrix psi = split_matrix(reg, sites);
  if (static_cast<std::size_t>(psi.rows()) != target.size()) throw InvalidInput("target dimension mismatch");
  return (target.amps().adjoint() * psi).squaredNorm();
}

inline double purity(const Register& reg, const std::vector<std::size_t>& sites) {
  const Matrix psi = split_matrix(reg, sites);
  const Matrix rho = psi.rows() <= psi.cols() ? Matrix(psi * psi.adjoint()) : Matrix(psi.adjoint() * psi);
  return rho.squaredNorm();
}

/// Traces out `sites`, which must be in a product state with the rest.
inline Register discard_sites(const Register& reg, const std::vector<std::size_t>& sites) {
  if (sites.empty()) return reg;
  for (std::size_t s : sites)
    if (s >= reg.num_sites()) throw InvalidInput("discarded site out of range");
  const Matrix psi = split_matrix(reg, sites);
  const Matrix rho = psi.rows() <= psi.cols() ? Matrix(psi * psi.adjoint()) : Matrix(psi.adjoint() * psi);
  if (std::abs(rho.squaredNorm() - 1.0) > kTol) throw EntangledSite("discarded sites are entangled with the rest");
  Eigen::Index best = 0;
  psi.rowwise().squaredNorm().maxCoeff(&best);
  Vector chi = psi.row(best).transpose();
  // strip the phase carried by the discarded factor so results are canonical
  Eigen::Index k = 0;
  chi.cwiseAbs().maxCoeff(&k);
  chi *= std::conj(chi[k]) / std::abs(chi[k]);
  chi /= chi.norm();
  std::vector<int> dims;
  for (std::size_t s = 0; s < reg.num_sites(); ++s)
    if (std::find(sites.begin(), sites.end(), s) == sites.end()) dims.push_back(reg.dim(s));
  return Register(std::move(dims), std::move(chi));
}

inline Register discard_site(const Register& reg, std::size_t site) { return discard_sites(reg, {site}); }

}  // namespace entnet
