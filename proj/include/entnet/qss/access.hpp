#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entnet/error.hpp"

namespace entnet::qss {

using PlayerSet = std::uint32_t;  // bit i = player i

inline constexpr int kMaxPlayers = 20;

inline int set_size(PlayerSet s) { return std::popcount(s); }

inline std::vector<int> members(PlayerSet s) {
  std::vector<int> out;
  for (int i = 0; s >> i; ++i)
    if (s >> i & 1u) out.push_back(i);
  return out;
}

inline PlayerSet set_of(const std::vector<int>& players) {
  PlayerSet s = 0;
  for (int p : players) {
    if (p < 0 || p >= kMaxPlayers) throw InvalidInput("player index out of range");
    s |= PlayerSet{1} << p;
  }
  return s;
}

/// Minimal authorized sets over n named players. Players A, B, C, ... by default.
class AccessStructure {
 public:
  AccessStructure(int n, std::vector<PlayerSet> minimal, std::vector<std::string> names = {})
      : n_(n), sets_(std::move(minimal)), names_(std::move(names)) {
    if (n < 1 || n > kMaxPlayers) throw InvalidInput("player count must be in 1.." + std::to_string(kMaxPlayers));
    if (names_.empty())
      for (int i = 0; i < n; ++i) names_.push_back(default_name(i));
    if (static_cast<int>(names_.size()) != n) throw InvalidInput("need one name per player");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw InvalidInput("duplicate player name " + names_[i]);
    if (sets_.empty()) throw InvalidInput("access structure needs at least one authorized set");
    const PlayerSet all = n == 32 ? ~PlayerSet{0} : (PlayerSet{1} << n) - 1;
    for (auto s : sets_) {
      if (s == 0) throw InvalidInput("authorized sets must be nonempty");
      if (s & ~all) throw InvalidInput("authorized set names an unknown player");
    }
    std::sort(sets_.begin(), sets_.end(), [](PlayerSet a, PlayerSet b) {
      return set_size(a) != set_size(b) ? set_size(a) < set_size(b) : members(a) < members(b);
    });
    for (std::size_t i = 0; i < sets_.size(); ++i)
      for (std::size_t j = 0; j < sets_.size(); ++j)
        if (i != j && (sets_[i] & sets_[j]) == sets_[i])
          throw InvalidInput("authorized sets must form an antichain");
  }

  /// Sets written as strings of single-letter player names, e.g. {"ABC","DE"}.
  static AccessStructure from_letters(const std::vector<std::string>& sets, int n = 0) {
    int hi = 0;
    std::vector<PlayerSet> out;
    for (const auto& s : sets) {
      PlayerSet m = 0;
      for (char c : s) {
        if (c < 'A' || c > 'Z') throw InvalidInput("player letters must be A-Z");
        const int p = c - 'A';
        if (m >> p & 1u) throw InvalidInput("repeated player in a set");
        m |= PlayerSet{1} << p;
        hi = std::max(hi, p + 1);
      }
      out.push_back(m);
    }
    return AccessStructure(std::max(n, hi), out);
  }

  /// All k-subsets of n players.
  static AccessStructure threshold(int k, int n) {
    if (k < 1 || k > n || n > kMaxPlayers) throw InvalidInput("need 1 <= k <= n <= " + std::to_string(kMaxPlayers));
    std::vector<PlayerSet> sets;
    for (PlayerSet s = 0; s < (PlayerSet{1} << n); ++s)
      if (set_size(s) == k) sets.push_back(s);
    return AccessStructure(n, sets);
  }

  int n() const { return n_; }
  const std::vector<PlayerSet>& sets() const { return sets_; }
  const std::vector<std::string>& names() const { return names_; }

  bool authorized(PlayerSet coalition) const {
    for (auto s : sets_)
      if ((coalition & s) == s) return true;
    return false;
  }

  std::string name_of(PlayerSet s) const {
    std::string out;
    for (int p : members(s)) out += names_[static_cast<std::size_t>(p)];
    return out;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < sets_.size(); ++i) out += (i ? ", " : "") + name_of(sets_[i]);
    return out + "}";
  }

  bool operator==(const AccessStructure& o) const { return n_ == o.n_ && sets_ == o.sets_; }

  static std::string default_name(int i) {
    return i < 26 ? std::string(1, static_cast<char>('A' + i)) : "P" + std::to_string(i);
  }

 private:
  int n_;
  std::vector<PlayerSet> sets_;
  std::vector<std::string> names_;
};

/// Minimal authorized sets of the monotone function `authorized` over n players.
template <class F>
AccessStructure induced_access(int n, F authorized, std::vector<std::string> names = {}) {
  if (n < 1 || n > kMaxPlayers) throw LimitExceeded("too many players to enumerate");
  std::vector<PlayerSet> minimal;
  for (PlayerSet s = 0; s < (PlayerSet{1} << n); ++s) {
    if (!authorized(s)) continue;
    bool min = true;
    for (int p : members(s))
      if (authorized(s & ~(PlayerSet{1} << p))) {
        min = false;
        break;
      }
    if (min) minimal.push_back(s);
  }
  if (minimal.empty()) throw InvalidInput("no coalition is authorized");
  return AccessStructure(n, minimal, std::move(names));
}

/// Conventional schemes need every two authorized sets to overlap.
inline bool violates_no_cloning(const AccessStructure& a) {
  for (std::size_t i = 0; i < a.sets().size(); ++i)
    for (std::size_t j = i + 1; j < a.sets().size(); ++j)
      if ((a.sets()[i] & a.sets()[j]) == 0) return true;
  return false;
}

struct HittingSet {
  int size = 0;
  std::vector<int> players;
};

/// Smallest set meeting every authorized set; among those, the
/// lexicographically first sorted player list.
inline HittingSet min_q_players(const AccessStructure& a) {
  const int n = a.n();
  std::vector<int> pick;
  auto hits = [&](const std::vector<int>& c) {
    const PlayerSet s = set_of(c);
    for (auto alpha : a.sets())
      if ((alpha & s) == 0) return false;
    return true;
  };
  for (int size = 1; size <= n; ++size) {
    // combinations in lexicographic order
    std::vector<int> c(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) c[static_cast<std::size_t>(i)] = i;
    while (true) {
      if (hits(c)) return {size, c};
      int i = size - 1;
      while (i >= 0 && c[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw InternalError("no hitting set found");
}

}  // namespace entnet::qss
