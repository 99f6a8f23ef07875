#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mcsim/errors.hpp"
#include "mcsim/rational.hpp"

namespace mcsim {

// The fixed parameter set of the whole simulator. p_x/p_y/p_z are the Pauli
// channel probabilities, alpha the splitter crosstalk, p the equiprobable
// channel parameter and q = 2p - 1 its signed form used by the coefficient
// tables.
enum class Var : std::uint8_t { px = 0, py = 1, pz = 2, alpha = 3, p = 4, q = 5 };

inline constexpr int kNumVars = 6;

inline const char* var_name(Var v) {
  static constexpr const char* names[kNumVars] = {"p_x", "p_y", "p_z", "alpha", "p", "q"};
  return names[static_cast<int>(v)];
}

inline std::optional<Var> var_from_name(std::string_view s) {
  for (int i = 0; i < kNumVars; ++i) {
    if (s == var_name(static_cast<Var>(i))) return static_cast<Var>(i);
  }
  return std::nullopt;
}

// Exponent vector of a monomial over the fixed variable set.
struct Mono {
  std::array<std::uint16_t, kNumVars> e{};

  static Mono one() { return Mono{}; }

  static Mono unit(Var v, std::uint16_t k = 1) {
    Mono m;
    m.e[static_cast<int>(v)] = k;
    return m;
  }

  unsigned total() const {
    unsigned t = 0;
    for (auto x : e) t += x;
    return t;
  }

  bool is_one() const { return total() == 0; }

  std::uint16_t operator[](Var v) const { return e[static_cast<int>(v)]; }

  friend Mono operator*(Mono a, const Mono& b) {
    for (int i = 0; i < kNumVars; ++i) {
      unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
      if (s > 0xffffu) throw DomainError("monomial exponent overflow");
      a.e[i] = static_cast<std::uint16_t>(s);
    }
    return a;
  }

  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  friend bool operator!=(const Mono& a, const Mono& b) { return !(a.e == b.e); }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : e) h = hash_combine(h, x);
    return h;
  }

  // "p_x^2*alpha" style; the empty product renders as "1".
  std::string to_string() const {
    std::string s;
    for (int i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += var_name(static_cast<Var>(i));
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
  }
};

// Graded order: total degree first, ties broken lexicographically on the
// exponent tuple in declaration order (p_x, p_y, p_z, alpha, p, q), both
// ascending. This is the storage, printing and hashing order everywhere.
inline bool mono_less(const Mono& a, const Mono& b) {
  unsigned ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  return a.e < b.e;
}

}  // namespace mcsim
