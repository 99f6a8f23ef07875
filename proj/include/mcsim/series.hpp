#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcsim/polynomial.hpp"
#include "mcsim/rational_function.hpp"

namespace mcsim {

// Per-variable truncation caps. kUncapped marks a slot that has not been
// constrained yet: constants are born uncapped and adopt the caps of whatever
// they combine with, which lets generic code build zeros and ones without
// knowing the ambient truncation order.
using SeriesCaps = std::array<std::uint32_t, kNumVars>;
inline constexpr std::uint32_t kUncapped = 0xffffffffu;

inline SeriesCaps uncapped() {
  SeriesCaps c;
  c.fill(kUncapped);
  return c;
}

inline SeriesCaps caps_for(std::initializer_list<std::pair<Var, std::uint32_t>> lst) {
  SeriesCaps c{};  // all zero: only listed variables may appear
  for (auto [v, k] : lst) c[static_cast<int>(v)] = k;
  return c;
}

// Multivariate power series truncated to per-variable degree caps. Closed
// under ring operations: the coefficient of any in-cap monomial of a product
// only involves in-cap monomials of the factors.
class TruncatedSeries {
 public:
  using Term = std::pair<Mono, GaussianRational>;

  TruncatedSeries() : caps_(uncapped()) {}
  TruncatedSeries(long v) : caps_(uncapped()) {  // implicit for literals
    if (v != 0) terms_.push_back({Mono::one(), GaussianRational(v)});
  }

  static TruncatedSeries zero() { return TruncatedSeries(); }
  static TruncatedSeries one() { return TruncatedSeries(1); }
  static TruncatedSeries constant(const GaussianRational& c);
  static TruncatedSeries variable(Var v, const SeriesCaps& caps);
  static TruncatedSeries from_terms(std::vector<Term> terms, const SeriesCaps& caps);

  const SeriesCaps& caps() const { return caps_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  GaussianRational coeff(const Mono& m) const;

  TruncatedSeries conj() const;
  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.terms_ == b.terms_;  // caps are context, not value
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  // Multiplicative inverse up to the caps. Requires a nonzero constant term,
  // and finite caps unless the series is constant.
  TruncatedSeries inverse() const;
  TruncatedSeries operator/(const TruncatedSeries& o) const { return *this * o.inverse(); }

  std::complex<double> eval(const std::map<Var, std::complex<double>>& at) const;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  static SeriesCaps unify(const SeriesCaps& a, const SeriesCaps& b);
  bool in_caps(const Mono& m) const;
  void truncate();  // drop terms that exceed caps_

  SeriesCaps caps_;
  std::vector<Term> terms_;  // sorted by mono_less, no zeros, within caps
};

// Taylor expansion of num/den about the origin, truncated to caps. The
// denominator must have a nonzero constant term.
TruncatedSeries series_expand(const RationalFunction& f, const SeriesCaps& caps);

}  // namespace mcsim
