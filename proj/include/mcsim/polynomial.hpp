#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mcsim/rational.hpp"
#include "mcsim/variable.hpp"

namespace mcsim {

// Multivariate polynomial over Gaussian rationals, stored as a term list that
// is always sorted by mono_less and free of zero coefficients. Equality,
// hashing and printing therefore work directly on the representation.
class Polynomial {
 public:
  using Term = std::pair<Mono, GaussianRational>;

  Polynomial() = default;
  Polynomial(long v) { *this = constant(GaussianRational(v)); }          // implicit for literals
  Polynomial(const GaussianRational& c) { *this = constant(c); }         // implicit for constants

  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return constant(GaussianRational(1)); }
  static Polynomial constant(const GaussianRational& c);
  static Polynomial variable(Var v);
  // Terms may arrive in any order and with duplicates; they get normalized.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  GaussianRational constant_value() const;  // requires is_constant()
  GaussianRational coeff(const Mono& m) const;
  unsigned total_degree() const;  // 0 for the zero polynomial

  Polynomial conj() const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  // Simultaneous substitution; variables absent from the map stay themselves.
  Polynomial substitute(const std::map<Var, Polynomial>& sub) const;

  // Every variable occurring in the polynomial must be present in the map.
  GaussianRational eval(const std::map<Var, GaussianRational>& at) const;
  std::complex<double> eval(const std::map<Var, std::complex<double>>& at) const;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  void normalize();  // sort, combine, drop zeros

  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& base, unsigned n);

}  // namespace mcsim
