#pragma once

#include <complex>
#include <map>
#include <string>

#include "mcsim/polynomial.hpp"

namespace mcsim {

// Ratio of polynomials kept unreduced: there is no multivariate gcd here, so
// equality is decided by cross-multiplication. The denominator is never the
// zero polynomial.
class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial::zero()), den_(Polynomial::one()) {}
  RationalFunction(Polynomial num, Polynomial den);
  RationalFunction(long v) : num_(Polynomial(v)), den_(Polynomial::one()) {}  // implicit

  static RationalFunction from_polynomial(Polynomial p) {
    return RationalFunction(std::move(p), Polynomial::one());
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_polynomial() const { return den_.is_constant(); }
  // Requires a constant denominator; divides it out.
  Polynomial as_polynomial() const;

  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;

  // Cross-multiplied equality: a/b == c/d iff a*d == c*b.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  GaussianRational eval(const std::map<Var, GaussianRational>& at) const;
  std::complex<double> eval(const std::map<Var, std::complex<double>>& at) const;

  std::string to_string() const;

 private:
  Polynomial num_, den_;
};

RationalFunction pow(const RationalFunction& base, unsigned n);

}  // namespace mcsim
