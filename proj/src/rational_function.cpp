#include "mcsim/rational_function.hpp"

#include "mcsim/errors.hpp"

namespace mcsim {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
}

Polynomial RationalFunction::as_polynomial() const {
  if (!den_.is_constant()) {
    throw DomainError("denominator is not constant: " + den_.to_string());
  }
  GaussianRational inv = GaussianRational(1) / den_.constant_value();
  return num_ * Polynomial::constant(inv);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

GaussianRational RationalFunction::eval(const std::map<Var, GaussianRational>& at) const {
  GaussianRational d = den_.eval(at);
  if (d.is_zero()) throw DomainError("evaluation hit a denominator zero");
  return num_.eval(at) / d;
}

std::complex<double> RationalFunction::eval(const std::map<Var, std::complex<double>>& at) const {
  std::complex<double> d = den_.eval(at);
  if (d == std::complex<double>(0.0, 0.0)) {
    throw DomainError("evaluation hit a denominator zero");
  }
  return num_.eval(at) / d;
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return as_polynomial().to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RationalFunction pow(const RationalFunction& base, unsigned n) {
  RationalFunction r = RationalFunction::from_polynomial(Polynomial::one());
  RationalFunction b = base;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

}  // namespace mcsim
