#pragma once

#include <complex>
#include <cstdio>
#include <string>

#include "mcsim/polynomial.hpp"
#include "mcsim/rational_function.hpp"
#include "mcsim/series.hpp"

namespace mcsim {

// Uniform scalar interface for the state backends. A scalar type needs ring
// operations (provided by the types themselves), plus the hooks below for
// injecting exact constants, conjugation, pruning, and branch coalescing.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<GaussianRational> {
  static GaussianRational zero() { return GaussianRational(0); }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational from_rational(const GaussianRational& c) { return c; }
  static GaussianRational conj(const GaussianRational& a) { return a.conj(); }
  static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
  static std::size_t hash(const GaussianRational& a) { return a.hash(); }
  static std::string to_string(const GaussianRational& a) { return a.to_string(); }
};

template <>
struct ScalarOps<Polynomial> {
  static Polynomial zero() { return Polynomial::zero(); }
  static Polynomial one() { return Polynomial::one(); }
  static Polynomial from_rational(const GaussianRational& c) { return Polynomial::constant(c); }
  static Polynomial conj(const Polynomial& a) { return a.conj(); }
  static bool is_zero(const Polynomial& a) { return a.is_zero(); }
  static std::size_t hash(const Polynomial& a) { return a.hash(); }
  static std::string to_string(const Polynomial& a) { return a.to_string(); }
};

template <>
struct ScalarOps<TruncatedSeries> {
  static TruncatedSeries zero() { return TruncatedSeries::zero(); }
  static TruncatedSeries one() { return TruncatedSeries::one(); }
  static TruncatedSeries from_rational(const GaussianRational& c) { return TruncatedSeries::constant(c); }
  static TruncatedSeries conj(const TruncatedSeries& a) { return a.conj(); }
  static bool is_zero(const TruncatedSeries& a) { return a.is_zero(); }
  static std::size_t hash(const TruncatedSeries& a) { return a.hash(); }
  static std::string to_string(const TruncatedSeries& a) { return a.to_string(); }
};

template <>
struct ScalarOps<std::complex<double>> {
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static std::complex<double> from_rational(const GaussianRational& c) { return c.to_complex(); }
  static std::complex<double> conj(const std::complex<double>& a) { return std::conj(a); }
  static bool is_zero(const std::complex<double>& a) { return a.real() == 0.0 && a.imag() == 0.0; }
  static std::size_t hash(const std::complex<double>& a) {
    return hash_combine(std::hash<double>{}(a.real()), std::hash<double>{}(a.imag()));
  }
  static std::string to_string(const std::complex<double>& a) {
    char buf[64];
    if (a.imag() == 0.0) {
      std::snprintf(buf, sizeof(buf), "%.12g", a.real());
      return buf;
    }
    std::snprintf(buf, sizeof(buf), "(%.12g%+.12gi)", a.real(), a.imag());
    return buf;
  }
};

// Result type of a fidelity (an overlap divided by a normalization), per
// amplitude scalar. Polynomial data stays exact as a ratio of polynomials;
// series divide through; floating point collapses to the real part.
template <class S>
struct RatioTraits;

template <>
struct RatioTraits<GaussianRational> {
  using type = GaussianRational;
  static type divide(const GaussianRational& num, const GaussianRational& den) { return num / den; }
};

template <>
struct RatioTraits<Polynomial> {
  using type = RationalFunction;
  static type divide(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }
};

template <>
struct RatioTraits<TruncatedSeries> {
  using type = TruncatedSeries;
  static type divide(const TruncatedSeries& num, const TruncatedSeries& den) { return num * den.inverse(); }
};

template <>
struct RatioTraits<std::complex<double>> {
  using type = double;
  static type divide(const std::complex<double>& num, const std::complex<double>& den) {
    return (num / den).real();
  }
};

}  // namespace mcsim
