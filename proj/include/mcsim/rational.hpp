#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>

namespace mcsim {

inline std::size_t hash_mpz(const mpz_class& z) {
  // Residue mod a Mersenne prime plus the sign; cheap and stable.
  std::size_t r = mpz_fdiv_ui(z.get_mpz_t(), 0x1fffffffffffffffULL);
  return r * 2 + (mpz_sgn(z.get_mpz_t()) < 0 ? 1 : 0);
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

// Exact complex rational a + b*i. mpq_class keeps each part in lowest terms
// with a positive denominator; the explicit constructors canonicalize because
// the two-argument mpq_class constructor does not.
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long v) : re(v), im(0) {}  // implicit on purpose: GR(2), GR(-1)
  GaussianRational(long num, long den) : re(num, den), im(0) { re.canonicalize(); }
  explicit GaussianRational(const mpq_class& r) : re(r), im(0) {}
  GaussianRational(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

  static GaussianRational i_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }

  GaussianRational operator-() const { return GaussianRational(-re, -im); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (is_real() && o.is_real()) {  // dominant case in the pipelines
      re *= o.re;
      return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }

  // Exact division; throws on zero divisor via GMP's own division-by-zero trap,
  // so guard at call sites where zero is possible.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_real()) {
      return GaussianRational(a.re / b.re, a.im / b.re);
    }
    mpq_class n2 = b.re * b.re + b.im * b.im;
    GaussianRational num = a * b.conj();
    return GaussianRational(num.re / n2, num.im / n2);
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return {mpq_get_d(re.get_mpq_t()), mpq_get_d(im.get_mpq_t())};
  }

  std::size_t hash() const {
    std::size_t h = hash_mpz(mpz_class(re.get_num()));
    h = hash_combine(h, hash_mpz(mpz_class(re.get_den())));
    if (sgn(im) != 0) {
      h = hash_combine(h, hash_mpz(mpz_class(im.get_num())));
      h = hash_combine(h, hash_mpz(mpz_class(im.get_den())));
    }
    return h;
  }

  // Canonical text: "0", "3/2", "-1", "i", "-2/3*i", "(1-i)", "(1/2+3*i)".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string rs = re.get_str();
    if (is_real()) return rs;
    std::string imag;
    mpq_class ai = abs(im);
    if (ai == 1) {
      imag = "i";
    } else {
      imag = ai.get_str() + "*i";
    }
    if (sgn(re) == 0) {
      return (sgn(im) < 0 ? "-" : "") + imag;
    }
    return "(" + rs + (sgn(im) < 0 ? "-" : "+") + imag + ")";
  }
};

}  // namespace mcsim
