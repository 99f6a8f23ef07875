#include <complex>
#include <map>

#include "doctest.h"
#include "mcsim/polynomial.hpp"
#include "mcsim/rational_function.hpp"
#include "mcsim/scalar.hpp"
#include "mcsim/series.hpp"

using namespace mcsim;

namespace {

Polynomial pv(Var v) { return Polynomial::variable(v); }

// The splitter-crosstalk fidelity of a two-leaf cluster, used across the
// algebra tests because it exercises every layer: (1-alpha)^2 / (1+2alpha^2-2alpha).
RationalFunction crosstalk_pair_fidelity() {
  Polynomial a = pv(Var::alpha);
  Polynomial num = pow(Polynomial(1) - a, 2);
  Polynomial den = Polynomial(1) + 2 * a * a - 2 * a;
  return RationalFunction(num, den);
}

}  // namespace

TEST_CASE("exact complex rationals: arithmetic, canonicalization, division") {
  CHECK(GaussianRational(2, 4) == GaussianRational(1, 2));
  CHECK(GaussianRational(1, 2) + GaussianRational(1, 2) == GaussianRational(1));
  CHECK(GaussianRational::i_unit() * GaussianRational::i_unit() == GaussianRational(-1));

  GaussianRational one_minus_i(mpq_class(1), mpq_class(-1));
  GaussianRational one_plus_i(mpq_class(1), mpq_class(1));
  CHECK(one_minus_i * one_plus_i == GaussianRational(2));
  CHECK(one_minus_i.conj() == one_plus_i);

  // (3+4i)/(1+2i) = (3+4i)(1-2i)/5 = (11-2i)/5
  GaussianRational q = GaussianRational(mpq_class(3), mpq_class(4)) /
                       GaussianRational(mpq_class(1), mpq_class(2));
  CHECK(q == GaussianRational(mpq_class(11, 5), mpq_class(-2, 5)));

  CHECK(GaussianRational(1, 4).to_complex() == std::complex<double>(0.25, 0.0));
}

TEST_CASE("exact complex rationals: canonical text") {
  CHECK(GaussianRational(0).to_string() == "0");
  CHECK(GaussianRational(3, 2).to_string() == "3/2");
  CHECK(GaussianRational(-1).to_string() == "-1");
  CHECK(GaussianRational::i_unit().to_string() == "i");
  CHECK(GaussianRational(mpq_class(0), mpq_class(-2, 3)).to_string() == "-2/3*i");
  CHECK(GaussianRational(mpq_class(1), mpq_class(-1)).to_string() == "(1-i)");
  CHECK(GaussianRational(mpq_class(1, 2), mpq_class(3)).to_string() == "(1/2+3*i)");
}

TEST_CASE("monomial order is graded, constant first, and printing is stable") {
  Mono one = Mono::one();
  Mono a1 = Mono::unit(Var::alpha);
  Mono a2 = Mono::unit(Var::alpha, 2);
  Mono p1 = Mono::unit(Var::p);
  CHECK(mono_less(one, a1));
  CHECK(mono_less(a1, a2));
  CHECK(mono_less(p1, a2));
  // Same degree: later-declared variables sort first (smaller exponent tuple).
  CHECK(mono_less(p1, a1));
  CHECK(mono_less(Mono::unit(Var::q), Mono::unit(Var::p)));
  CHECK(mono_less(a1 * p1, a2));

  CHECK((Mono::unit(Var::px, 2) * a1).to_string() == "p_x^2*alpha");
  CHECK(one.to_string() == "1");
}

TEST_CASE("polynomials: expansion, powers, printing") {
  Polynomial a = pv(Var::alpha);
  Polynomial sq = (Polynomial(1) - a) * (Polynomial(1) - a);
  CHECK(sq == Polynomial(1) - 2 * a + a * a);
  CHECK(sq.to_string() == "1 - 2*alpha + alpha^2");
  CHECK(pow(Polynomial(1) + a, 3).to_string() == "1 + 3*alpha + 3*alpha^2 + alpha^3");
  CHECK(Polynomial::zero().to_string() == "0");
  CHECK((pv(Var::q) * GaussianRational(-1) - pv(Var::pz)).to_string() == "-q - p_z");
}

TEST_CASE("polynomials: ring identities with complex coefficients") {
  Polynomial f = Polynomial(1) + pv(Var::px);
  Polynomial g = pv(Var::py) - Polynomial(2);
  Polynomial h = pv(Var::alpha) * GaussianRational::i_unit() + pv(Var::q);
  CHECK(f * (g + h) == f * g + f * h);
  CHECK((f * g) * h == f * (g * h));
  CHECK(f * g == g * f);
  CHECK(h.conj() == pv(Var::alpha) * (-GaussianRational::i_unit()) + pv(Var::q));
  CHECK((f - f).is_zero());
}

TEST_CASE("polynomial substitution rewrites the equiprobable parameter") {
  // 1 - 2p - p_z with p = (q+1)/2 becomes -q - p_z.
  Polynomial f = Polynomial(1) - 2 * pv(Var::p) - pv(Var::pz);
  Polynomial half_q_plus_1 = (pv(Var::q) + Polynomial(1)) * GaussianRational(1, 2);
  Polynomial g = f.substitute({{Var::p, half_q_plus_1}});
  CHECK(g == pv(Var::q) * GaussianRational(-1) - pv(Var::pz));
  CHECK(g.to_string() == "-q - p_z");
}

TEST_CASE("polynomial evaluation is exact and rejects missing variables") {
  Polynomial f = Polynomial(1) - 2 * pv(Var::p) - pv(Var::pz);
  GaussianRational v = f.eval({{Var::p, GaussianRational(1, 10)}, {Var::pz, GaussianRational(1, 100)}});
  CHECK(v == GaussianRational(79, 100));
  CHECK_THROWS_AS(f.eval({{Var::p, GaussianRational(1, 10)}}), DomainError);
}

TEST_CASE("rational functions: evaluation and cross-multiplied equality") {
  RationalFunction f2 = crosstalk_pair_fidelity();
  CHECK(f2.eval({{Var::alpha, GaussianRational(1, 2)}}) == GaussianRational(1, 2));
  CHECK(f2.eval({{Var::alpha, GaussianRational(1, 100)}}) == GaussianRational(9801, 9802));
  CHECK(f2.eval({{Var::alpha, GaussianRational(0)}}) == GaussianRational(1));

  Polynomial a = pv(Var::alpha);
  RationalFunction lhs(Polynomial(1) - a * a, Polynomial(1) + a);
  RationalFunction rhs = RationalFunction::from_polynomial(Polynomial(1) - a);
  CHECK(lhs == rhs);

  RationalFunction sum = RationalFunction(Polynomial(1), Polynomial(1) - a) +
                         RationalFunction(Polynomial(1), Polynomial(1) + a);
  CHECK(sum == RationalFunction(Polynomial(2), Polynomial(1) - a * a));
}

TEST_CASE("rational functions: domain errors and constant-denominator collapse") {
  Polynomial a = pv(Var::alpha);
  CHECK_THROWS_AS(RationalFunction(Polynomial(1), Polynomial::zero()), DomainError);
  RationalFunction f(Polynomial(1), Polynomial(1) - a);
  CHECK_THROWS_AS(f.eval({{Var::alpha, GaussianRational(1)}}), DomainError);

  RationalFunction g(Polynomial(2) - 2 * a, Polynomial(2));
  CHECK(g.is_polynomial());
  CHECK(g.as_polynomial() == Polynomial(1) - a);
}

TEST_CASE("series expansion of a geometric denominator") {
  Polynomial a = pv(Var::alpha);
  RationalFunction f(Polynomial(1), Polynomial(1) - a);
  TruncatedSeries s = series_expand(f, caps_for({{Var::alpha, 2}}));
  CHECK(s.to_string() == "1 + alpha + alpha^2");
  CHECK(s.coeff(Mono::unit(Var::alpha, 2)) == GaussianRational(1));
  CHECK(s.coeff(Mono::unit(Var::alpha, 3)) == GaussianRational(0));
}

TEST_CASE("series expansion of the crosstalk pair fidelity starts at second order") {
  TruncatedSeries s = series_expand(crosstalk_pair_fidelity(), caps_for({{Var::alpha, 2}}));
  CHECK(s.to_string() == "1 - alpha^2");
}

TEST_CASE("series multiplication agrees with polynomial multiplication after truncation") {
  Polynomial a = pv(Var::alpha);
  Polynomial f = pow(Polynomial(1) - a, 2);
  Polynomial g = Polynomial(1) + 2 * a + 3 * a * a;
  SeriesCaps caps = caps_for({{Var::alpha, 2}});
  TruncatedSeries lhs = TruncatedSeries::from_terms((f * g).terms(), caps);
  TruncatedSeries rhs =
      TruncatedSeries::from_terms(f.terms(), caps) * TruncatedSeries::from_terms(g.terms(), caps);
  CHECK(lhs == rhs);
}

TEST_CASE("series caps unify to the tighter truncation") {
  Polynomial a = pv(Var::alpha);
  TruncatedSeries s2 = TruncatedSeries::from_terms((Polynomial(1) + a).terms(), caps_for({{Var::alpha, 2}}));
  TruncatedSeries s1 = TruncatedSeries::from_terms((Polynomial(1) + a).terms(), caps_for({{Var::alpha, 1}}));
  TruncatedSeries prod = s2 * s1;
  CHECK(prod.caps()[static_cast<int>(Var::alpha)] == 1);
  CHECK(prod.to_string() == "1 + 2*alpha");
}

TEST_CASE("series inversion round-trips and rejects bad inputs") {
  Polynomial a = pv(Var::alpha);
  Polynomial den = Polynomial(1) + 2 * a * a - 2 * a;
  TruncatedSeries s = TruncatedSeries::from_terms(den.terms(), caps_for({{Var::alpha, 4}}));
  CHECK(s * s.inverse() == TruncatedSeries::one());

  TruncatedSeries no_constant = TruncatedSeries::variable(Var::alpha, caps_for({{Var::alpha, 2}}));
  CHECK_THROWS_AS(no_constant.inverse(), DomainError);

  TruncatedSeries uncapped_series = TruncatedSeries::from_terms((Polynomial(1) + a).terms(), uncapped());
  CHECK_THROWS_AS(uncapped_series.inverse(), DomainError);

  // Constants invert without caps.
  CHECK(TruncatedSeries::constant(GaussianRational(2)).inverse() ==
        TruncatedSeries::constant(GaussianRational(1, 2)));
}

TEST_CASE("two-variable series expansion") {
  Polynomial a = pv(Var::alpha);
  Polynomial p = pv(Var::p);
  RationalFunction f(Polynomial(1), (Polynomial(1) - p) * (Polynomial(1) - a));
  TruncatedSeries s = series_expand(f, caps_for({{Var::alpha, 2}, {Var::p, 1}}));
  Polynomial expect = (Polynomial(1) + p) * (Polynomial(1) + a + a * a);
  CHECK(s == TruncatedSeries::from_terms(expect.terms(), s.caps()));
  CHECK(s.coeff(Mono::unit(Var::alpha) * Mono::unit(Var::p)) == GaussianRational(1));
  CHECK(s.coeff(Mono::unit(Var::p, 2) * Mono::unit(Var::alpha)).is_zero());
}

TEST_CASE("series and rational function agree numerically near the origin") {
  RationalFunction f2 = crosstalk_pair_fidelity();
  TruncatedSeries s = series_expand(f2, caps_for({{Var::alpha, 2}}));
  for (int k = 0; k < 200; ++k) {
    double x = 5e-7 * k;  // up to ~1e-4, where the cubic truncation error is < 1e-11
    std::map<Var, std::complex<double>> at{{Var::alpha, {x, 0.0}}};
    double rf = f2.eval(at).real();
    double se = s.eval(at).real();
    CHECK(std::abs(rf - se) <= 1e-9);
  }
}

TEST_CASE("equal values hash equally across representations") {
  Polynomial a = pv(Var::alpha);
  Polynomial f = (Polynomial(1) - a) * (Polynomial(1) + a);
  Polynomial g = Polynomial(1) - a * a;
  CHECK(f == g);
  CHECK(f.hash() == g.hash());
  CHECK(GaussianRational(2, 4).hash() == GaussianRational(1, 2).hash());
}

TEST_CASE("scalar traits expose a uniform interface over all four scalar types") {
  CHECK(ScalarOps<GaussianRational>::from_rational(GaussianRational(1, 2)) == GaussianRational(1, 2));
  CHECK(ScalarOps<Polynomial>::from_rational(GaussianRational(1, 2)) ==
        Polynomial::constant(GaussianRational(1, 2)));
  CHECK(ScalarOps<TruncatedSeries>::from_rational(GaussianRational(1, 2)) ==
        TruncatedSeries::constant(GaussianRational(1, 2)));
  CHECK(ScalarOps<std::complex<double>>::from_rational(GaussianRational(1, 2)) ==
        std::complex<double>(0.5, 0.0));

  CHECK(RatioTraits<GaussianRational>::divide(GaussianRational(2), GaussianRational(4)) ==
        GaussianRational(1, 2));
  Polynomial a = pv(Var::alpha);
  RationalFunction r = RatioTraits<Polynomial>::divide(Polynomial(1) - a * a, Polynomial(1) + a);
  CHECK(r == RationalFunction::from_polynomial(Polynomial(1) - a));
  CHECK(RatioTraits<std::complex<double>>::divide({1.0, 0.0}, {4.0, 0.0}) == doctest::Approx(0.25));

  TruncatedSeries num = TruncatedSeries::from_terms(Polynomial(1).terms(), caps_for({{Var::alpha, 2}}));
  TruncatedSeries den = TruncatedSeries::from_terms((Polynomial(1) - a).terms(), caps_for({{Var::alpha, 2}}));
  CHECK(RatioTraits<TruncatedSeries>::divide(num, den).to_string() == "1 + alpha + alpha^2");
}
