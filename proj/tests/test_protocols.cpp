#include <complex>

#include "doctest.h"
#include "mcsim/branch_state.hpp"
#include "mcsim/dense_state.hpp"
#include "mcsim/protocols.hpp"
#include "mcsim/series.hpp"

using namespace mcsim;

namespace {

const ByproductTable& table() {
  static const ByproductTable t = calibrate_byproducts();
  return t;
}

// alpha = 0, p_x = p_y = p, p_z free: the regime of the star coefficient rows.
NoiseModel<Polynomial> pauli_pz_noise() {
  NoiseModel<Polynomial> n;
  n.px = Polynomial::variable(Var::p);
  n.py = Polynomial::variable(Var::p);
  n.pz = Polynomial::variable(Var::pz);
  return n;
}

Polynomial star_fidelity_in_q(int leaves) {
  auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(leaves, pauli_pz_noise(), Placement{},
                                                             table());
  // express in (q, p_z) via p -> (q + 1)/2
  return f.as_polynomial().substitute(
      {{Var::p, Polynomial::from_terms({{Mono::unit(Var::q), GaussianRational(1, 2)},
                                        {Mono::one(), GaussianRational(1, 2)}})}});
}

Polynomial closed_form_in_p(int leaves) {
  return closed_form_table1(leaves).substitute(
      {{Var::q, 2 * Polynomial::variable(Var::p) - Polynomial::one()}});
}

TruncatedSeries series_of(const RationalFunction& f, const SeriesCaps& caps) {
  return series_expand(RationalFunction(f.num(), f.den()), caps);
}

}  // namespace

TEST_CASE("star coefficient rows: simulation equals the closed form") {
  for (int n = 1; n <= 5; ++n) {
    auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(n, pauli_pz_noise(), Placement{},
                                                               table());
    CHECK(f == RationalFunction::from_polynomial(closed_form_in_p(n)));
  }
}

TEST_CASE("star coefficient rows: frozen renderings in the signed variable") {
  CHECK(star_fidelity_in_q(1).to_string() == "1");
  CHECK(star_fidelity_in_q(2).to_string() == "-q - p_z");
  CHECK(star_fidelity_in_q(3).to_string() == "q^2 + 2*p_z*q + 2*p_z^2");
  CHECK(star_fidelity_in_q(4).to_string() == "-q^3 - 3*p_z*q^2 - 6*p_z^2*q - 4*p_z^3");
}

TEST_CASE("six-leaf star: the q*pz^4 coefficient is -40, not +40") {
  const Polynomial sim = star_fidelity_in_q(6);
  CHECK(sim == closed_form_table1(6));
  const Mono m = Mono::unit(Var::q) * Mono::unit(Var::pz, 4);
  CHECK(sim.coeff(m) == GaussianRational(-40));
}

TEST_CASE("coefficient grid matches the frozen five-by-five block") {
  const long expected[5][5] = {{1, 1, 2, 4, 8},
                               {1, 2, 6, 16, 40},
                               {1, 3, 12, 40, 120},
                               {1, 4, 20, 80, 280},
                               {1, 5, 30, 140, 560}};
  const auto grid = binomial_transform_table(5, 5);
  REQUIRE(grid.size() == 5);
  for (int r = 0; r < 5; ++r) {
    REQUIRE(grid[r].size() == 5);
    for (int c = 0; c < 5; ++c) CHECK(grid[r][c] == expected[r][c]);
  }
}

TEST_CASE("grid antidiagonals carry the star row magnitudes") {
  const auto grid = binomial_transform_table(6, 6);
  for (int n = 2; n <= 6; ++n) {
    const Polynomial row = closed_form_table1(n);
    for (int k = 0; k < n; ++k) {
      const Mono m = Mono::unit(Var::q, static_cast<std::uint16_t>(n - 1 - k)) *
                     Mono::unit(Var::pz, static_cast<std::uint16_t>(k));
      GaussianRational c = row.coeff(m);
      if (n % 2 == 0) c = -c;  // strip the alternating sign
      CHECK(c == GaussianRational(mpq_class(grid[static_cast<std::size_t>(n - k - 1)]
                                                [static_cast<std::size_t>(k)]),
                                  mpq_class(0)));
    }
  }
}

TEST_CASE("crosstalk-only construction: per-fusion factorization") {
  NoiseModel<Polynomial> noise;
  noise.alpha = Polynomial::variable(Var::alpha);
  for (int n = 2; n <= 5; ++n) {
    auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(n, noise, Placement{}, table());
    CHECK(f == reference_eq3(n));
  }
  CHECK(reference_eq2().num().to_string() == "1 - 2*alpha + alpha^2");
  CHECK(reference_eq2().den().to_string() == "1 - 2*alpha + 2*alpha^2");
}

TEST_CASE("equiprobable construction: first order loses 3(n-1)p") {
  NoiseModel<Polynomial> noise;
  noise.px = Polynomial::variable(Var::p);
  noise.py = Polynomial::variable(Var::p);
  noise.pz = Polynomial::variable(Var::p);
  const SeriesCaps caps = caps_for({{Var::p, 1}});
  for (int n = 2; n <= 6; ++n) {
    auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(n, noise, Placement{}, table());
    const TruncatedSeries lead = series_of(f, caps);
    CHECK(lead == TruncatedSeries::from_terms(first_order_equiprobable(n).terms(), caps));
  }
}

TEST_CASE("bonding with no noise is exact for every valid attempt") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      auto out = fuse_pair<GaussianRational, BranchEnsemble>(
          n, k, NoiseModel<GaussianRational>::none(), Placement{}, table());
      CHECK(out.fidelity == GaussianRational(1));
    }
}

TEST_CASE("single-leaf bond under a survivor channel loses p_x + p_z") {
  NoiseModel<Polynomial> noise;
  noise.px = Polynomial::variable(Var::px);
  noise.py = Polynomial::variable(Var::py);
  noise.pz = Polynomial::variable(Var::pz);
  auto out = fuse_pair<Polynomial, BranchEnsemble>(1, 1, noise, Placement{}, table());
  const Polynomial expected = Polynomial::one() - Polynomial::variable(Var::px) -
                              Polynomial::variable(Var::pz);
  CHECK(out.fidelity == RationalFunction::from_polynomial(expected));
}

TEST_CASE("factored and joint pipelines agree exactly") {
  const SeriesCaps caps = caps_for({{Var::alpha, 2}, {Var::p, 1}});
  NoiseModel<TruncatedSeries> noise;
  noise.alpha = TruncatedSeries::variable(Var::alpha, caps);
  noise.px = noise.py = noise.pz = TruncatedSeries::variable(Var::p, caps);

  const std::pair<int, int> cells[] = {{2, 1}, {2, 2}};
  for (int pi = 0; pi < kNumPlacementPolicies; ++pi) {
    for (int noisy = 0; noisy < 2; ++noisy) {
      const Placement pl{static_cast<ErrorPlacementPolicy>(pi), noisy == 1};
      for (auto [n, k] : cells) {
        auto fac = fuse_pair<TruncatedSeries, DenseOperator>(n, k, noise, pl, table(),
                                                             PairPipeline::Factored);
        auto ref = fuse_pair<TruncatedSeries, DenseOperator>(n, k, noise, pl, table(),
                                                             PairPipeline::Joint);
        CAPTURE(pi);
        CAPTURE(noisy);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(fac.fidelity == ref.fidelity);
      }
    }
  }
  // one deeper cell on the two combos with the most machinery in play
  for (const Placement pl : {Placement{ErrorPlacementPolicy::AllClusterPhotons, true},
                             Placement{ErrorPlacementPolicy::SurvivorPlusRoots, true}}) {
    auto fac =
        fuse_pair<TruncatedSeries, DenseOperator>(3, 2, noise, pl, table(), PairPipeline::Factored);
    auto ref =
        fuse_pair<TruncatedSeries, DenseOperator>(3, 2, noise, pl, table(), PairPipeline::Joint);
    CHECK(fac.fidelity == ref.fidelity);
  }
}

TEST_CASE("factored and joint pipelines agree in floating point") {
  using C = std::complex<double>;
  NoiseModel<C> noise{C(0.03), C(0.004), C(0.004), C(0.004)};
  const Placement pl{ErrorPlacementPolicy::BothFusionPhotons, true};
  auto fac = fuse_pair<C, DenseOperator>(3, 3, noise, pl, table(), PairPipeline::Factored);
  auto ref = fuse_pair<C, DenseOperator>(3, 3, noise, pl, table(), PairPipeline::Joint);
  CHECK(fac.fidelity == doctest::Approx(ref.fidelity).epsilon(1e-12));
}

TEST_CASE("series pipeline agrees with the fully symbolic one") {
  const SeriesCaps caps = caps_for({{Var::alpha, 2}, {Var::p, 1}});
  NoiseModel<Polynomial> noise;
  noise.alpha = Polynomial::variable(Var::alpha);
  noise.px = Polynomial::variable(Var::px);
  noise.py = Polynomial::variable(Var::py);
  noise.pz = Polynomial::variable(Var::pz);
  const Polynomial p = Polynomial::variable(Var::p);
  const std::map<Var, Polynomial> equiprobable{{Var::px, p}, {Var::py, p}, {Var::pz, p}};

  const std::pair<int, int> cells[] = {{1, 1}, {2, 1}, {2, 2}};
  const Placement pl{ErrorPlacementPolicy::BothFusionPhotons, true};
  for (auto [n, k] : cells) {
    auto symbolic = fuse_pair<Polynomial, DenseOperator>(n, k, noise, pl, table());
    const RationalFunction sub(symbolic.fidelity.num().substitute(equiprobable),
                               symbolic.fidelity.den().substitute(equiprobable));
    const TruncatedSeries expanded = series_expand(sub, caps);
    const CoefficientReport rep = coefficient_expansion(n, k, pl);
    for (const auto& [mono, value] : rep.entries) {
      CAPTURE(n);
      CAPTURE(k);
      CAPTURE(mono.to_string());
      CHECK(value == expanded.coeff(mono));
    }
  }
}

TEST_CASE("bit-flip vs bit-phase-flip symmetry holds exactly where expected") {
  NoiseModel<Polynomial> noise;
  noise.alpha = Polynomial::variable(Var::alpha);
  noise.px = Polynomial::variable(Var::px);
  noise.py = Polynomial::variable(Var::py);
  noise.pz = Polynomial::variable(Var::pz);
  const std::map<Var, Polynomial> swap{{Var::px, Polynomial::variable(Var::py)},
                                       {Var::py, Polynomial::variable(Var::px)}};
  // The two-leaf star under the survivor channel loses every error class
  // alike, so swapping p_x and p_y is invisible there ...
  auto f2 = microcluster_fidelity<Polynomial, BranchEnsemble>(2, noise, Placement{}, table());
  const RationalFunction f2_swapped(f2.num().substitute(swap), f2.den().substitute(swap));
  CHECK(f2 == f2_swapped);
  // ... while the bonded pair ends in a y-basis readout that absorbs Y errors
  // on the connector but not X errors, so the swap must show.
  auto pair = fuse_pair<Polynomial, BranchEnsemble>(1, 1, noise, Placement{}, table());
  const RationalFunction pair_swapped(pair.fidelity.num().substitute(swap),
                                      pair.fidelity.den().substitute(swap));
  CHECK(pair.fidelity != pair_swapped);
}

TEST_CASE("invalid bond requests are rejected") {
  CHECK_THROWS_AS(coefficient_expansion(2, 3, Placement{}), AttemptExceedsLeavesError);
  CHECK_THROWS_AS(coefficient_expansion(5, 1, Placement{}), CapacityError);
  CHECK_THROWS_AS(coefficient_expansion(0, 1, Placement{}), DomainError);
  CHECK_THROWS_WITH_AS(
      (fuse_pair<GaussianRational, BranchEnsemble>(2, 3, NoiseModel<GaussianRational>::none(),
                                                   Placement{}, table())),
      "attempt exceeds leaves", AttemptExceedsLeavesError);
}

TEST_CASE("frozen expansion coefficients for two placements") {
  const Mono a2 = Mono::unit(Var::alpha, 2), mp = Mono::unit(Var::p);
  const Placement both{ErrorPlacementPolicy::BothFusionPhotons, false};
  const CoefficientReport r11 = coefficient_expansion(1, 1, both);
  CHECK(r11.coeff(Mono::one()) == GaussianRational(1));
  CHECK(r11.coeff(mp) == GaussianRational(-8));
  CHECK(r11.coeff(a2) == GaussianRational(-1));
  CHECK(r11.coeff(a2 * mp) == GaussianRational(10));
  CHECK(r11.coeff(Mono::unit(Var::alpha)) == GaussianRational(0));
  CHECK(r11.coeff(Mono::unit(Var::alpha) * mp) == GaussianRational(0));
  CHECK_THROWS_AS(r11.coeff(Mono::unit(Var::pz)), DomainError);

  const CoefficientReport r21 = coefficient_expansion(2, 1, Placement{});
  CHECK(r21.coeff(mp) == GaussianRational(-8));
  CHECK(r21.coeff(a2) == GaussianRational(-2));
  CHECK(r21.coeff(a2 * mp) == GaussianRational(22));
}

TEST_CASE("published coefficient targets are wired up") {
  const auto& targets = pair_coefficient_targets();
  REQUIRE(targets.size() == 10);
  CHECK(targets.front().c_p == GaussianRational(-8));
  CHECK(targets.front().c_alpha2 == GaussianRational(-5, 2));
  CHECK(targets.back().leaves == 4);
  CHECK(targets.back().attempt == 4);
  CHECK(targets.back().c_alpha2_p == GaussianRational(954));
  for (const auto& t : targets) CHECK(t.attempt <= t.leaves);
}

TEST_CASE("byproduct calibration accepts the phase-flip table and repairs sabotage") {
  CHECK(byproducts_verify(ByproductTable{}));
  const Gate1<GaussianRational> z = gate_z<GaussianRational>();
  const ByproductTable calibrated = calibrate_byproducts();
  CHECK(calibrated.fusion_minus == z);
  CHECK(calibrated.zmeasure_one == z);
  CHECK(calibrated.ymeasure_minus == z);

  ByproductTable bad;
  bad.fusion_minus = gate_x<GaussianRational>();
  CHECK_FALSE(byproducts_verify(bad));
  CHECK(byproducts_verify(calibrate_byproducts_from(bad)));

  bad = ByproductTable{};
  bad.ymeasure_minus = gate_s<GaussianRational>();
  CHECK_FALSE(byproducts_verify(bad));
  CHECK(calibrate_byproducts_from(bad).ymeasure_minus == z);

  bad = ByproductTable{};
  bad.zmeasure_one = gate_h_unnorm<GaussianRational>();
  CHECK_FALSE(byproducts_verify(bad));
  CHECK(calibrate_byproducts_from(bad).zmeasure_one == z);
}

TEST_CASE("float sweep: shape, determinism and monotonicity in p") {
  const std::vector<double> p_grid{0.0, 0.025, 0.05};
  const Placement pl{ErrorPlacementPolicy::BothFusionPhotons, true};
  const auto records = sweep_records(0.01, p_grid, {2, 3}, {1, 2}, pl, 1);
  REQUIRE(records.size() == 12);
  // ordering: (leaves, attempt, p-index)
  CHECK(records[0].leaves == 2);
  CHECK(records[0].attempt == 1);
  CHECK(records[0].p == 0.0);
  CHECK(records[3].attempt == 2);
  CHECK(records[11].leaves == 3);
  CHECK(records[11].attempt == 2);
  CHECK(records[11].p == 0.05);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].fidelity > 0.0);
    CHECK(records[i].fidelity <= 1.0 + 1e-12);
    if (i % p_grid.size() != 0) CHECK(records[i].fidelity <= records[i - 1].fidelity + 1e-10);
  }
  const auto again = sweep_records(0.01, p_grid, {2, 3}, {1, 2}, pl, 3);
  REQUIRE(again.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(again[i].fidelity == records[i].fidelity);
    CHECK(again[i].policy == records[i].policy);
  }
}
