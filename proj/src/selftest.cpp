#include "mcsim/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mcsim/branch_state.hpp"
#include "mcsim/dense_state.hpp"
#include "mcsim/protocols.hpp"
#include "mcsim/report.hpp"
#include "mcsim/series.hpp"

namespace mcsim {

namespace {

using C = std::complex<double>;
using Clock = std::chrono::steady_clock;

// Every tolerance and budget used by the acceptance gate, pinned in one
// place. Checks not listed here are exact (zero tolerance).
constexpr double kBackendTol = 1e-10;    // float vs exact fidelity agreement
constexpr double kMonotoneTol = 1e-10;   // sweep monotonicity slack
constexpr double kEigenFloor = -1e-10;   // minimum admissible eigenvalue
constexpr double kHermitianTol = 1e-12;  // max |rho - rho^dagger| entry
constexpr int kPositivityPoints = 50;
constexpr unsigned kPositivitySeed = 20260815;
constexpr double kRowsBudgetSeconds = 60;
constexpr double kExpansionBudgetSeconds = 1800;
constexpr double kSweepBudgetSeconds = 600;

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;

  void note(std::string s) { notes.push_back(std::move(s)); }
  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    notes.push_back("FAILED: " + what);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const ByproductTable& table() {
  static const ByproductTable t = calibrate_byproducts();
  return t;
}

NoiseModel<Polynomial> alpha_only_noise() {
  NoiseModel<Polynomial> n;
  n.alpha = Polynomial::variable(Var::alpha);
  return n;
}

NoiseModel<Polynomial> equiprobable_noise() {
  NoiseModel<Polynomial> n;
  n.px = Polynomial::variable(Var::p);
  n.py = Polynomial::variable(Var::p);
  n.pz = Polynomial::variable(Var::p);
  return n;
}

NoiseModel<Polynomial> axis_noise(bool swap_xy) {
  NoiseModel<Polynomial> n;
  n.px = Polynomial::variable(swap_xy ? Var::py : Var::px);
  n.py = Polynomial::variable(swap_xy ? Var::px : Var::py);
  n.pz = Polynomial::variable(Var::pz);
  return n;
}

std::string rat(const GaussianRational& v) { return v.to_string(); }

// ---- criterion 1: construction rows 1..5, exact, against the closed form
// and the frozen printed renderings ----

Criterion rows_one_to_five() {
  Criterion c;
  const auto t0 = Clock::now();
  const char* printed[5] = {
      "1",
      "-q - p_z",
      "q^2 + 2*p_z*q + 2*p_z^2",
      "-q^3 - 3*p_z*q^2 - 6*p_z^2*q - 4*p_z^3",
      "q^4 + 4*p_z*q^3 + 12*p_z^2*q^2 + 16*p_z^3*q + 8*p_z^4",
  };
  for (int n = 1; n <= 5; ++n) {
    const Polynomial row = star_row_in_q(n);
    c.check(row == closed_form_table1(n), "row " + std::to_string(n) + " vs closed form");
    c.check(row.to_string() == printed[n - 1],
            "row " + std::to_string(n) + " rendering: got " + row.to_string());
  }
  const double dt = seconds_since(t0);
  c.check(dt < kRowsBudgetSeconds, "runtime over budget");
  c.note("rows 1..5 equal the closed form and the frozen renderings exactly (" +
         format_double(dt) + "s)");
  return c;
}

// ---- criterion 2: six-leaf row sign arbitration ----

Criterion six_leaf_sign() {
  Criterion c;
  const Polynomial sim = star_row_in_q(6);
  c.check(sim == closed_form_table1(6), "six-leaf simulation vs closed form");
  const GaussianRational coeff = sim.coeff(Mono::unit(Var::q) * Mono::unit(Var::pz, 4));
  c.check(coeff == GaussianRational(-40), "q*p_z^4 coefficient, got " + rat(coeff));
  c.note("q*p_z^4 coefficient: corrected (-40); the +40 rendering does not reproduce");
  return c;
}

// ---- criterion 3: two-leaf crosstalk formula, cross-multiplied ----

Criterion two_leaf_crosstalk() {
  Criterion c;
  const auto f =
      microcluster_fidelity<Polynomial, BranchEnsemble>(2, alpha_only_noise(), Placement{}, table());
  c.check(f == reference_eq2(), "simulated two-leaf crosstalk fidelity vs reference");
  const GaussianRational at_one_percent = reference_eq2().eval({{Var::alpha, GaussianRational(1, 100)}});
  c.check(at_one_percent == GaussianRational(9801, 9802),
          "reference value at alpha = 1/100, got " + rat(at_one_percent));
  c.note("simulation equals (1-a)^2 / (1+2(a^2-a)); value at a=1/100 is 9801/9802");
  return c;
}

// ---- criterion 4: per-fusion factorization for 3..5 leaves ----

Criterion crosstalk_factorization() {
  Criterion c;
  for (int n = 3; n <= 5; ++n) {
    const auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(n, alpha_only_noise(),
                                                                     Placement{}, table());
    c.check(f == reference_eq3(n), "leaves " + std::to_string(n) + " vs two-leaf power");
  }
  c.note("crosstalk-only fidelity factors into the two-leaf formula to the n-1 power, n = 3..5");
  return c;
}

// ---- criterion 5: first-order equiprobable loss ----

Criterion first_order_loss() {
  Criterion c;
  const auto caps = caps_for({{Var::p, 1}});
  for (int n = 2; n <= 6; ++n) {
    const auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(n, equiprobable_noise(),
                                                                     Placement{}, table());
    const auto s = series_expand(f, caps);
    const GaussianRational got = s.coeff(Mono::unit(Var::p));
    c.check(got == GaussianRational(-3L * (n - 1)),
            "leaves " + std::to_string(n) + " p-coefficient, got " + rat(got));
    c.check(s.coeff(Mono::one()) == GaussianRational(1),
            "leaves " + std::to_string(n) + " constant term");
  }
  c.note("equiprobable expansion loses exactly 3(n-1)p at first order, n = 2..6");
  return c;
}

// ---- criterion 6: binomial-transform grid and its antidiagonals ----

Criterion transform_grid() {
  Criterion c;
  const long frozen[5][5] = {{1, 1, 2, 4, 8},
                             {1, 2, 6, 16, 40},
                             {1, 3, 12, 40, 120},
                             {1, 4, 20, 80, 280},
                             {1, 5, 30, 140, 560}};
  const auto grid5 = binomial_transform_table(5, 5);
  c.check(grid5.size() == 5, "grid row count");
  for (int r = 0; r < 5; ++r)
    for (int col = 0; col < 5; ++col)
      c.check(grid5[r][col] == frozen[r][col], "grid entry (" + std::to_string(r + 1) + "," +
                                                   std::to_string(col) + ")");
  const auto grid6 = binomial_transform_table(6, 6);
  for (int n = 2; n <= 6; ++n) {
    const Polynomial row = closed_form_table1(n);
    for (int k = 0; k < n; ++k) {
      const GaussianRational coeff =
          row.coeff(Mono::unit(Var::q, static_cast<std::uint16_t>(n - 1 - k)) *
                    Mono::unit(Var::pz, static_cast<std::uint16_t>(k)));
      mpq_class mag = coeff.re;
      if (mag < 0) mag = -mag;
      c.check(mag == grid6[n - k - 1][k], "antidiagonal n=" + std::to_string(n) +
                                              " k=" + std::to_string(k));
    }
  }
  c.note("5x5 grid frozen; antidiagonals carry the row magnitudes for n = 2..6");
  return c;
}

// ---- criterion 7: zero-noise bonding calibration ----

Criterion zero_noise_bonding() {
  Criterion c;
  c.check(byproducts_verify(table()), "per-branch verification of the calibrated corrections");
  const NoiseModel<GaussianRational> none = NoiseModel<GaussianRational>::none();
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const auto out = fuse_pair<GaussianRational, BranchEnsemble>(n, k, none, Placement{}, table());
      c.check(out.fidelity == GaussianRational(1), "cell (" + std::to_string(n) + "," +
                                                       std::to_string(k) + ") fidelity, got " +
                                                       rat(out.fidelity));
    }
  c.note("every branch of every ideal pipeline hits its target; bonded fidelity exactly 1 on all "
         "ten cells");
  return c;
}

// ---- criterion 8: bonded-pair expansion structure ----

std::vector<std::vector<GaussianRational>> p_coefficient_rows(const Placement& placement) {
  std::vector<std::vector<GaussianRational>> rows;
  for (int n = 1; n <= 4; ++n) {
    std::vector<GaussianRational> row;
    for (int k = 1; k <= n; ++k)
      row.push_back(coefficient_expansion(n, k, placement).coeff(Mono::unit(Var::p)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Criterion expansion_structure() {
  Criterion c;
  const auto t0 = Clock::now();
  const Placement monotone{ErrorPlacementPolicy::BothFusionPhotons, true};
  const Placement shipped{};  // survivor-only, clean failures

  try {
    coefficient_expansion(2, 3, shipped);
    c.check(false, "attempt beyond the leaf count was accepted");
  } catch (const AttemptExceedsLeavesError&) {
  }

  for (const Placement& pl : {monotone, shipped})
    for (int n = 1; n <= 4; ++n)
      for (int k = 1; k <= n; ++k)
        c.check(coefficient_expansion(n, k, pl).coeff(Mono::one()) == GaussianRational(1),
                "constant term at (" + std::to_string(n) + "," + std::to_string(k) + ") under " +
                    placement_slug(pl));

  const auto mono_rows = p_coefficient_rows(monotone);
  const auto render_rows = [](const std::vector<std::vector<GaussianRational>>& rows) {
    std::string s;
    for (std::size_t n = 0; n < rows.size(); ++n) {
      s += "  n=" + std::to_string(n + 1) + ":";
      for (const auto& v : rows[n]) s += " " + v.to_string();
      s += ";";
    }
    return s;
  };
  const auto magnitude = [](const GaussianRational& v) {
    mpq_class m = v.re;
    if (m < 0) m = -m;
    return m;
  };
  for (std::size_t n = 0; n < mono_rows.size(); ++n)
    for (std::size_t k = 0; k + 1 < mono_rows[n].size(); ++k)
      c.check(magnitude(mono_rows[n][k + 1]) > magnitude(mono_rows[n][k]),
              "|p| not strictly increasing in attempt at n=" + std::to_string(n + 1));
  for (std::size_t n = 0; n + 1 < mono_rows.size(); ++n)
    for (std::size_t k = 0; k < mono_rows[n].size(); ++k)
      c.check(magnitude(mono_rows[n + 1][k]) > magnitude(mono_rows[n][k]),
              "|p| not strictly increasing in leaves at attempt " + std::to_string(k + 1));
  c.note("p coefficients under " + placement_slug(monotone) + ":" + render_rows(mono_rows));
  c.note("strict |p| increase holds in both attempt and leaves under that placement");
  const auto shipped_rows = p_coefficient_rows(shipped);
  c.note("p coefficients under the shipped default " + placement_slug(shipped) + ":" +
         render_rows(shipped_rows) + " (adjacent final attempts tie; not monotone)");

  // alpha^2 vs leaves: tested and reported. In this model the coefficient is
  // -(1 + min(k, n-1)) for every placement: constant across n only for n > k.
  std::string a2 = "alpha^2 coefficients by attempt:";
  bool constant_above_diagonal = true;
  for (int k = 1; k <= 4; ++k) {
    a2 += " k=" + std::to_string(k) + ":";
    GaussianRational above_diag;
    bool have = false;
    for (int n = k; n <= 4; ++n) {
      const GaussianRational v =
          coefficient_expansion(n, k, monotone).coeff(Mono::unit(Var::alpha, 2));
      a2 += " " + v.to_string();
      if (n > k) {
        if (have && !(v == above_diag)) constant_above_diagonal = false;
        above_diag = v;
        have = true;
      }
    }
    a2 += ";";
  }
  c.note(a2);
  c.check(constant_above_diagonal, "alpha^2 constancy for n > k");
  c.note("alpha^2 depends only on the attempt for n > k (value -(1+k)); the n = k cell reads -n; "
         "the published pattern is attempt-only for all n >= k");
  const double dt = seconds_since(t0);
  c.check(dt < kExpansionBudgetSeconds, "runtime over budget");
  c.note("all cells expanded exactly (" + format_double(dt) + "s)");
  return c;
}

// ---- criterion 9: placement study report ----

Criterion placement_study() {
  Criterion c;
  const auto r1 = policy_search(4);
  const auto r2 = policy_search(4);
  const auto r3 = policy_search(2);
  c.check(r1.text == r2.text, "report not byte-identical across repeated runs");
  c.check(r1.text == r3.text, "report depends on the worker count");
  c.check(r1.ranked.size() == 8, "expected eight placement combinations");
  for (int i = 0; i < kNumPlacementPolicies; ++i)
    c.check(r1.text.find(placement_name(static_cast<ErrorPlacementPolicy>(i))) !=
                std::string::npos,
            std::string("report does not mention ") +
                placement_name(static_cast<ErrorPlacementPolicy>(i)));
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const std::string cell = "leaves=" + std::to_string(n) + " attempt=" + std::to_string(k);
      c.check(r1.text.find(cell) != std::string::npos, "report does not cover " + cell);
    }
  const auto& best = r1.ranked.front();
  c.check(best.placement.policy == ErrorPlacementPolicy::BothFusionPhotons &&
              !best.placement.noisy_failures,
          "unexpected best combination: " + placement_slug(best.placement));
  c.check(best.matches == 15, "best combination match count, got " + std::to_string(best.matches));
  c.note("deterministic across runs and worker counts; best: " + placement_slug(best.placement) +
         " at 15/50 exact coefficient matches, mismatches enumerated in the run report");
  c.note("exact match against the published cells is recorded, not presumed: no placement in the "
         "studied space reproduces the published alpha*p or alpha^2 patterns");
  return c;
}

// ---- criterion 10: fidelity sweep surrogate ----

Criterion sweep_surrogate() {
  Criterion c;
  const auto t0 = Clock::now();
  std::vector<double> grid;
  for (int i = 0; i < 11; ++i) grid.push_back(0.05 * i / 10.0);
  const std::vector<int> leaves{2, 3, 4, 5}, attempts{1, 2, 3, 4};
  const auto records = sweep_records(0.01, grid, leaves, attempts, Placement{}, 4);
  const auto again = sweep_records(0.01, grid, leaves, attempts, Placement{}, 1);
  c.check(records.size() == 143, "expected 143 records, got " + std::to_string(records.size()));
  c.check(sweep_csv(records) == sweep_csv(again),
          "serialized sweep differs across runs/worker counts");
  double worst_step = 0;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& a = records[i];
    const auto& b = records[i + 1];
    if (a.leaves != b.leaves || a.attempt != b.attempt) continue;
    worst_step = std::max(worst_step, b.fidelity - a.fidelity);
  }
  c.check(worst_step <= kMonotoneTol, "fidelity increases along p: step " +
                                          format_double(worst_step));
  for (const auto& r : records)
    c.check(r.fidelity >= -kMonotoneTol && r.fidelity <= 1 + kMonotoneTol,
            "fidelity out of range");
  // At p = 0: non-increasing in the attempt index for fixed leaves.
  for (int n : leaves) {
    double prev = 2;
    for (const auto& r : records)
      if (r.leaves == n && r.p == 0.0) {
        c.check(r.fidelity <= prev + kMonotoneTol, "p=0 ordering at leaves " + std::to_string(n));
        prev = r.fidelity;
      }
  }
  const double dt = seconds_since(t0);
  c.check(dt < kSweepBudgetSeconds, "runtime over budget");
  c.note("143 records; every series non-increasing in p; p=0 column non-increasing in attempt; "
         "serialization byte-identical across worker counts (" + format_double(dt) + "s)");
  return c;
}

// ---- criterion 11: backend agreement ----

Criterion backend_agreement() {
  Criterion c;
  NoiseModel<GaussianRational> exact;
  exact.alpha = GaussianRational(1, 100);
  exact.px = exact.py = exact.pz = GaussianRational(3, 1000);
  NoiseModel<C> approx;
  approx.alpha = C(0.01);
  approx.px = approx.py = approx.pz = C(0.003);
  double worst = 0;
  for (int n = 2; n <= 4; ++n) {
    const auto e = microcluster_fidelity<GaussianRational, BranchEnsemble>(n, exact, Placement{},
                                                                           table());
    const double f =
        microcluster_fidelity<C, DenseOperator>(n, approx, Placement{}, table());
    worst = std::max(worst, std::abs(e.re.get_d() - f));
  }
  for (auto [n, k] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    const auto e = fuse_pair<GaussianRational, BranchEnsemble>(n, k, exact, Placement{}, table());
    const auto f = fuse_pair<C, DenseOperator>(n, k, approx, Placement{}, table());
    worst = std::max(worst, std::abs(e.fidelity.re.get_d() - f.fidelity));
  }
  c.check(worst <= kBackendTol, "float/exact disagreement " + format_double(worst));
  c.note("max |float - exact| = " + format_double(worst) + " across constructions 2..4 and cells "
         "(1,1), (2,1), (2,2)");
  return c;
}

// ---- criterion 12: channel property suites ----

Gate1<Polynomial> dagger(const Gate1<Polynomial>& g) {
  return {g[0].conj(), g[2].conj(), g[1].conj(), g[3].conj()};
}

Criterion property_suites() {
  Criterion c;

  // Kraus completeness: the four weighted conjugations resolve the identity.
  const Polynomial px = Polynomial::variable(Var::px);
  const Polynomial py = Polynomial::variable(Var::py);
  const Polynomial pz = Polynomial::variable(Var::pz);
  const std::vector<std::pair<Polynomial, Gate1<Polynomial>>> kraus = {
      {Polynomial::one() - px - py - pz, gate_identity<Polynomial>()},
      {px, gate_x<Polynomial>()},
      {py, gate_y<Polynomial>()},
      {pz, gate_z<Polynomial>()},
  };
  Gate1<Polynomial> sum = {Polynomial::zero(), Polynomial::zero(), Polynomial::zero(),
                           Polynomial::zero()};
  for (const auto& [w, g] : kraus) {
    const Gate1<Polynomial> gg = gate_mul(dagger(g), g);
    for (int i = 0; i < 4; ++i) sum[i] = sum[i] + w * gg[i];
  }
  const Gate1<Polynomial> id = gate_identity<Polynomial>();
  for (int i = 0; i < 4; ++i) c.check(sum[i] == id[i], "Kraus completeness entry " + std::to_string(i));

  // Trace conservation under the channel and under unitaries, symbolically,
  // in both density-operator realizations.
  {
    NoiseModel<Polynomial> noise = axis_noise(false);
    noise.alpha = Polynomial::variable(Var::alpha);
    QubitIdSource ids;
    const PureState<Polynomial> pair_state = epr<Polynomial>(ids, 0);
    const std::uint32_t qa = pair_state.qubits()[0].label;
    const std::uint32_t qb = pair_state.qubits()[1].label;
    Gate2<Polynomial> cz;
    for (int i = 0; i < 16; ++i) cz[i] = Polynomial::zero();
    cz[0] = cz[5] = cz[10] = Polynomial::one();
    cz[15] = -Polynomial::one();

    auto be = BranchEnsemble<Polynomial>::from_pure(pair_state);
    const Polynomial before_be = be.trace();
    pauli_channel(be, qa, noise);
    be.apply_2q(qa, qb, cz);
    c.check(be.trace() == before_be, "branch-ensemble trace after channel and phase coupling");
    be.apply_1q(qb, gate_h_unnorm<Polynomial>());
    c.check(be.trace() == before_be * Polynomial::constant(GaussianRational(2)),
            "unnormalized rotation must scale the trace by exactly 2");

    auto de = DenseOperator<Polynomial>::from_pure(pair_state);
    const Polynomial before_de = de.trace();
    pauli_channel(de, qb, noise);
    de.apply_2q(qa, qb, cz);
    c.check(de.trace() == before_de, "dense trace after channel and phase coupling");
  }

  // Positivity and Hermiticity at random valid parameter points.
  {
    std::mt19937 gen(kPositivitySeed);
    std::uniform_real_distribution<double> pauli(0.0, 0.2), splitter(0.0, 0.5);
    const Placement placement{ErrorPlacementPolicy::BothFusionPhotons, true};
    double min_eig = 0, worst_herm = 0;
    for (int i = 0; i < kPositivityPoints; ++i) {
      NoiseModel<C> noise;
      noise.px = C(pauli(gen));
      noise.py = C(pauli(gen));
      noise.pz = C(pauli(gen));
      noise.alpha = C(splitter(gen));
      const auto out = fuse_pair<C, DenseOperator>(2, 1, noise, placement, table());
      const std::size_t d = out.state.dim();
      Eigen::MatrixXcd m(d, d);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col) m(r, col) = out.state.entry(r, col);
      worst_herm = std::max(worst_herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    c.check(worst_herm <= kHermitianTol, "Hermiticity defect " + format_double(worst_herm));
    c.check(min_eig >= kEigenFloor, "negative eigenvalue " + format_double(min_eig));
    c.note("positivity: " + std::to_string(kPositivityPoints) + " random points, min eigenvalue " +
           format_double(min_eig) + ", Hermiticity defect " + format_double(worst_herm));
  }

  // Bit-flip vs bit-phase-flip exchange. Construction fidelities are exactly
  // invariant; the bonded pair is not (the y-readout absorbs Y but not X on
  // the connector), so the blanket claim is recorded as corrected to
  // construction scope, with the counterexample pinned.
  {
    for (int n = 2; n <= 4; ++n) {
      const auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(n, axis_noise(false),
                                                                       Placement{}, table());
      const auto g = microcluster_fidelity<Polynomial, BranchEnsemble>(n, axis_noise(true),
                                                                       Placement{}, table());
      c.check(f == g, "construction swap invariance at leaves " + std::to_string(n));
    }
    const auto f = fuse_pair<Polynomial, BranchEnsemble>(1, 1, axis_noise(false), Placement{},
                                                         table());
    const auto g = fuse_pair<Polynomial, BranchEnsemble>(1, 1, axis_noise(true), Placement{},
                                                         table());
    const Polynomial expected = Polynomial::one() - Polynomial::variable(Var::px) -
                                Polynomial::variable(Var::pz);
    c.check(f.fidelity == RationalFunction::from_polynomial(expected),
            "single-leaf bond fidelity is not 1 - p_x - p_z");
    c.check(!(f.fidelity == g.fidelity), "single-leaf bond unexpectedly swap-invariant");
    c.note("swap invariance holds exactly for constructions (2..4 leaves); the bonded pair is "
           "asymmetric (fidelity 1 - p_x - p_z at one leaf) - blanket claim corrected to "
           "construction scope");
  }
  return c;
}

}  // namespace

int run_selftest(std::ostream& out) {
  struct Entry {
    const char* title;
    Criterion (*run)();
  };
  const Entry entries[12] = {
      {"construction rows 1..5 exact against the closed form", &rows_one_to_five},
      {"six-leaf row sign arbitration", &six_leaf_sign},
      {"two-leaf crosstalk formula", &two_leaf_crosstalk},
      {"crosstalk factorization for 3..5 leaves", &crosstalk_factorization},
      {"first-order equiprobable loss 3(n-1)p", &first_order_loss},
      {"binomial-transform grid and antidiagonals", &transform_grid},
      {"zero-noise bonding calibration", &zero_noise_bonding},
      {"bonded-pair expansion structure", &expansion_structure},
      {"placement study report", &placement_study},
      {"fidelity sweep surrogate", &sweep_surrogate},
      {"backend agreement", &backend_agreement},
      {"channel property suites", &property_suites},
  };
  int failures = 0;
  for (int i = 0; i < 12; ++i) {
    Criterion c;
    try {
      c = entries[i].run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.note(std::string("unhandled error: ") + e.what());
    }
    if (!c.pass) ++failures;
    out << (c.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << entries[i].title
        << "\n";
    for (const auto& n : c.notes) out << "      " << n << "\n";
    out.flush();
  }
  out << (failures == 0 ? "acceptance: all 12 criteria passed"
                        : "acceptance: " + std::to_string(failures) + " of 12 criteria failed")
      << "\n";
  return failures;
}

}  // namespace mcsim
