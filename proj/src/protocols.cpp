#include "mcsim/protocols.hpp"

#include <gmp.h>

#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "mcsim/dense_state.hpp"
#include "mcsim/series.hpp"

namespace mcsim {

namespace {

// Runs fn(0..count-1) across up to `workers` threads. Results must be written
// into pre-indexed slots by the callers, so the schedule never affects output.
void run_indexed(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  if (workers > static_cast<int>(count)) workers = static_cast<int>(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

const ByproductTable& calibrated_table() {
  static const ByproductTable table = calibrate_byproducts();
  return table;
}

std::string combo_name(const Placement& placement) {
  std::string s = placement_name(placement.policy);
  s += placement.noisy_failures ? ", noisy failures" : ", clean failures";
  return s;
}

}  // namespace

Polynomial closed_form_table1(int leaves) {
  if (leaves < 1) throw DomainError("a microcluster needs at least one leaf");
  const unsigned n = static_cast<unsigned>(leaves);
  std::vector<Polynomial::Term> terms;
  for (unsigned k = 0; k < n; ++k) {
    mpz_class c = 1;
    if (k >= 1) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), n - 1, k);
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, k - 1);
      c = binom * p2;
    }
    if (n % 2 == 0) c = -c;  // overall sign (-1)^(n-1)
    Mono m = Mono::unit(Var::q, static_cast<std::uint16_t>(n - 1 - k)) *
             Mono::unit(Var::pz, static_cast<std::uint16_t>(k));
    terms.push_back({m, GaussianRational(mpq_class(c), mpq_class(0))});
  }
  return Polynomial::from_terms(std::move(terms));
}

Polynomial star_row_in_q(int leaves) {
  NoiseModel<Polynomial> noise;
  noise.px = Polynomial::variable(Var::p);
  noise.py = Polynomial::variable(Var::p);
  noise.pz = Polynomial::variable(Var::pz);
  auto f = microcluster_fidelity<Polynomial, BranchEnsemble>(leaves, noise, Placement{},
                                                             calibrated_table());
  return f.as_polynomial().substitute(
      {{Var::p, Polynomial::from_terms({{Mono::unit(Var::q), GaussianRational(1, 2)},
                                        {Mono::one(), GaussianRational(1, 2)}})}});
}

std::vector<std::vector<mpz_class>> binomial_transform_table(int rows, int cols) {
  if (rows < 1 || cols < 1) throw DomainError("table dimensions must be positive");
  std::vector<std::vector<mpz_class>> out(static_cast<std::size_t>(rows));
  for (int r = 1; r <= rows; ++r) {
    auto& row = out[static_cast<std::size_t>(r - 1)];
    row.resize(static_cast<std::size_t>(cols));
    row[0] = 1;
    for (int c = 1; c < cols; ++c) {
      mpz_class binom;  // (c+r-1)! / (c! (r-1)!) = binom(c+r-1, c)
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned>(c + r - 1), static_cast<unsigned>(c));
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned>(c - 1));
      row[static_cast<std::size_t>(c)] = p2 * binom;
    }
  }
  return out;
}

RationalFunction reference_eq2() {
  const Polynomial a = Polynomial::variable(Var::alpha);
  const Polynomial bar = Polynomial::one() - a;
  return RationalFunction(bar * bar, Polynomial::one() + 2 * (a * a - a));
}

RationalFunction reference_eq3(int leaves) {
  if (leaves < 1) throw DomainError("a microcluster needs at least one leaf");
  return pow(reference_eq2(), static_cast<unsigned>(leaves - 1));
}

Polynomial first_order_equiprobable(int leaves) {
  if (leaves < 1) throw DomainError("a microcluster needs at least one leaf");
  return Polynomial::one() - Polynomial(3L * (leaves - 1)) * Polynomial::variable(Var::p);
}

GaussianRational CoefficientReport::coeff(const Mono& m) const {
  for (const auto& [mono, value] : entries)
    if (mono == m) return value;
  throw DomainError("monomial not retained by the expansion: " + m.to_string());
}

std::string CoefficientReport::to_string() const {
  std::vector<Polynomial::Term> terms(entries.begin(), entries.end());
  std::string s = "leaves=" + std::to_string(leaves) + " attempt=" + std::to_string(attempt);
  s += " [" + combo_name(placement) + "]: ";
  s += Polynomial::from_terms(std::move(terms)).to_string();
  return s;
}

CoefficientReport coefficient_expansion(int leaves, int attempt, const Placement& placement) {
  if (leaves > 4)
    throw CapacityError(
        "exact coefficient expansion covers at most four leaves; use the float sweep backend for "
        "larger clusters");
  const SeriesCaps caps = caps_for({{Var::alpha, 2}, {Var::p, 1}});
  NoiseModel<TruncatedSeries> noise;
  noise.alpha = TruncatedSeries::variable(Var::alpha, caps);
  const TruncatedSeries p = TruncatedSeries::variable(Var::p, caps);
  noise.px = p;
  noise.py = p;
  noise.pz = p;

  auto out = fuse_pair<TruncatedSeries, DenseOperator>(leaves, attempt, noise, placement,
                                                       calibrated_table());

  CoefficientReport rep;
  rep.leaves = leaves;
  rep.attempt = attempt;
  rep.placement = placement;
  const Mono a = Mono::unit(Var::alpha), a2 = Mono::unit(Var::alpha, 2), mp = Mono::unit(Var::p);
  for (const Mono& m : {Mono::one(), mp, a, a2, a * mp, a2 * mp})
    rep.entries.emplace_back(m, out.fidelity.coeff(m));
  return rep;
}

const std::vector<CoefficientTargets>& pair_coefficient_targets() {
  static const std::vector<CoefficientTargets> targets = {
      {1, 1, GaussianRational(-8), GaussianRational(0), GaussianRational(-5, 2),
       GaussianRational(28)},
      {2, 1, GaussianRational(-12), GaussianRational(8), GaussianRational(-5, 2),
       GaussianRational(40)},
      {2, 2, GaussianRational(-14), GaussianRational(0), GaussianRational(-6),
       GaussianRational(142)},
      {3, 1, GaussianRational(-16), GaussianRational(24), GaussianRational(-5, 2),
       GaussianRational(28)},
      {3, 2, GaussianRational(-18), GaussianRational(8), GaussianRational(-6),
       GaussianRational(192)},
      {3, 3, GaussianRational(-20), GaussianRational(0), GaussianRational(-23, 2),
       GaussianRational(424)},
      {4, 1, GaussianRational(-20), GaussianRational(48), GaussianRational(-5, 2),
       GaussianRational(-24)},
      {4, 2, GaussianRational(-22), GaussianRational(24), GaussianRational(-6),
       GaussianRational(218)},
      {4, 3, GaussianRational(-24), GaussianRational(8), GaussianRational(-23, 2),
       GaussianRational(536)},
      {4, 4, GaussianRational(-26), GaussianRational(0), GaussianRational(-19),
       GaussianRational(954)},
  };
  return targets;
}

PolicySearchReport policy_search(int workers) {
  std::vector<Placement> combos;
  for (int pi = 0; pi < kNumPlacementPolicies; ++pi)
    for (int noisy = 0; noisy < 2; ++noisy)
      combos.push_back({static_cast<ErrorPlacementPolicy>(pi), noisy == 1});

  const auto& targets = pair_coefficient_targets();
  struct Job {
    std::size_t combo;
    std::size_t cell;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < combos.size(); ++c)
    for (std::size_t t = 0; t < targets.size(); ++t) jobs.push_back({c, t});

  calibrated_table();  // settle the shared table before fanning out
  std::vector<CoefficientReport> reports(jobs.size());
  run_indexed(jobs.size(), workers, [&](std::size_t i) {
    const auto& t = targets[jobs[i].cell];
    reports[i] = coefficient_expansion(t.leaves, t.attempt, combos[jobs[i].combo]);
  });

  const Mono a = Mono::unit(Var::alpha), a2 = Mono::unit(Var::alpha, 2), mp = Mono::unit(Var::p);
  PolicySearchReport out;
  out.ranked.reserve(combos.size());
  for (std::size_t c = 0; c < combos.size(); ++c) {
    PolicySearchReport::Combo combo;
    combo.placement = combos[c];
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto& target = targets[t];
      const auto& rep = reports[c * targets.size() + t];
      const std::pair<Mono, GaussianRational> expected[] = {
          {mp, target.c_p},
          {a, GaussianRational(0)},
          {a2, target.c_alpha2},
          {a * mp, target.c_alpha_p},
          {a2 * mp, target.c_alpha2_p},
      };
      for (const auto& [mono, want] : expected) {
        const GaussianRational got = rep.coeff(mono);
        if (got == want) {
          ++combo.matches;
        } else {
          combo.mismatches.push_back("leaves=" + std::to_string(target.leaves) +
                                     " attempt=" + std::to_string(target.attempt) + " coeff[" +
                                     mono.to_string() + "]: computed " + got.to_string() +
                                     ", target " + want.to_string());
        }
      }
    }
    out.ranked.push_back(std::move(combo));
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const auto& x, const auto& y) { return x.matches > y.matches; });

  std::ostringstream text;
  const int total = static_cast<int>(targets.size()) * 5;
  text << "placement study: bonded-pair fidelity coefficients vs published targets\n";
  text << "note: fidelities are success-conditioned ratios, so overall trace factors cancel;\n";
  text << "      coefficients compare the renormalized expansions about p = alpha = 0.\n";
  text << "ranking (exact coefficient matches out of " << total << "):\n";
  for (std::size_t c = 0; c < out.ranked.size(); ++c) {
    text << "  " << (c + 1) << ". " << combo_name(out.ranked[c].placement) << ": "
         << out.ranked[c].matches << "/" << total << "\n";
  }
  const auto& best = out.ranked.front();
  text << "best combo: " << combo_name(best.placement) << "\n";
  text << "expansions for the best combo:\n";
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (std::size_t c = 0; c < combos.size(); ++c) {
      const auto& rep = reports[c * targets.size() + t];
      if (rep.placement.policy == best.placement.policy &&
          rep.placement.noisy_failures == best.placement.noisy_failures) {
        text << "  " << rep.to_string() << "\n";
        break;
      }
    }
  }
  if (best.mismatches.empty()) {
    text << "mismatches for the best combo: none\n";
  } else {
    text << "mismatches for the best combo:\n";
    for (const auto& m : best.mismatches) text << "  " << m << "\n";
  }
  out.text = text.str();
  return out;
}

std::vector<SweepRecord> sweep_records(double alpha, const std::vector<double>& p_grid,
                                       const std::vector<int>& leaves_set,
                                       const std::vector<int>& attempts_set,
                                       const Placement& placement, int workers) {
  using C = std::complex<double>;
  struct Cell {
    int leaves, attempt;
  };
  std::vector<Cell> cells;
  for (int n : leaves_set)
    for (int k : attempts_set)
      if (k <= n) cells.push_back({n, k});

  const std::string policy = placement_slug(placement);
  std::vector<SweepRecord> out(cells.size() * p_grid.size());
  calibrated_table();
  run_indexed(out.size(), workers, [&](std::size_t i) {
    const Cell cell = cells[i / p_grid.size()];
    const double p = p_grid[i % p_grid.size()];
    NoiseModel<C> noise{C(alpha), C(p), C(p), C(p)};
    validate_numeric_noise(noise);
    auto res =
        fuse_pair<C, DenseOperator>(cell.leaves, cell.attempt, noise, placement, calibrated_table());
    out[i] = SweepRecord{policy, cell.leaves, cell.attempt, alpha, p, res.fidelity};
  });
  return out;
}

}  // namespace mcsim
