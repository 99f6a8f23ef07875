#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcsim/protocols.hpp"
#include "mcsim/report.hpp"
#include "mcsim/selftest.hpp"

namespace {

using namespace mcsim;
using C = std::complex<double>;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDomain = 2;
constexpr int kSelftestFail = 3;

int fail_domain(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return kDomain;
}

// Worker fan-out for sweeps and the placement study. Output never depends on
// the count; it only changes wall time.
int workers_from_env() {
  const char* s = std::getenv("MCSIM_WORKERS");
  if (!s) return 1;
  const int v = std::atoi(s);
  return v >= 1 ? v : 1;
}

// Writes to the output path, or stdout when the path is empty.
bool deliver(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << payload;
  return f.good();
}

// Exact rational from "a/b" or a plain decimal ("0.01", "-.5", "3").
// Numeric flags are parsed exactly so the exact backend never rounds.
std::optional<mpq_class> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s.find('/') != std::string::npos) {
    try {
      mpq_class q(s);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  std::string digits;
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string frac;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (s[i] >= '0' && s[i] <= '9') {
      seen_digit = true;
      (seen_dot ? frac : digits) += s[i];
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  mpz_class num(digits.empty() ? "0" : digits);
  for (std::size_t k = 0; k < frac.size(); ++k) num *= 10;
  if (!frac.empty()) num += mpz_class(frac);
  mpz_class den = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

struct ExactParams {
  mpq_class alpha, px, py, pz;
};

// Shared range validation, run before any computation.
std::optional<std::string> validate_params(const ExactParams& v) {
  if (v.alpha < 0 || v.alpha > mpq_class(1, 2)) return "alpha must lie in [0, 1/2]";
  if (v.px < 0 || v.py < 0 || v.pz < 0) return "error weights must be non-negative";
  if (v.px + v.py + v.pz > 1) return "error weights must sum to at most 1";
  return std::nullopt;
}

struct CommonFlags {
  std::string alpha = "0", p, px = "0", py = "0", pz = "0";
  std::string policy = placement_name(ErrorPlacementPolicy::SurvivorOnly);
  bool noisy_failures = false;
};

std::optional<Placement> parse_placement(const CommonFlags& flags, std::string& error) {
  const auto policy = placement_from_name(flags.policy);
  if (!policy) {
    error = "unknown policy '" + flags.policy + "'";
    return std::nullopt;
  }
  return Placement{*policy, flags.noisy_failures};
}

std::optional<ExactParams> parse_params(const CommonFlags& flags, std::string& error) {
  ExactParams out;
  const auto alpha = parse_rational(flags.alpha);
  if (!alpha) {
    error = "cannot parse --alpha '" + flags.alpha + "'";
    return std::nullopt;
  }
  out.alpha = *alpha;
  std::string px = flags.px, py = flags.py, pz = flags.pz;
  if (!flags.p.empty()) px = py = pz = flags.p;
  for (const auto& [name, text, slot] :
       {std::tuple{"px", &px, &out.px}, {"py", &py, &out.py}, {"pz", &pz, &out.pz}}) {
    const auto v = parse_rational(*text);
    if (!v) {
      error = std::string("cannot parse --") + name + " '" + *text + "'";
      return std::nullopt;
    }
    *slot = *v;
  }
  if (const auto range = validate_params(out)) {
    error = *range;
    return std::nullopt;
  }
  return out;
}

int run_table1(int leaves, bool closed_form) {
  if (leaves < 1) return fail_domain("a microcluster needs at least one leaf");
  const Polynomial row = closed_form ? closed_form_table1(leaves) : star_row_in_q(leaves);
  std::printf("%s\n", row.to_string().c_str());
  return kOk;
}

int run_table2(int rows, int cols, const std::string& format, const std::string& out_path) {
  if (rows < 1 || cols < 1) return fail_domain("rows and cols must be at least 1");
  const auto grid = binomial_transform_table(rows, cols);
  const std::string payload =
      format == "csv" ? grid_csv(grid) : format == "json" ? grid_json(grid) : grid_text(grid);
  if (!deliver(out_path, payload)) return fail_domain("cannot write " + out_path);
  return kOk;
}

int run_table3(int leaves, int attempt, const Placement& placement, const std::string& format,
               const std::string& out_path) {
  std::vector<CoefficientReport> reports;
  if (leaves == 0 && attempt == 0) {
    for (int n = 1; n <= 4; ++n)
      for (int k = 1; k <= n; ++k) reports.push_back(coefficient_expansion(n, k, placement));
  } else {
    if (leaves < 1 || attempt < 1) return fail_domain("leaves and attempt must be at least 1");
    reports.push_back(coefficient_expansion(leaves, attempt, placement));
  }
  const std::string payload = format == "csv"    ? coefficients_csv(reports)
                              : format == "json" ? coefficients_json(reports)
                                                 : coefficients_text(reports);
  if (!deliver(out_path, payload)) return fail_domain("cannot write " + out_path);
  return kOk;
}

int run_formulas(const std::string& selector, int leaves, const std::string& alpha,
                 const std::string& p) {
  std::string text;
  if (selector == "eq2") {
    text = reference_eq2().to_string();
  } else if (selector == "eq3") {
    if (leaves < 1) return fail_domain("a microcluster needs at least one leaf");
    text = reference_eq3(leaves).to_string();
  } else if (selector == "first_order_equiprobable") {
    if (leaves < 1) return fail_domain("a microcluster needs at least one leaf");
    text = first_order_equiprobable(leaves).to_string();
  } else {
    std::fprintf(stderr, "error: unknown selector '%s' (expected eq2, eq3, or "
                         "first_order_equiprobable)\n",
                 selector.c_str());
    return kUsage;
  }
  std::printf("%s\n", text.c_str());

  const bool crosstalk = selector == "eq2" || selector == "eq3";
  const std::string& point = crosstalk ? alpha : p;
  if (!point.empty()) {
    const auto v = parse_rational(point);
    if (!v) return fail_domain("cannot parse evaluation point '" + point + "'");
    const std::map<Var, GaussianRational> at{
        {crosstalk ? Var::alpha : Var::p, GaussianRational(*v)}};
    GaussianRational value;
    if (selector == "eq2") value = reference_eq2().eval(at);
    if (selector == "eq3") value = reference_eq3(leaves).eval(at);
    if (selector == "first_order_equiprobable") value = first_order_equiprobable(leaves).eval(at);
    std::printf("value at %s = %s: %s (%s)\n", crosstalk ? "alpha" : "p", v->get_str().c_str(),
                value.to_string().c_str(), format_double(value.re.get_d()).c_str());
  }
  return kOk;
}

int run_pairfuse(int leaves, int attempt, const CommonFlags& flags, const std::string& backend) {
  std::string error;
  const auto placement = parse_placement(flags, error);
  if (!placement) return fail_domain(error);
  const auto params = parse_params(flags, error);
  if (!params) return fail_domain(error);
  if (leaves < 1) return fail_domain("a microcluster needs at least one leaf");
  if (attempt < 1) return fail_domain("the success attempt index starts at 1");
  if (attempt > leaves) return fail_domain("attempt exceeds leaves");

  if (backend == "exact") {
    NoiseModel<GaussianRational> noise;
    noise.alpha = GaussianRational(params->alpha);
    noise.px = GaussianRational(params->px);
    noise.py = GaussianRational(params->py);
    noise.pz = GaussianRational(params->pz);
    const auto out = fuse_pair<GaussianRational, BranchEnsemble>(leaves, attempt, noise,
                                                                 *placement, calibrate_byproducts());
    std::printf("fidelity: %s (%s)\n", out.fidelity.to_string().c_str(),
                format_double(out.fidelity.re.get_d()).c_str());
  } else {
    NoiseModel<C> noise;
    noise.alpha = C(params->alpha.get_d());
    noise.px = C(params->px.get_d());
    noise.py = C(params->py.get_d());
    noise.pz = C(params->pz.get_d());
    const auto out =
        fuse_pair<C, DenseOperator>(leaves, attempt, noise, *placement, calibrate_byproducts());
    std::printf("fidelity: %s\n", format_double(out.fidelity).c_str());
  }
  return kOk;
}

std::optional<std::vector<double>> parse_grid(const std::string& spec, std::string& error) {
  double start = 0, stop = 0;
  int steps = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &start, &stop, &steps, &extra) != 3) {
    error = "p-grid must be start:stop:steps, e.g. 0:0.05:11";
    return std::nullopt;
  }
  if (steps < 1) {
    error = "p-grid needs at least one step";
    return std::nullopt;
  }
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i)
    grid.push_back(steps == 1 ? start : start + i * (stop - start) / (steps - 1));
  return grid;
}

std::optional<std::vector<int>> parse_int_list(const std::string& spec, std::string& error) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const int v = std::stoi(item);
      if (v < 1) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      error = "list entries must be positive integers, got '" + item + "'";
      return std::nullopt;
    }
  }
  if (out.empty()) {
    error = "empty list";
    return std::nullopt;
  }
  return out;
}

int run_sweep(double alpha, const std::string& grid_spec, const std::string& leaves_spec,
              const std::string& attempts_spec, const CommonFlags& flags,
              const std::string& format, const std::string& out_path) {
  std::string error;
  const auto placement = parse_placement(flags, error);
  if (!placement) return fail_domain(error);
  const auto grid = parse_grid(grid_spec, error);
  if (!grid) return fail_domain(error);
  const auto leaves = parse_int_list(leaves_spec, error);
  if (!leaves) return fail_domain("--leaves: " + error);
  const auto attempts = parse_int_list(attempts_spec, error);
  if (!attempts) return fail_domain("--attempts: " + error);
  if (alpha < 0 || alpha > 0.5) return fail_domain("alpha must lie in [0, 1/2]");
  for (double p : *grid)
    if (p < 0 || 3 * p > 1) return fail_domain("equiprobable p must lie in [0, 1/3]");

  const auto records =
      sweep_records(alpha, *grid, *leaves, *attempts, *placement, workers_from_env());
  const std::string payload = format == "json"   ? sweep_json(records)
                              : format == "text" ? sweep_text(records)
                                                 : sweep_csv(records);
  if (!deliver(out_path, payload)) return fail_domain("cannot write " + out_path);
  return kOk;
}

int run_policy_search(int workers, const std::string& out_path) {
  if (workers < 1) return fail_domain("workers must be at least 1");
  const auto report = policy_search(workers);
  if (!deliver(out_path, report.text)) return fail_domain("cannot write " + out_path);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"microcluster construction and bonding simulator"};
  app.require_subcommand(1);
  app.footer("MCSIM_WORKERS sets the worker count for sweep and policy-search.");

  // table1
  auto* table1 = app.add_subcommand("table1", "construction fidelity row in the signed variable");
  int t1_leaves = 4;
  bool t1_closed = false;
  table1->add_option("--leaves", t1_leaves, "number of leaves")->capture_default_str();
  table1->add_flag("--closed-form", t1_closed, "print the closed form instead of simulating");
  std::string t1_backend = "exact";
  table1->add_option("--backend", t1_backend, "computation backend")
      ->check(CLI::IsMember({"exact"}));

  // table2
  auto* table2 = app.add_subcommand("table2", "binomial-transform coefficient grid");
  int t2_rows = 5, t2_cols = 5;
  std::string t2_format = "text", t2_out;
  table2->add_option("--rows", t2_rows, "row count")->capture_default_str();
  table2->add_option("--cols", t2_cols, "column count")->capture_default_str();
  table2->add_option("--format", t2_format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  table2->add_option("--out", t2_out, "write to this file instead of stdout");

  // table3
  auto* table3 = app.add_subcommand("table3", "bonded-pair fidelity coefficients per cell");
  int t3_leaves = 0, t3_attempt = 0;
  CommonFlags t3_flags;
  std::string t3_format = "text", t3_out;
  table3->add_option("--leaves", t3_leaves, "leaves (omit for all cells)");
  table3->add_option("--attempt", t3_attempt, "successful attempt (omit for all cells)");
  table3->add_option("--policy", t3_flags.policy, "error placement policy")
      ->capture_default_str();
  table3->add_flag("--noisy-failures", t3_flags.noisy_failures,
                   "apply placement noise on failed attempts too");
  table3->add_option("--format", t3_format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  table3->add_option("--out", t3_out, "write to this file instead of stdout");

  // formulas
  auto* formulas = app.add_subcommand("formulas", "closed-form references");
  std::string f_selector;
  int f_leaves = 2;
  std::string f_alpha, f_p;
  formulas->add_option("selector", f_selector, "eq2, eq3, or first_order_equiprobable")
      ->required();
  formulas->add_option("--leaves", f_leaves, "leaves for eq3 / first_order_equiprobable")
      ->capture_default_str();
  formulas->add_option("--alpha", f_alpha, "also evaluate at this crosstalk weight");
  formulas->add_option("--p", f_p, "also evaluate at this error weight");

  // pairfuse
  auto* pairfuse = app.add_subcommand("pairfuse", "bond two microclusters and report fidelity");
  int pf_leaves = 0, pf_attempt = 0;
  CommonFlags pf_flags;
  std::string pf_backend = "exact";
  pairfuse->add_option("--leaves", pf_leaves, "leaves per cluster")->required();
  pairfuse->add_option("--attempt", pf_attempt, "index of the successful attempt")->required();
  pairfuse->add_option("--alpha", pf_flags.alpha, "splitter crosstalk weight")
      ->capture_default_str();
  auto* pf_p = pairfuse->add_option("--p", pf_flags.p, "equiprobable error weight");
  pairfuse->add_option("--px", pf_flags.px, "bit-flip weight")->excludes(pf_p);
  pairfuse->add_option("--py", pf_flags.py, "bit-phase-flip weight")->excludes(pf_p);
  pairfuse->add_option("--pz", pf_flags.pz, "phase-flip weight")->excludes(pf_p);
  pairfuse->add_option("--policy", pf_flags.policy, "error placement policy")
      ->capture_default_str();
  pairfuse->add_flag("--noisy-failures", pf_flags.noisy_failures,
                     "apply placement noise on failed attempts too");
  pairfuse->add_option("--backend", pf_backend, "computation backend")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "float fidelity sweep over an error-weight grid");
  double sw_alpha = 0.01;
  std::string sw_grid = "0:0.05:11", sw_leaves = "2,3,4,5", sw_attempts = "1,2,3,4";
  CommonFlags sw_flags;
  std::string sw_format = "csv", sw_out;
  sweep->add_option("--alpha", sw_alpha, "splitter crosstalk weight")->capture_default_str();
  sweep->add_option("--p-grid", sw_grid, "start:stop:steps, endpoints included")
      ->capture_default_str();
  sweep->add_option("--leaves", sw_leaves, "comma list of cluster sizes")->capture_default_str();
  sweep->add_option("--attempts", sw_attempts, "comma list of success attempts")
      ->capture_default_str();
  sweep->add_option("--policy", sw_flags.policy, "error placement policy")->capture_default_str();
  sweep->add_flag("--noisy-failures", sw_flags.noisy_failures,
                  "apply placement noise on failed attempts too");
  sweep->add_option("--format", sw_format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  sweep->add_option("--out", sw_out, "write to this file instead of stdout");

  // policy-search
  auto* search = app.add_subcommand("policy-search",
                                    "rank placement policies against the published coefficients");
  int ps_workers = workers_from_env();
  std::string ps_out;
  search->add_option("--workers", ps_workers, "concurrent workers")->capture_default_str();
  search->add_option("--out", ps_out, "write to this file instead of stdout");

  // selftest
  app.add_subcommand("selftest", "run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (table1->parsed()) return run_table1(t1_leaves, t1_closed);
    if (table2->parsed()) return run_table2(t2_rows, t2_cols, t2_format, t2_out);
    if (table3->parsed()) {
      std::string error;
      const auto placement = parse_placement(t3_flags, error);
      if (!placement) return fail_domain(error);
      if ((t3_leaves == 0) != (t3_attempt == 0))
        return fail_domain("give both --leaves and --attempt, or neither");
      return run_table3(t3_leaves, t3_attempt, *placement, t3_format, t3_out);
    }
    if (formulas->parsed()) return run_formulas(f_selector, f_leaves, f_alpha, f_p);
    if (pairfuse->parsed()) return run_pairfuse(pf_leaves, pf_attempt, pf_flags, pf_backend);
    if (sweep->parsed())
      return run_sweep(sw_alpha, sw_grid, sw_leaves, sw_attempts, sw_flags, sw_format, sw_out);
    if (search->parsed()) return run_policy_search(ps_workers, ps_out);
    return run_selftest(std::cout) == 0 ? kOk : kSelftestFail;
  } catch (const Error& e) {
    return fail_domain(e.what());
  } catch (const std::exception& e) {
    return fail_domain(e.what());
  }
}
