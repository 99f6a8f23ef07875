#include "mcsim/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace mcsim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string mono_label(const Mono& m) { return m.is_one() ? "1" : m.to_string(); }

// Pad v on the left to the given width (text renders only).
std::string pad(std::string v, std::size_t width) {
  if (v.size() < width) v.insert(v.begin(), width - v.size(), ' ');
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::string out = "policy,leaves,attempt,alpha,p,fidelity\n";
  for (const auto& r : records) {
    out += r.policy + ',' + std::to_string(r.leaves) + ',' + std::to_string(r.attempt) + ',' +
           format_double(r.alpha) + ',' + format_double(r.p) + ',' + format_double(r.fidelity) +
           '\n';
  }
  return out;
}

std::string sweep_json(const std::vector<SweepRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) {
    ordered_json o;
    o["policy"] = r.policy;
    o["leaves"] = r.leaves;
    o["attempt"] = r.attempt;
    o["alpha"] = format_double(r.alpha);
    o["p"] = format_double(r.p);
    o["fidelity"] = format_double(r.fidelity);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string sweep_text(const std::vector<SweepRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.policy + "  leaves " + std::to_string(r.leaves) + "  attempt " +
           std::to_string(r.attempt) + "  alpha " + format_double(r.alpha) + "  p " +
           pad(format_double(r.p), 12) + "  fidelity " + format_double(r.fidelity) + '\n';
  }
  return out;
}

std::string grid_csv(const std::vector<std::vector<mpz_class>>& grid) {
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c].get_str();
    }
    out += '\n';
  }
  return out;
}

std::string grid_json(const std::vector<std::vector<mpz_class>>& grid) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : grid) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(v.get_str());
    arr.push_back(std::move(r));
  }
  return arr.dump(2) + "\n";
}

std::string grid_text(const std::vector<std::vector<mpz_class>>& grid) {
  std::size_t width = 1;
  for (const auto& row : grid)
    for (const auto& v : row) width = std::max(width, v.get_str().size());
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += pad(row[c].get_str(), width);
    }
    out += '\n';
  }
  return out;
}

std::string coefficients_csv(const std::vector<CoefficientReport>& reports) {
  std::string out = "leaves,attempt,policy";
  if (!reports.empty())
    for (const auto& [m, c] : reports.front().entries) out += ',' + mono_label(m);
  out += '\n';
  for (const auto& rep : reports) {
    out += std::to_string(rep.leaves) + ',' + std::to_string(rep.attempt) + ',' +
           placement_slug(rep.placement);
    for (const auto& [m, c] : rep.entries) out += ',' + c.to_string();
    out += '\n';
  }
  return out;
}

std::string coefficients_json(const std::vector<CoefficientReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const auto& rep : reports) {
    ordered_json o;
    o["leaves"] = rep.leaves;
    o["attempt"] = rep.attempt;
    o["policy"] = placement_slug(rep.placement);
    ordered_json coeffs;
    for (const auto& [m, c] : rep.entries) coeffs[mono_label(m)] = c.to_string();
    o["coefficients"] = std::move(coeffs);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string coefficients_text(const std::vector<CoefficientReport>& reports) {
  std::string out;
  for (const auto& rep : reports) out += rep.to_string() + '\n';
  return out;
}

}  // namespace mcsim
