#pragma once

#include <string>
#include <vector>

#include "mcsim/protocols.hpp"

namespace mcsim {

// Fixed float rendering shared by every emitter: 12 significant digits, so
// identical inputs always serialize to identical bytes.
std::string format_double(double v);

// Sweep records in the three supported formats. CSV carries the header
// `policy,leaves,attempt,alpha,p,fidelity`, one row per record, LF line
// endings. JSON is an array of objects with the same six fields in the same
// order. Text is a padded column view of the same rows.
std::string sweep_csv(const std::vector<SweepRecord>& records);
std::string sweep_json(const std::vector<SweepRecord>& records);
std::string sweep_text(const std::vector<SweepRecord>& records);

// Integer grid (binomial-transform table) renderings. CSV is a bare matrix,
// JSON an array of integer arrays, text a right-aligned block.
std::string grid_csv(const std::vector<std::vector<mpz_class>>& grid);
std::string grid_json(const std::vector<std::vector<mpz_class>>& grid);
std::string grid_text(const std::vector<std::vector<mpz_class>>& grid);

// Coefficient reports (one per bonded-pair cell). CSV columns are
// leaves,attempt,policy followed by one column per retained monomial with
// exact rationals rendered as a/b; JSON mirrors them as string values.
std::string coefficients_csv(const std::vector<CoefficientReport>& reports);
std::string coefficients_json(const std::vector<CoefficientReport>& reports);
std::string coefficients_text(const std::vector<CoefficientReport>& reports);

}  // namespace mcsim
