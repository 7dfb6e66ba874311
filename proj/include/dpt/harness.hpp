#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dpt/generators.hpp"
#include "json.hpp"

namespace dpt {

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi]; open at lo when lo_open.
struct Bracket {
  double lo = 0.0, hi = 0.0;
  bool lo_open = false;
  bool contains(double v) const { return (lo_open ? v > lo : v >= lo) && v <= hi; }
};

// One generated domain and what to evaluate on it.
struct ConfigSpec {
  std::string id;
  GenSpec gen;
  std::optional<std::array<int, 4>> quad;  // explicit marks; otherwise the generator default
  std::string group;                       // one-parameter family for exponential fits
  bool separators = true;
  bool inclusions = true;
  // annulus checks around a named interior point against a named arc (empty: skipped)
  std::string annulus_point, annulus_arc;
};

struct FitSpec {
  std::string group;
  double residual_cap = 0.1;
};

struct CorpusSpec {
  std::uint64_t seed = 7;
  std::vector<ConfigSpec> configs;
  std::map<std::string, Bracket> brackets;
  std::vector<FitSpec> fits;
  double K = 4.0;                          // separator hypothesis bound
  std::vector<double> ks{0.25, 1.0, 4.0};  // separator levels
  double el_gate = 0.5;                    // EL(AB;CD) regime for two-sided checks
  double z_log_y_el_cap = 4.0;             // Z/log(1+Y) checked when EL(BC;DA) <= cap
  double z_el_two_sided_cap = 1.0;         // Z*EL two-sided when EL <= cap
  double rho0 = 0.25;
  bool slits = true;  // cut-sandwich and conjugate-sign slit on doubly connected annuli

  static CorpusSpec default_spec();
  static std::map<std::string, Bracket> default_brackets();
  // Check names and the statement each one instantiates.
  static const std::map<std::string, std::string>& statements();
};

// Outcome of one bracketed or exact check on one configuration.
struct CheckResult {
  std::string check;
  std::string statement;
  std::string detail;  // e.g. "k=0.25" or "x=12"
  double value = 0.0;
  bool applicable = true;
  bool pass = true;
};

struct ConfigRecord {
  std::string id;
  ConfigSpec spec;
  bool ok = false;
  std::string error;
  int num_vertices = 0, num_interior = 0, num_boundary = 0;
  std::array<int, 4> marks{-1, -1, -1, -1};
  std::map<std::string, double> values;  // Z, X, Y, EL, duals, ratios, residuals
  std::map<std::string, bool> flags;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  int failures() const;
};

struct FitResult {
  std::string group;
  int points = 0;
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  bool pass = false;
  std::string error;
};

struct RatioSummary {
  double min = 0.0, max = 0.0, geomean = 0.0;
  int count = 0;
};

struct RatioReport {
  std::vector<ConfigRecord> records;  // in configuration order
  std::vector<FitResult> fits;
  std::map<std::string, RatioSummary> summary;
  std::vector<std::string> missing_coverage;  // checks never evaluated on any configuration
  double seconds = 0.0;
  int failures() const;  // failed checks, failed fits, configuration errors, coverage gaps
  bool passed() const { return failures() == 0; }
};

// Least-squares fit of y against x; residual = |r| / |y - mean(y)|. Throws SpecError with
// "insufficient points" (< 4) or "insufficient spread" (x range degenerate).
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);
// Fit of -log Z against EL over the records of one group.
FitResult fit_exponential(const RatioReport& report, const std::string& group, double residual_cap = 0.1);

ConfigRecord run_config(const CorpusSpec& spec, const ConfigSpec& cfg);
RatioReport run_corpus(const CorpusSpec& spec);

// Fixed column order; one row per configuration.
std::vector<std::string> csv_columns();
std::string report_csv(const RatioReport& report);
// Numerical body without timings (deterministic for a fixed spec).
nlohmann::json report_body_json(const RatioReport& report);
nlohmann::json report_json(const RatioReport& report);
std::string report_summary(const RatioReport& report);

nlohmann::json spec_to_json(const CorpusSpec& spec);
CorpusSpec spec_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ConfigSpec& c);
ConfigSpec config_from_json(const nlohmann::json& j);

}  // namespace dpt
