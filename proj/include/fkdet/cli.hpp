#pragma once

// Subcommand dispatch for the fkdet tool. run() is independent of argv
// parsing so it can be driven from tests and bindings.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fkdet {

/// Invalid or inconsistent configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  /// mahler | fkdet-zd | fkdet-finite | lehmer-scan | approx-chain |
  /// exact-constants | trace-check
  std::string subcommand;

  // Inputs. Inline expressions and files are mutually exclusive.
  std::optional<std::string> poly;         // one polynomial
  std::optional<std::string> matrix;       // "[[a, b], [c, d]]"
  std::optional<std::string> matrix_file;  // JSON {rank, rows, cols, entries}
  std::optional<std::string> elem;         // one group ring element
  std::size_t rank = 0;                    // 0 = infer

  // Groups.
  bool trivial = false;
  std::optional<std::size_t> cyclic;
  std::optional<std::string> abelian;      // "2x3"
  std::optional<std::string> group_file;   // JSON {order, identity, table}

  // Measures.
  std::optional<std::string> method;       // jensen | quadrature | boyd_lawton
  std::size_t grid = 2048;
  std::size_t schedule_count = 4;
  std::int64_t min_k2 = 25;
  bool via_specialization = false;

  // Scans.
  std::string variant = "Lambda^w_1";
  std::optional<std::string> zd_box;       // "10" or "3,1"
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::int64_t coeff_bound = 1;
  std::size_t support_limit = 0;
  std::optional<std::uint64_t> budget;
  double one_threshold = 1e-9;
  bool survey = false;

  // Quotient chains and traces.
  std::optional<std::string> chain;        // "2..40", "2,4,8", "2x2,4x4"
  std::optional<std::string> moduli;       // "5" or "5x5"
  std::size_t degree = 2;
  double tolerance = 1e-6;
  std::optional<std::int64_t> torsion;

  std::string format = "json";             // json | text | csv
  std::optional<std::string> output;       // path; stdout when absent
};

struct RunResult {
  int exit_code = 0;
  std::string output;  // report in the requested format
  std::string error;   // structured JSON error, empty on success
};

/// Validates the configuration, runs the subcommand and renders the report.
/// Exit status 0 on success, 1 on domain errors, 2 on configuration errors.
RunResult run(const RunConfig& config);

/// run() plus writing the report to config.output (or `out`) and errors to `err`.
int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Structured JSON error text for the error stream.
std::string error_json(const std::string& kind, const std::string& message, int exit_code);

}  // namespace fkdet
