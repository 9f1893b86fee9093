#pragma once

// Front-end pieces shared by the command-line tool, the Python module and the
// tests: input parsing, report rendering, the verification battery and the
// invariant-space sweep.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swlyap/exponent.hpp"
#include "swlyap/simulator.hpp"
#include "json.hpp"

namespace swlyap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

struct MatrixPairInput {
  Sl2 a;
  Sl2 b;
  std::string source;
  std::optional<std::string> label;
};

// Full 2x2 matrix -> sl2, rejecting |tr M| > 1e-12 ||M|| with TraceError.
Sl2 project_traceless(const Mat2& m, std::string_view name);

// Accepts {"A": [[..],[..]], "B": [[..],[..]], "label": ".."} or two lines of
// four numbers (row-major A, then B); '#' starts a comment.
MatrixPairInput parse_matrix_pair(std::string_view text, std::string source = "<inline>");
MatrixPairInput load_matrix_pair(const std::string& path);

// {"segments": [{"duration": d, "u": u}, ...] | [[d, u], ...], "periodic": bool}
ControlSchedule parse_schedule(std::string_view text);

// SWLYAP_TOL if set and valid, else the library default.
double classification_tol_from_env();

std::string render_report(const ExponentReport& rep);
nlohmann::json report_json(const ExponentReport& rep);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int n = 2;

  double at(int i) const;
};
// "lo:hi:n"
Range parse_range(std::string_view text);

struct SweepSpec {
  double a_fixed = 1.0;
  Range b;
  Range c;
};

struct SweepCell {
  double b = 0.0;
  double c = 0.0;
  std::optional<CaseTag> tag;  // nullopt = infeasible
  double ell = 0.0;
};

std::vector<SweepCell> sweep_cells(const SweepSpec& spec, double tol = kClassifyTol);
void write_sweep_csv(const SweepSpec& spec, std::ostream& out, double tol = kClassifyTol);
// Throws IoError when the file cannot be written.
void write_sweep_csv(const SweepSpec& spec, const std::string& path, double tol = kClassifyTol);

struct VerifyOptions {
  double probe_horizon = 40.0;
  int probe_trials = 500;
  std::uint64_t seed = 1;
  int grid_n = 80;
  double classify_tol = kClassifyTol;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct VerifyResult {
  ExponentReport report;
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

VerifyResult run_verify(const MatrixPairInput& input, const VerifyOptions& opts = {});
void print_verify_table(const VerifyResult& result, std::ostream& out);

}  // namespace swlyap::cli
