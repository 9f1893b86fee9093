#include "swlyap/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "swlyap/errors.hpp"
#include "swlyap/extremal.hpp"
#include "swlyap/oracle.hpp"
#include "swlyap/periodic.hpp"

namespace swlyap::cli {

namespace {

using nlohmann::json;

std::string fmt(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Mat2 matrix_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2)
    throw ParseError(std::string("\"") + name + "\" must be a 2x2 array of numbers", 1, 1);
  for (const auto& row : j)
    for (const auto& v : row)
      if (!v.is_number())
        throw ParseError(std::string("\"") + name + "\" has a non-numeric entry", 1, 1);
  return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(),
          j[1][1].get<double>()};
}

MatrixPairInput parse_json_pair(std::string_view text, std::string source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("invalid JSON", line, col);
  }
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B"))
    throw ParseError("expected an object with keys \"A\" and \"B\"", 1, 1);
  MatrixPairInput in;
  in.a = project_traceless(matrix_from_json(doc["A"], "A"), "A");
  in.b = project_traceless(matrix_from_json(doc["B"], "B"), "B");
  in.source = std::move(source);
  if (doc.contains("label") && doc["label"].is_string()) in.label = doc["label"].get<std::string>();
  return in;
}

MatrixPairInput parse_text_pair(std::string_view text, std::string source) {
  std::vector<std::array<double, 4>> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<double> nums;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ','))
        ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',')
        ++j;
      double v = 0.0;
      const char* first = line.data() + i;
      const char* last = line.data() + j;
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError("expected a finite number, got '" + std::string(line.substr(i, j - i)) + "'",
                         line_no, static_cast<int>(i) + 1);
      nums.push_back(v);
      i = j;
    }
    if (!nums.empty()) {
      if (nums.size() != 4)
        throw ParseError("expected 4 numbers (m11 m12 m21 m22), got " + std::to_string(nums.size()),
                         line_no, 1);
      if (rows.size() == 2) throw ParseError("unexpected third matrix row", line_no, 1);
      rows.push_back({nums[0], nums[1], nums[2], nums[3]});
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (rows.size() != 2) throw ParseError("expected two matrices (A and B)", line_no, 1);
  MatrixPairInput in;
  in.a = project_traceless({rows[0][0], rows[0][1], rows[0][2], rows[0][3]}, "A");
  in.b = project_traceless({rows[1][0], rows[1][1], rows[1][2], rows[1][3]}, "B");
  in.source = std::move(source);
  return in;
}

json strategy_json(const Strategy& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SingularStrategy>)
          return {{"kind", "singular"}, {"u_star", v.u_star}};
        else if constexpr (std::is_same_v<T, ConstantStrategy>)
          return {{"kind", "constant"}, {"u", v.u}};
        else if constexpr (std::is_same_v<T, PeriodicStrategy>)
          return {{"kind", "periodic"}, {"t", v.t}, {"s", v.s}};
        else
          return nullptr;
      },
      s);
}

std::string strategy_text(const Strategy& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SingularStrategy>)
          return " u*=" + fmt(v.u_star);
        else if constexpr (std::is_same_v<T, ConstantStrategy>)
          return " u=" + std::to_string(v.u);
        else if constexpr (std::is_same_v<T, PeriodicStrategy>)
          return " t=" + fmt(v.t) + " s=" + fmt(v.s);
        else
          return "";
      },
      s);
}

// Characteristic window for the grid search: one full turn for rotations,
// two time units otherwise.
double grid_extent(const Sl2& m) {
  const auto ep = eigen_parameter(m);
  return ep.kind == EigenKind::Imaginary ? 2.0 * std::numbers::pi / ep.alpha : 2.0;
}

void add_check(VerifyResult& r, std::string name, bool ok, double value, double bound,
               std::string detail = {}) {
  r.checks.push_back({std::move(name), ok, value, bound, std::move(detail)});
}

}  // namespace

Sl2 project_traceless(const Mat2& m, std::string_view name) {
  if (!m.finite()) throw TraceError(std::string(name) + " has non-finite entries");
  const double tr = m.trace();
  if (std::abs(tr) > 1e-12 * m.frobenius())
    throw TraceError(std::string(name) + " is not traceless: tr = " + fmt(tr, 17));
  return Sl2::traceless_part(m);
}

MatrixPairInput parse_matrix_pair(std::string_view text, std::string source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{')
    return parse_json_pair(text, std::move(source));
  return parse_text_pair(text, std::move(source));
}

MatrixPairInput load_matrix_pair(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_pair(ss.str(), path);
}

ControlSchedule parse_schedule(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("invalid schedule JSON", line, col);
  }
  if (!doc.is_object() || !doc.contains("segments") || !doc["segments"].is_array())
    throw ParseError("schedule needs a \"segments\" array", 1, 1);
  std::vector<Segment> segs;
  for (const auto& item : doc["segments"]) {
    if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
      segs.push_back({item[0].get<double>(), item[1].get<double>()});
    } else if (item.is_object() && item.contains("duration") && item.contains("u")) {
      segs.push_back({item["duration"].get<double>(), item["u"].get<double>()});
    } else {
      throw ParseError("segment must be [duration, u] or {\"duration\", \"u\"}", 1, 1);
    }
  }
  const bool periodic = doc.value("periodic", false);
  try {
    return ControlSchedule(std::move(segs), periodic);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 1, 1);
  }
}

double classification_tol_from_env() {
  const char* env = std::getenv("SWLYAP_TOL");
  if (!env || !*env) return kClassifyTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) return kClassifyTol;
  return v;
}

std::string render_report(const ExponentReport& rep) {
  const auto& inv = rep.invariants;
  std::string out = "case=" + std::string(to_string(rep.label.tag)) + " value=" + fmt(rep.value);
  out += strategy_text(rep.strategy);
  out += " a=" + fmt(inv.a) + " b=" + fmt(inv.b) + " c=" + fmt(inv.c);
  out += rep.label.swapped ? " swapped=true" : " swapped=false";
  return out;
}

json report_json(const ExponentReport& rep) {
  return {{"value", rep.value},
          {"case", std::string(to_string(rep.label.tag))},
          {"swapped", rep.label.swapped},
          {"invariants", {{"a", rep.invariants.a}, {"b", rep.invariants.b}, {"c", rep.invariants.c}}},
          {"strategy", strategy_json(rep.strategy)}};
}

double Range::at(int i) const { return lo + (hi - lo) * static_cast<double>(i) / (n - 1); }

Range parse_range(std::string_view text) {
  Range r;
  std::array<std::string_view, 3> parts;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t colon = k < 2 ? text.find(':', pos) : text.size();
    if (colon == std::string_view::npos) throw ParseError("range must be lo:hi:n", 1, static_cast<int>(pos) + 1);
    parts[k] = text.substr(pos, colon - pos);
    pos = colon + 1;
  }
  auto num = [&](std::string_view s, int col) {
    double v = 0.0;
    const char* f = s.data();
    if (!s.empty() && *f == '+') ++f;
    const auto [p, ec] = std::from_chars(f, s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      throw ParseError("bad number '" + std::string(s) + "' in range", 1, col);
    return v;
  };
  r.lo = num(parts[0], 1);
  r.hi = num(parts[1], static_cast<int>(parts[0].size()) + 2);
  const double n = num(parts[2], static_cast<int>(parts[0].size() + parts[1].size()) + 3);
  if (n < 2.0 || n != std::floor(n) || n > 1e7) throw ParseError("range needs an integer n >= 2", 1, 1);
  r.n = static_cast<int>(n);
  return r;
}

std::vector<SweepCell> sweep_cells(const SweepSpec& spec, double tol) {
  std::vector<SweepCell> cells;
  cells.reserve(static_cast<std::size_t>(spec.b.n) * spec.c.n);
  for (int i = 0; i < spec.b.n; ++i) {
    for (int j = 0; j < spec.c.n; ++j) {
      SweepCell cell;
      cell.b = spec.b.at(i);
      cell.c = spec.c.at(j);
      try {
        const auto r = exponent_from_invariants({spec.a_fixed, cell.b, cell.c}, tol);
        cell.tag = r.tag;
        cell.ell = r.value;
      } catch (const UnclassifiableError&) {
        cell.tag.reset();
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

void write_sweep_csv(const SweepSpec& spec, std::ostream& out, double tol) {
  out << "b,c,case,ell\n";
  for (const auto& cell : sweep_cells(spec, tol)) {
    out << fmt(cell.b, 12) << ',' << fmt(cell.c, 12) << ',';
    if (cell.tag) {
      out << to_string(*cell.tag) << ',' << fmt(cell.ell, 12) << '\n';
    } else {
      out << "Infeasible,\n";
    }
  }
}

void write_sweep_csv(const SweepSpec& spec, const std::string& path, double tol) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_sweep_csv(spec, out, tol);
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

bool VerifyResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

VerifyResult run_verify(const MatrixPairInput& input, const VerifyOptions& opts) {
  const Sl2& a = input.a;
  const Sl2& b = input.b;
  VerifyResult r;
  r.report = lyapunov_exponent(a, b, {opts.classify_tol, kIndependenceTol});
  const double ell = r.report.value;

  {
    const double closed = commutator_trace_sq(a, b);
    const double direct = oracle::commutator_trace_sq_direct(a.mat(), b.mat());
    const double err = std::abs(closed - direct) / std::max(1.0, std::abs(direct));
    add_check(r, "commutator trace identity", err <= 1e-9, err, 1e-9);
  }
  {
    double worst = 0.0;
    double worst_det = 0.0;
    for (const Sl2& m : {a, b, 0.5 * (a + b)}) {
      const double n = std::max(m.frobenius(), 1e-300);
      for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double tt = t / n;  // ||tM|| = t
        const Mat2 e = expm(m, tt);
        worst = std::max(worst, oracle::relative_error(e, oracle::expm_taylor(m.mat(), tt)));
        worst_det = std::max(worst_det, std::abs(e.det() - 1.0));
      }
    }
    add_check(r, "expm vs Taylor oracle", worst <= 1e-8, worst, 1e-8);
    add_check(r, "det expm = 1", worst_det <= 1e-9, worst_det, 1e-9);
  }
  try {
    const auto sd = singular_data(a, b);
    const Sl2 vel = sd.u_star * a + (1.0 - sd.u_star) * b;
    const double res = bracket(sd.eta_star[0], vel).frobenius();
    add_check(r, "singular equilibrium", res <= 1e-10, res, 1e-10,
              sd.admissible ? "" : "u* not admissible");
  } catch (const NoSingularError&) {
    add_check(r, "singular equilibrium", true, 0.0, 1e-10, "no singular extremal (skipped)");
  }
  {
    double worst = 0.0;
    const double scale_t = 1.0 / std::max({eigen_parameter(a).alpha, eigen_parameter(b).alpha, 1.0});
    for (double t : {0.25, 0.5, 1.0, 2.0})
      for (double s : {0.25, 0.5, 1.0, 2.0}) {
        const PeriodPair p{t * scale_t, s * scale_t};
        const double direct = doubling_gap(a, b, p);
        const double closed = doubling_gap_closed_form(a, b, p);
        const double sc = std::max({1.0, std::abs(phi(a, b, p)), std::abs(closed)});
        worst = std::max(worst, std::abs(direct - closed) / sc);
      }
    add_check(r, "doubling gap closed form", worst <= 1e-9, worst, 1e-9);
  }
  {
    const GridSpec grid{grid_extent(a), grid_extent(b), opts.grid_n};
    const auto best = brute_force_lower_bound(a, b, grid);
    add_check(r, "periodic grid <= closed form", best.best_rate <= ell + 5e-3, best.best_rate,
              ell + 5e-3,
              "argmax (t, s) = (" + fmt(best.best_pair.t, 6) + ", " + fmt(best.best_pair.s, 6) + ")");
  }
  {
    const double best =
        random_schedule_probe(a, b, opts.probe_horizon, opts.probe_trials, opts.seed);
    add_check(r, "random schedules <= closed form", best <= ell + 5e-3, best, ell + 5e-3);
  }
  {
    // Replay the reported optimal strategy.
    double u_const = -1.0;
    std::optional<ControlSchedule> sched;
    double horizon = 100.0 / std::max(ell, 1.0);
    if (const auto* s = std::get_if<SingularStrategy>(&r.report.strategy)) u_const = s->u_star;
    if (const auto* c = std::get_if<ConstantStrategy>(&r.report.strategy)) u_const = c->u;
    if (const auto* p = std::get_if<PeriodicStrategy>(&r.report.strategy)) {
      sched = ControlSchedule::two_phase({p->t, p->s});
      horizon = 100.0 * (p->t + p->s);
    } else if (u_const >= 0.0) {
      sched = ControlSchedule::constant(u_const, horizon);
    }
    if (sched) {
      const auto g = propagate(a, b, *sched, horizon);
      const double err = std::abs(g.tail_rate - ell);
      add_check(r, "optimal strategy tightness", err <= 1e-6, err, 1e-6,
                "simulated " + fmt(g.tail_rate, 12));
    }
  }
  return r;
}

void print_verify_table(const VerifyResult& result, std::ostream& out) {
  out << render_report(result.report) << '\n';
  for (const auto& c : result.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(34) << c.name
        << " value=" << fmt(c.value, 6) << " bound=" << fmt(c.bound, 6);
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
}

}  // namespace swlyap::cli
