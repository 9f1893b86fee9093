#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <sstream>

#include "swlyap/cli.hpp"
#include "swlyap/errors.hpp"
#include "swlyap/exponent.hpp"
#include "swlyap/extremal.hpp"
#include "swlyap/periodic.hpp"
#include "swlyap/simulator.hpp"

namespace py = pybind11;
using namespace swlyap;

namespace {

using Rows = std::array<std::array<double, 2>, 2>;

Sl2 to_sl2(const Rows& m, const char* name) {
  return cli::project_traceless({m[0][0], m[0][1], m[1][0], m[1][1]}, name);
}

Rows to_rows(const Mat2& m) { return {{{m.m11, m.m12}, {m.m21, m.m22}}}; }

py::dict report_dict(const ExponentReport& rep) {
  py::dict d;
  d["value"] = rep.value;
  d["case"] = std::string(to_string(rep.label.tag));
  d["swapped"] = rep.label.swapped;
  d["invariants"] = py::make_tuple(rep.invariants.a, rep.invariants.b, rep.invariants.c);
  if (const auto* s = std::get_if<SingularStrategy>(&rep.strategy)) d["u_star"] = s->u_star;
  if (const auto* c = std::get_if<ConstantStrategy>(&rep.strategy)) d["u"] = c->u;
  if (const auto* p = std::get_if<PeriodicStrategy>(&rep.strategy)) d["schedule"] = py::make_tuple(p->t, p->s);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximal Lyapunov exponent of X' = X (u A + (1-u) B) on SL2(R)";

  static py::exception<Error> base(m, "Error");
  static py::exception<ParseError> parse_error(m, "ParseError", base.ptr());
  static py::exception<TraceError> trace_error(m, "TraceError", base.ptr());
  static py::exception<DomainError> domain_error(m, "DomainError", base.ptr());
  static py::exception<UnclassifiableError> unclassifiable(m, "UnclassifiableError", base.ptr());
  static py::exception<NoSingularError> no_singular(m, "NoSingularError", base.ptr());
  static py::exception<NoSolutionError> no_solution(m, "NoSolutionError", base.ptr());
  static py::exception<OverflowError> overflow(m, "OverflowError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const TraceError& e) {
      py::set_error(trace_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const UnclassifiableError& e) {
      py::set_error(unclassifiable, e.what());
    } catch (const NoSingularError& e) {
      py::set_error(no_singular, e.what());
    } catch (const NoSolutionError& e) {
      py::set_error(no_solution, e.what());
    } catch (const OverflowError& e) {
      py::set_error(overflow, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def(
      "trace_invariants",
      [](const Rows& a, const Rows& b) {
        const auto inv = trace_invariants(to_sl2(a, "A"), to_sl2(b, "B"));
        return py::make_tuple(inv.a, inv.b, inv.c);
      },
      py::arg("A"), py::arg("B"), "(tr A^2, tr B^2, tr AB)");
  m.def(
      "commutator_trace_sq", [](const Rows& a, const Rows& b) { return commutator_trace_sq(to_sl2(a, "A"), to_sl2(b, "B")); },
      py::arg("A"), py::arg("B"));
  m.def(
      "expm", [](const Rows& mat, double t) { return to_rows(expm(to_sl2(mat, "M"), t)); }, py::arg("M"),
      py::arg("t") = 1.0);

  m.def(
      "lyapunov_exponent",
      [](const Rows& a, const Rows& b, double tol) {
        return report_dict(lyapunov_exponent(to_sl2(a, "A"), to_sl2(b, "B"), {tol, kIndependenceTol}));
      },
      py::arg("A"), py::arg("B"), py::arg("tol") = kClassifyTol);
  m.def(
      "exponent_from_invariants",
      [](double a, double b, double c, double tol) {
        const auto r = exponent_from_invariants({a, b, c}, tol);
        return py::make_tuple(std::string(to_string(r.tag)), r.value);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tol") = kClassifyTol);

  m.def(
      "singular_data",
      [](const Rows& a, const Rows& b) {
        const auto sd = singular_data(to_sl2(a, "A"), to_sl2(b, "B"));
        py::dict d;
        d["u_star"] = sd.u_star;
        d["admissible"] = sd.admissible;
        d["exponent"] = sd.exponent;
        d["bounded_flow"] = sd.bounded_flow;
        d["eta_star"] = to_rows(sd.eta_star[0].mat());
        return d;
      },
      py::arg("A"), py::arg("B"));

  m.def(
      "phi", [](const Rows& a, const Rows& b, double t, double s) { return phi(to_sl2(a, "A"), to_sl2(b, "B"), PeriodPair::make(t, s)); },
      py::arg("A"), py::arg("B"), py::arg("t"), py::arg("s"));
  m.def(
      "periodic_exponent",
      [](const Rows& a, const Rows& b, double t, double s) {
        return periodic_exponent(to_sl2(a, "A"), to_sl2(b, "B"), PeriodPair::make(t, s));
      },
      py::arg("A"), py::arg("B"), py::arg("t"), py::arg("s"));
  m.def(
      "solve_switch_time", [](const Rows& a, const Rows& b, double t) { return solve_switch_time(to_sl2(a, "A"), to_sl2(b, "B"), t); },
      py::arg("A"), py::arg("B"), py::arg("t"));

  m.def(
      "simulate",
      [](const Rows& a, const Rows& b, const std::vector<std::pair<double, double>>& segments, bool periodic,
         double horizon) {
        std::vector<Segment> segs;
        for (const auto& [d, u] : segments) segs.push_back({d, u});
        const auto g = propagate(to_sl2(a, "A"), to_sl2(b, "B"), ControlSchedule(std::move(segs), periodic), horizon);
        py::dict d;
        d["log_norm"] = g.log_norm;
        d["rate"] = g.rate;
        d["tail_rate"] = g.tail_rate;
        d["max_det_drift"] = g.max_det_drift;
        return d;
      },
      py::arg("A"), py::arg("B"), py::arg("segments"), py::arg("periodic") = true, py::arg("horizon"),
      "segments: list of (duration, u)");
  m.def(
      "grid_lower_bound",
      [](const Rows& a, const Rows& b, double t_max, double s_max, int n) {
        py::gil_scoped_release release;
        const auto r = brute_force_lower_bound(to_sl2(a, "A"), to_sl2(b, "B"), {t_max, s_max, n});
        return std::make_tuple(r.best_rate, r.best_pair.t, r.best_pair.s);
      },
      py::arg("A"), py::arg("B"), py::arg("t_max"), py::arg("s_max"), py::arg("n"));
  m.def(
      "random_probe",
      [](const Rows& a, const Rows& b, double horizon, int trials, std::uint64_t seed) {
        const Sl2 sa = to_sl2(a, "A");
        const Sl2 sb = to_sl2(b, "B");
        py::gil_scoped_release release;
        return random_schedule_probe(sa, sb, horizon, trials, seed);
      },
      py::arg("A"), py::arg("B"), py::arg("horizon") = 40.0, py::arg("trials") = 500, py::arg("seed") = 1);

  m.def(
      "sweep_csv",
      [](double a, const std::string& b_range, const std::string& c_range) {
        std::ostringstream out;
        cli::write_sweep_csv({a, cli::parse_range(b_range), cli::parse_range(c_range)}, out);
        return out.str();
      },
      py::arg("a"), py::arg("b_range"), py::arg("c_range"));
}
