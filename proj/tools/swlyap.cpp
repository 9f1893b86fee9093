// swlyap: maximal Lyapunov exponent of two-matrix switched systems on SL2(R).
//
//   swlyap exponent pair.json [--json]
//   swlyap verify pair.json [--horizon T] [--trials N] [--seed S]
//   swlyap sweep --a 1 --b -1:1:61 --c -3:3:61 -o surface.csv
//   swlyap simulate pair.json --schedule sched.json [--horizon T]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "swlyap/cli.hpp"
#include "swlyap/errors.hpp"

namespace {

using namespace swlyap;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_exponent(const std::string& path, bool as_json) {
  const auto input = cli::load_matrix_pair(path);
  const auto rep =
      lyapunov_exponent(input.a, input.b, {cli::classification_tol_from_env(), kIndependenceTol});
  if (as_json) {
    auto j = cli::report_json(rep);
    if (input.label) j["label"] = *input.label;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << cli::render_report(rep) << '\n';
  }
  return cli::kExitOk;
}

int cmd_verify(const std::string& path, const cli::VerifyOptions& opts) {
  const auto input = cli::load_matrix_pair(path);
  const auto result = cli::run_verify(input, opts);
  cli::print_verify_table(result, std::cout);
  return result.all_passed() ? cli::kExitOk : cli::kExitCheckFailed;
}

int cmd_sweep(const cli::SweepSpec& spec, const std::string& out_path) {
  cli::write_sweep_csv(spec, out_path, cli::classification_tol_from_env());
  std::cerr << "wrote " << spec.b.n * spec.c.n << " cells to " << out_path << '\n';
  return cli::kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& schedule_path,
                 std::optional<double> horizon) {
  const auto input = cli::load_matrix_pair(path);
  const auto sched = cli::parse_schedule(read_file(schedule_path));
  const double span = sched.total_duration();
  const double h = horizon ? *horizon : (sched.periodic() ? 100.0 * span : span);
  const auto g = propagate(input.a, input.b, sched, h);
  std::cout << "horizon=" << g.horizon << " log_norm=" << g.log_norm << " rate=" << g.rate
            << " tail_rate=" << g.tail_rate << '\n';
  return cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal Lyapunov exponent of X' = X (u A + (1-u) B) on SL2(R)"};
  app.require_subcommand(1);

  std::string input_path;
  bool as_json = false;
  auto* exponent = app.add_subcommand("exponent", "closed-form exponent and optimal strategy");
  exponent->add_option("file", input_path, "matrix pair (JSON or two lines of four numbers)")->required();
  exponent->add_flag("--json", as_json, "emit JSON");

  cli::VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "run the verification battery for one pair");
  verify->add_option("file", input_path, "matrix pair")->required();
  verify->add_option("--horizon", vopts.probe_horizon, "random-probe horizon");
  verify->add_option("--trials", vopts.probe_trials, "random-probe trial count");
  verify->add_option("--seed", vopts.seed, "random-probe seed");

  double a_fixed = 1.0;
  std::string b_range;
  std::string c_range;
  std::string out_path;
  auto* sweep = app.add_subcommand("sweep", "tabulate the exponent over (tr B^2, tr AB)");
  sweep->add_option("--a", a_fixed, "fixed tr(A^2)")->required();
  sweep->add_option("--b", b_range, "tr(B^2) range lo:hi:n")->required();
  sweep->add_option("--c", c_range, "tr(AB) range lo:hi:n")->required();
  sweep->add_option("-o,--output", out_path, "CSV output path")->required();

  std::string schedule_path;
  std::optional<double> sim_horizon;
  auto* simulate = app.add_subcommand("simulate", "propagate a control schedule");
  simulate->add_option("file", input_path, "matrix pair")->required();
  simulate->add_option("--schedule", schedule_path, "schedule JSON")->required();
  simulate->add_option("--horizon", sim_horizon, "simulated time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInputError;
  }

  try {
    vopts.classify_tol = cli::classification_tol_from_env();
    if (exponent->parsed()) return cmd_exponent(input_path, as_json);
    if (verify->parsed()) return cmd_verify(input_path, vopts);
    if (sweep->parsed()) {
      cli::SweepSpec spec{a_fixed, cli::parse_range(b_range), cli::parse_range(c_range)};
      return cmd_sweep(spec, out_path);
    }
    if (simulate->parsed()) return cmd_simulate(input_path, schedule_path, sim_horizon);
  } catch (const ParseError& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return cli::kExitInputError;
  } catch (const TraceError& e) {
    std::cerr << "TraceError: " << e.what() << '\n';
    return cli::kExitInputError;
  } catch (const IoError& e) {
    std::cerr << "IoError: " << e.what() << '\n';
    return cli::kExitInputError;
  } catch (const DomainError& e) {
    std::cerr << "DomainError: " << e.what() << '\n';
    return cli::kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitCheckFailed;
  }
  return cli::kExitInputError;
}
