// speq command line front end: solve / sperner / equivalence / diagnose /
// gen-labeling. Reports are JSON (valid even on failure); exit codes are
// the only success channel: 0 ok, 1 not converged, 2 input/config error,
// 3 certification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "speq/equivalence.hpp"
#include "speq/error.hpp"
#include "speq/solver.hpp"

namespace {

using speq::Errc;
using speq::Mode;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) speq::raise(Errc::invalid_config, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) speq::raise(Errc::invalid_config, "cannot write " + out_path);
  out << content;
}

std::string error_json(const speq::Error& e) {
  nlohmann::json j;
  j["error"] = {{"code", speq::errc_name(e.code())}, {"message", e.what()}};
  return j.dump(2) + "\n";
}

Mode parse_mode(const std::string& mode) {
  if (mode == "float") return Mode::floating;
  if (mode == "rational") return Mode::rational;
  speq::raise(Errc::invalid_config, "mode must be float or rational");
}

struct CommonArgs {
  std::string input;
  std::string out;
  std::string mode = "float";
  speq::SolverConfig cfg;
};

int cmd_solve(const CommonArgs& args, const std::string& csv_path) {
  speq::SolverConfig cfg = args.cfg;
  cfg.mode = parse_mode(args.mode);
  auto econ = speq::economy_from_json(read_file(args.input), cfg.mode);
  auto report = speq::solve(econ, cfg);
  write_output(args.out, speq::report_to_json(report));
  if (!csv_path.empty()) write_output(csv_path, speq::report_to_csv(report));
  return report.converged ? 0 : 1;
}

int cmd_sperner(const CommonArgs& args, const std::string& strategy) {
  auto lab = speq::labeling_from_json(read_file(args.input));
  auto violations = speq::validate_proper(lab);
  if (!violations.empty()) {
    nlohmann::json j;
    auto list = nlohmann::json::array();
    for (const auto& v : violations) {
      nlohmann::json e;
      e["vertex"] = v.vertex;
      e["label"] = v.label;
      e["rule"] = v.rule;
      e["detail"] = v.detail;
      list.push_back(std::move(e));
    }
    j["error"] = {{"code", speq::errc_name(Errc::improper_labeling)},
                  {"message", "labeling violates the labeling rules"},
                  {"violations", std::move(list)}};
    write_output(args.out, j.dump(2) + "\n");
    return 2;
  }
  speq::SearchResult result;
  if (strategy == "enumerate") {
    result = speq::enumerate_fully_labeled(lab);
  } else if (strategy == "path") {
    result = speq::path_follow(lab);
  } else {
    speq::raise(Errc::invalid_config, "strategy must be enumerate or path");
  }
  write_output(args.out, speq::search_result_to_json(result));
  return result.cells.empty() ? 1 : 0;
}

int cmd_equivalence(const CommonArgs& args) {
  if (parse_mode(args.mode) != Mode::rational)
    speq::raise(Errc::invalid_config, "the equivalence command requires --mode rational");
  speq::SolverConfig cfg = args.cfg;
  cfg.mode = Mode::rational;
  auto lab = speq::labeling_from_json(read_file(args.input));
  auto cert = speq::sperner_via_equilibrium(lab, cfg);
  write_output(args.out, speq::certificate_to_json(cert));
  return 0;
}

int cmd_diagnose(const CommonArgs& args, const std::string& epsilon) {
  speq::SolverConfig cfg = args.cfg;
  cfg.mode = parse_mode(args.mode);
  cfg.slnc_epsilon = speq::parse_rational(epsilon);
  auto econ = speq::economy_from_json(read_file(args.input), cfg.mode);
  auto report = speq::slnc_diagnostic(econ, cfg);
  write_output(args.out, speq::slnc_report_to_json(report));
  return 0;
}

int cmd_gen_labeling(int n, std::int64_t m, std::uint64_t seed,
                     const std::string& out) {
  auto lab = speq::random_proper_labeling(speq::subdivide(n, m), seed);
  write_output(out, speq::labeling_to_json(lab));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplicial equilibrium toolkit"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string csv_path;
  std::string strategy = "enumerate";
  std::string epsilon = "1/5";
  int gen_n = 2;
  std::int64_t gen_m = 4;
  std::uint64_t seed = 20240601;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--m-start", args.cfg.m_start, "initial grid resolution");
    cmd->add_option("--m-max", args.cfg.m_max, "resolution cap");
    cmd->add_option("--growth", args.cfg.growth, "refinement factor");
    cmd->add_option("--tol", args.cfg.tol, "equilibrium residual target");
  };

  auto* solve = app.add_subcommand("solve", "compute an approximate equilibrium");
  solve->add_option("economy", args.input, "economy config (JSON)")->required();
  add_solver_flags(solve);
  solve->add_option("--mode", args.mode, "float or rational");
  solve->add_option("--out", args.out, "report path (default stdout)");
  solve->add_option("--csv", csv_path, "also write per-level CSV rows");

  auto* sperner = app.add_subcommand("sperner", "find fully labeled cells");
  sperner->add_option("labeling", args.input, "labeling file (JSON)")->required();
  sperner->add_option("--strategy", strategy, "enumerate or path");
  sperner->add_option("--out", args.out, "result path (default stdout)");

  auto* equivalence =
      app.add_subcommand("equivalence", "certify a fully labeled cell through the induced economy");
  equivalence->add_option("labeling", args.input, "labeling file (JSON)")->required();
  equivalence->add_option("--m-max", args.cfg.m_max, "refinement cap");
  equivalence->add_option("--growth", args.cfg.growth, "refinement factor");
  args.mode = "float";
  equivalence->add_option("--mode", args.mode, "must be rational");
  equivalence->add_option("--out", args.out, "certificate path (default stdout)");

  auto* diagnose = app.add_subcommand("diagnose", "sequential local non-constancy diagnostic");
  diagnose->add_option("economy", args.input, "economy config (JSON)")->required();
  diagnose->add_option("--eta", args.cfg.slnc_eta, "near-equilibrium threshold");
  diagnose->add_option("--epsilon", epsilon, "cover cell diameter");
  diagnose->add_option("--m-max", args.cfg.m_max, "sampling resolution cap");
  diagnose->add_option("--mode", args.mode, "float or rational");
  diagnose->add_option("--out", args.out, "report path (default stdout)");

  auto* gen = app.add_subcommand("gen-labeling", "write a random proper labeling");
  gen->add_option("--n", gen_n, "simplex dimension");
  gen->add_option("--m", gen_m, "grid resolution");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", args.out, "labeling path (default stdout)");

  // The equivalence command defaults to the only mode it accepts.
  equivalence->preparse_callback([&](std::size_t) { args.mode = "rational"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(args, csv_path);
    if (sperner->parsed()) return cmd_sperner(args, strategy);
    if (equivalence->parsed()) return cmd_equivalence(args);
    if (diagnose->parsed()) return cmd_diagnose(args, epsilon);
    if (gen->parsed()) return cmd_gen_labeling(gen_n, gen_m, seed, args.out);
  } catch (const speq::Error& e) {
    try {
      write_output(args.out, error_json(e));
    } catch (...) {
      std::cerr << e.what() << "\n";
    }
    return e.code() == Errc::not_fully_labeled ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
