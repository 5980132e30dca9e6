// phicheck: run condition checkers, envelope tabulation, the (A1)->(M)
// constant chain, Jensen checks and Luxemburg norms from an analysis config.
//
// Exit codes: 0 pass, 1 fail (witness emitted), 2 config or runtime error.
// Identical config + seed produce byte-identical report files.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "orlicz/analysis.hpp"
#include "orlicz/errors.hpp"

using namespace orlicz;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "analysis config file")->required();
  cmd->add_option("--out", c.out_dir, "output directory for report files");
  cmd->add_option("--seed", c.seed, "override the [run] seed");
  cmd->add_option("--tol", c.tol, "override the [conditions] tol");
}

AnalysisConfig load(const Common& c) {
  AnalysisConfig cfg = load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  if (c.tol) {
    if (!(*c.tol >= 0)) throw ConfigError("--tol must be nonnegative");
    cfg.tol = *c.tol;
  }
  return cfg;
}

int emit(const Common& c, const RunResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(c.out_dir);
  {
    std::ofstream rep(fs::path(c.out_dir) / "report.txt", std::ios::binary);
    rep << r.report;
    if (!rep) throw ConfigError("cannot write report.txt under " + c.out_dir);
  }
  if (!r.csv.empty()) {
    std::ofstream csv(fs::path(c.out_dir) / "envelope.csv", std::ios::binary);
    csv << r.csv;
    if (!csv) throw ConfigError("cannot write envelope.csv under " + c.out_dir);
  }
  std::cout << r.verdict_line << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condition checks for anisotropic generalized Orlicz integrands"};
  app.require_subcommand(1);

  Common c;
  std::string condition;

  CLI::App* check = app.add_subcommand("check", "run one condition checker");
  check
      ->add_option("condition", condition,
                   "a0 | inc1 | almost-convex | equiv-conv | a1 | m | "
                   "azero-reduction | strong-phi")
      ->required();
  add_common(check, c);

  CLI::App* env = app.add_subcommand("envelope", "tabulate the convex minorant as CSV");
  add_common(env, c);
  CLI::App* chain = app.add_subcommand("chain", "(A1) => (M) constant chain");
  add_common(chain, c);
  CLI::App* jensen = app.add_subcommand("jensen", "Jensen inequality on the configured field");
  add_common(jensen, c);
  CLI::App* norm = app.add_subcommand("norm", "Luxemburg norm of the configured field");
  add_common(norm, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunResult r;
    if (check->parsed()) r = run_check(load(c), condition);
    else if (env->parsed()) r = run_envelope(load(c));
    else if (chain->parsed()) r = run_chain(load(c));
    else if (jensen->parsed()) r = run_jensen(load(c));
    else r = run_norm(load(c));
    return emit(c, r);
  } catch (const ConfigError& e) {
    std::cout << "CONFIG-ERROR " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cout << "ERROR " << e.what() << std::endl;
    return 2;
  }
}
