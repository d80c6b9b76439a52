#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "gausswig/verify.hpp"

namespace {

using namespace gausswig;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  double tol = 0.0;
  std::string s_variant;
  std::int64_t seed = -1;
};

void attach_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration JSON");
  cmd->add_option("--out", opts.out_path, "Output path");
  cmd->add_option("--tol", opts.tol, "Override the pipeline tolerance");
  cmd->add_option("--s-variant", opts.s_variant, "Scaling-map variant: corrected|printed")
      ->check(CLI::IsMember({"corrected", "printed"}));
  cmd->add_option("--seed", opts.seed, "Seed for randomized checks");
}

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
  if (opts.tol > 0.0) cfg.tolerances.pipeline = opts.tol;
  if (!opts.s_variant.empty())
    cfg.s_variant = opts.s_variant == "printed" ? ScaleVariant::printed : ScaleVariant::corrected;
  if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
  cfg.validate();
  return cfg;
}

int finish_report(const Report& report, const RunConfig& cfg, const std::string& out_path) {
  print_report(report);
  if (!out_path.empty()) {
    write_report(report, cfg, out_path);
    std::printf("report written to %s\n", out_path.c_str());
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gausswig: Gaussian phase-space transform toolkit"};
  app.require_subcommand(1);

  CommonOpts verify_opts, wigner_opts, tower_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run every identity suite and report residuals");
  attach_common(verify_cmd, verify_opts);

  auto* wigner_cmd = app.add_subcommand("wigner", "Export the transform of a state pair as CSV");
  attach_common(wigner_cmd, wigner_opts);
  std::string state1 = "hermite:0", state2 = "hermite:0";
  wigner_cmd->add_option("--state", state1,
                         "First state: hermite:a1,a2,... or shifted-vacuum:xi...,eta...");
  wigner_cmd->add_option("--state2", state2, "Second state");

  auto* tower_cmd = app.add_subcommand("tower", "Per-level embedding and conservation checks");
  attach_common(tower_cmd, tower_opts);
  int m_max = 0;
  tower_cmd->add_option("--m-max", m_max, "Highest truncation level (default: config truncation)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify_cmd->parsed()) {
      const RunConfig cfg = resolve_config(verify_opts);
      return finish_report(run_verify(cfg), cfg, verify_opts.out_path);
    }
    if (tower_cmd->parsed()) {
      const RunConfig cfg = resolve_config(tower_opts);
      const int levels = m_max > 0 ? m_max : std::max(cfg.truncation, 1);
      return finish_report(run_tower(cfg, levels), cfg, tower_opts.out_path);
    }
    const RunConfig cfg = resolve_config(wigner_opts);
    const std::string prefix = wigner_opts.out_path.empty() ? "wigner" : wigner_opts.out_path;
    const WignerRun res = run_wigner(cfg, state1, state2, prefix);
    std::printf("wrote %s and %s\n", res.lebesgue_csv.c_str(), res.gamma2_csv.c_str());
    std::printf("weighted norm %.12f (|norm - ||phi|| ||psi||| = %.3e)\n", res.weighted_norm,
                res.moyal_residual);
    if (res.self_pair)
      std::printf("self pair: max |Im| = %.3e\n", res.imag_residual);
    return res.moyal_residual <= 1e-5 ? 0 : 1;
  } catch (const config_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const capacity_error& e) {
    std::fprintf(stderr, "capacity error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
