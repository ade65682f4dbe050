#include "CLI11.hpp"

#include "uavsim/config.hpp"
#include "uavsim/csv.hpp"
#include "uavsim/scenario_io.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

/* Config/validation problems exit 1; failures writing results exit 2. */
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("short write to '" + path + "'");
}

void print_summary(const uavsim::RunSummary& rs) {
  using uavsim::fmt6;
  std::cout << "slots " << rs.slots.size() << "  excluded_users " << rs.excluded_users << '\n'
            << "mean_urllc_covered " << fmt6(rs.mean_urllc_covered) << '\n'
            << "mean_urllc_tput_bps " << fmt6(rs.mean_urllc_tput) << '\n'
            << "mean_embb_tput_bps " << fmt6(rs.mean_embb_tput) << '\n'
            << "mean_sum_tput_bps " << fmt6(rs.mean_sum_tput) << '\n'
            << "std_sum_tput_bps " << fmt6(rs.std_sum_tput) << '\n'
            << "mean_displacement_m " << fmt6(rs.mean_displacement) << '\n'
            << "violations " << rs.violations << " of " << rs.urllc_user_slots
            << " urllc user-slots\n";
}

uavsim::SweepParam parse_param(const std::string& s) {
  if (s == "coverage_radius") return uavsim::SweepParam::CoverageRadius;
  if (s == "obstacles") return uavsim::SweepParam::Obstacles;
  return uavsim::SweepParam::Velocity;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded UAV placement simulator for mixed URLLC/eMBB traffic"};
  app.require_subcommand(1);

  std::string cfg_path, out_path, trace_path, algo_str, param_str, scen_path;
  std::vector<std::string> sets;
  std::vector<double> values;
  std::uint64_t seed = 0;
  int seeds = 1;
  bool det_fading = false, compare_baseline = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", cfg_path, "Config file (INI sections, see README)")->required();
    cmd->add_option("--seed", seed, "Override sim.seed");
    cmd->add_option("--algorithm", algo_str, "proposed|baseline")
        ->check(CLI::IsMember({"proposed", "baseline"}));
    cmd->add_flag("--deterministic-fading", det_fading, "Unit fading gain, no shadowing");
    cmd->add_option("--set", sets, "Extra section.key=value overrides")
        ->type_name("KEY=VALUE");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "One simulation run, metrics CSV out");
  add_common(run_cmd);
  run_cmd->add_option("--out", out_path, "Metrics CSV path")->required();
  run_cmd->add_option("--trace", trace_path, "Per-slot plan trace CSV path");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep, long-format CSV out");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--param", param_str, "Swept parameter")
      ->check(CLI::IsMember({"coverage_radius", "obstacles", "velocity"}))
      ->required();
  sweep_cmd->add_option("--values", values, "Comma-separated sweep values")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--seeds", seeds, "Seeds per value (seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--compare-baseline", compare_baseline,
                      "Also run the min-displacement baseline at every point");
  sweep_cmd->add_option("--out", out_path, "Sweep CSV path")->required();

  CLI::App* replay_cmd = app.add_subcommand("replay", "Re-run a saved scenario byte-exactly");
  replay_cmd->add_option("--scenario", scen_path, "Scenario file from a prior run")->required();
  replay_cmd->add_option("--out", out_path, "Metrics CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    std::cerr << "uavsim: " << e.what() << '\n';
    return 1;
  }

  try {
    if (replay_cmd->parsed()) {
      const uavsim::ScenarioFile sf = uavsim::load_scenario(scen_path);
      const uavsim::RunSummary rs = uavsim::run_from(sf.state, sf.config);
      write_file(out_path, uavsim::metrics_csv(rs.slots));
      print_summary(rs);
      return 0;
    }

    uavsim::SimConfig cfg = uavsim::load_config(cfg_path);
    for (const std::string& kv : sets) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("config: --set expects section.key=value, got '" + kv + "'");
      uavsim::set_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    CLI::App* active = run_cmd->parsed() ? run_cmd : sweep_cmd;
    if (active->count("--seed")) cfg.seed = seed;
    if (active->count("--algorithm"))
      cfg.algorithm = (algo_str == "baseline") ? uavsim::Algorithm::Baseline
                                               : uavsim::Algorithm::Proposed;
    if (det_fading) cfg.fading = uavsim::FadingMode::Deterministic;
    uavsim::validate_config(cfg);

    if (run_cmd->parsed()) {
      const uavsim::SimState st = uavsim::init_state(cfg);
      const std::string scenario_text = uavsim::emit_scenario(cfg, st);
      const uavsim::RunSummary rs = uavsim::run_from(st, cfg);
      write_file(out_path, uavsim::metrics_csv(rs.slots));
      write_file(out_path + ".config", uavsim::emit_config(cfg));
      write_file(out_path + ".scenario", scenario_text);
      if (!trace_path.empty()) write_file(trace_path, uavsim::trace_csv(rs.slots));
      print_summary(rs);
    } else {
      const std::vector<uavsim::SweepRow> rows =
          uavsim::sweep(cfg, parse_param(param_str), values, seeds, compare_baseline);
      write_file(out_path, uavsim::sweep_csv(rows));
      write_file(out_path + ".config", uavsim::emit_config(cfg));
      std::cout << "sweep rows " << rows.size() << '\n';
    }
    return 0;
  } catch (const IoError& e) {
    std::cerr << "uavsim: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "uavsim: " << e.what() << '\n';
    return 1;
  }
}
