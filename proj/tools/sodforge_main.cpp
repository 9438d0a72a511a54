// sod-forge: build, mutate and verify semiorthogonal decompositions for the
// generalized linear duality constructions.
//
// Exit codes: 0 success, 1 check/replay failure, 2 parse/validation error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sodforge/json_io.hpp"
#include "sodforge/scenario.hpp"

namespace {

using namespace sodforge;

struct GeometryFlags {
  int N = 0;
  int k = 0;
  std::optional<long long> sing;
  std::optional<long long> base;
  std::vector<std::string> ranks;

  void attach(CLI::App* cmd, bool required = true) {
    auto* n_opt = cmd->add_option("--N", N, "rank of V");
    auto* k_opt = cmd->add_option("--k", k, "rank of K");
    if (required) {
      n_opt->required();
      k_opt->required();
    }
    cmd->add_option("--sing", sing, "K0 rank of D(X~); 0 or absent: locally free");
    cmd->add_option("--base", base, "K0 rank of D(S)");
    cmd->add_option("--rank", ranks, "rank assignment SYM=INT (repeatable)");
  }

  Scenario scenario() const {
    Scenario s;
    if (N != 0 || k != 0) {
      s.geometry = GeometryInput(N, k, sing, base);
      s.geometry_declared = true;
    }
    for (const auto& spec : ranks) {
      auto eq = spec.find('=');
      if (eq == std::string::npos)
        throw ValidationError("--rank expects SYM=INT, got '" + spec + "'");
      s.ranks.emplace_back(spec.substr(0, eq), std::stoll(spec.substr(eq + 1)));
    }
    return s;
  }
};

int emit(const TaskOutcome& outcome) {
  for (const auto& line : outcome.lines) std::cout << line << "\n";
  if (!outcome.render.empty()) std::cout << outcome.render;
  std::cout << outcome.document.dump(2) << "\n";
  return outcome.exit_class;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symbolic calculus for semiorthogonal decompositions"};
  app.require_subcommand(1);

  GeometryFlags dual_flags, section_flags, replay_flags, lefschetz_flags,
      render_flags, check_flags;
  int section_m = 1, section_n = 1;
  int op_r = 2;
  std::string op_form = "right";
  std::string render_format = "ascii";
  std::string grid_file, derivation_file, scenario_file;

  auto* dual = app.add_subcommand("dual", "generalized linear dual of P(L) in P(V)");
  dual_flags.attach(dual);

  auto* section = app.add_subcommand("section", "fundamental-theorem section SODs");
  section_flags.attach(section);
  section->add_option("--m", section_m, "Lefschetz length of A")->required();
  section->add_option("--n", section_n, "Lefschetz length of A^nat")->required();

  auto* replay_cmd = app.add_subcommand("replay", "replay a duality derivation");
  replay_flags.attach(replay_cmd, false);
  replay_cmd->add_option("--file", derivation_file, "derivation JSON file to replay");

  auto* lefschetz_cmd =
      app.add_subcommand("lefschetz", "Lefschetz structure of the blown-up dual");
  lefschetz_flags.attach(lefschetz_cmd);

  auto* blowup_cmd = app.add_subcommand("blowup", "blow-up decomposition");
  blowup_cmd->add_option("--r", op_r, "codimension of the center")->required();
  blowup_cmd->add_option("--form", op_form, "right|left");

  auto* cayley_cmd = app.add_subcommand("cayley", "universal-hyperplane decomposition");
  cayley_cmd->add_option("--r", op_r, "rank of the bundle")->required();
  cayley_cmd->add_option("--form", op_form, "right|left");

  auto* check_cmd = app.add_subcommand("check", "rank cross-checks against the Betti oracle");
  check_cmd->add_option("--rank", check_flags.ranks, "rank override SYM=INT (repeatable)");

  auto* render_cmd = app.add_subcommand("render", "render a Lefschetz grid");
  render_flags.attach(render_cmd, false);
  render_cmd->add_option("--format", render_format, "ascii|svg");
  render_cmd->add_option("--grid-file", grid_file, "render a grid JSON file instead");

  auto* run_cmd = app.add_subcommand("run", "run a scenario file");
  run_cmd->add_option("file", scenario_file, "scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*dual) {
      TaskDescriptor t;
      t.kind = TaskDescriptor::Kind::Dual;
      return emit(run_task(t, dual_flags.scenario()));
    }
    if (*section) {
      TaskDescriptor t;
      t.kind = TaskDescriptor::Kind::Section;
      t.m = section_m;
      t.n = section_n;
      return emit(run_task(t, section_flags.scenario()));
    }
    if (*replay_cmd) {
      if (!derivation_file.empty()) {
        DerivationFile file = decode_derivation(Json::parse(slurp(derivation_file)));
        ReplayReport report = replay(file.derivation, file.rules);
        std::cout << encode_replay_report(report).dump(2) << "\n";
        return report.ok ? 0 : 1;
      }
      Scenario s = replay_flags.scenario();
      if (!s.geometry_declared)
        throw ValidationError("replay needs --N/--k or --file");
      TaskDescriptor t;
      t.kind = TaskDescriptor::Kind::Replay;
      return emit(run_task(t, s));
    }
    if (*lefschetz_cmd) {
      TaskDescriptor t;
      t.kind = TaskDescriptor::Kind::Lefschetz;
      return emit(run_task(t, lefschetz_flags.scenario()));
    }
    if (*blowup_cmd || *cayley_cmd) {
      TaskDescriptor t;
      t.kind = *blowup_cmd ? TaskDescriptor::Kind::Blowup : TaskDescriptor::Kind::Cayley;
      t.r = op_r;
      if (op_form != "right" && op_form != "left")
        throw ValidationError("--form must be right or left");
      t.form = op_form;
      return emit(run_task(t, Scenario{}));
    }
    if (*check_cmd) {
      TaskDescriptor t;
      t.kind = TaskDescriptor::Kind::Check;
      return emit(run_task(t, check_flags.scenario()));
    }
    if (*render_cmd) {
      if (!grid_file.empty()) {
        Grid grid = decode_grid(Json::parse(slurp(grid_file)));
        GridFormat fmt = render_format == "svg" ? GridFormat::Svg : GridFormat::Ascii;
        std::cout << render_grid(grid, fmt);
        return 0;
      }
      Scenario s = render_flags.scenario();
      if (!s.geometry_declared)
        throw ValidationError("render needs --N/--k or --grid-file");
      TaskDescriptor t;
      t.kind = TaskDescriptor::Kind::Render;
      t.format = render_format;
      return emit(run_task(t, s));
    }
    if (*run_cmd) {
      Scenario scenario = parse_scenario(slurp(scenario_file));
      return run_scenario(scenario, std::cout, std::cerr);
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
