#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sodforge/hpd.hpp"
#include "sodforge/json_io.hpp"
#include "sodforge/verification.hpp"

namespace sodforge {

/// Parse failure with 1-based line/column of the offending token.
struct ParseError : ValidationError {
  std::size_t line;
  std::size_t column;
  ParseError(std::size_t l, std::size_t c, const std::string& msg)
      : ValidationError("line " + std::to_string(l) + ", col " + std::to_string(c) +
                        ": " + msg),
        line(l),
        column(c) {}
};

struct TaskDescriptor {
  enum class Kind { Dual, Section, Replay, Lefschetz, Blowup, Cayley, Check, Render };
  Kind kind = Kind::Dual;
  std::optional<int> m, n, r;
  std::string form = "right";    // blowup / cayley
  std::string format = "ascii";  // render
};

inline std::string task_name(TaskDescriptor::Kind k) {
  switch (k) {
    case TaskDescriptor::Kind::Dual: return "dual";
    case TaskDescriptor::Kind::Section: return "section";
    case TaskDescriptor::Kind::Replay: return "replay";
    case TaskDescriptor::Kind::Lefschetz: return "lefschetz";
    case TaskDescriptor::Kind::Blowup: return "blowup";
    case TaskDescriptor::Kind::Cayley: return "cayley";
    case TaskDescriptor::Kind::Check: return "check";
    case TaskDescriptor::Kind::Render: return "render";
  }
  return "?";
}

/// A parsed scenario: geometry, rank assignments (insertion order preserved
/// for printing), tasks to run in order, optional output directory.
struct Scenario {
  GeometryInput geometry;
  bool geometry_declared = false;
  std::vector<std::pair<std::string, long long>> ranks;
  std::vector<TaskDescriptor> tasks;
  std::optional<std::string> output_dir;

  /// Rank lookup map; a bare name N also binds the wrapped form D(N), so
  /// `rank S=1` feeds the symbol D(S).
  RankAssignment rank_map() const {
    RankAssignment out;
    for (const auto& [name, value] : ranks) out[name] = value;
    for (const auto& [name, value] : ranks) {
      std::string wrapped = "D(" + name + ")";
      if (!out.count(wrapped)) out[wrapped] = value;
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Parsing. One statement per line; '#' starts a comment; statements are
//   geometry k=v ...   (keys N, k, sing, base)
//   rank SYM=int ...
//   task NAME [k=v ...]
//   render grid format=ascii|svg
//   output dir=PATH

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

inline std::pair<std::string, std::string> split_key_value(const Token& tok,
                                                           std::size_t lineno) {
  auto eq = tok.text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.text.size())
    throw ParseError(lineno, tok.column, "expected key=value, got '" + tok.text + "'");
  return {tok.text.substr(0, eq), tok.text.substr(eq + 1)};
}

inline long long parse_integer(const std::string& value, std::size_t lineno,
                               std::size_t column) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw ParseError(lineno, column, "expected an integer, got '" + value + "'");
  }
  if (used != value.size())
    throw ParseError(lineno, column, "expected an integer, got '" + value + "'");
  return v;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  Scenario scenario;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  std::optional<int> N, k;
  std::optional<long long> sing, base;
  std::size_t geometry_line = 0, geometry_col = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0].text;

    if (head == "geometry") {
      if (scenario.geometry_declared || geometry_line)
        throw ParseError(lineno, tokens[0].column, "duplicate geometry statement");
      geometry_line = lineno;
      geometry_col = tokens[0].column;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [key, value] = detail::split_key_value(tokens[i], lineno);
        long long v = detail::parse_integer(value, lineno, tokens[i].column);
        if (key == "N") N = static_cast<int>(v);
        else if (key == "k") k = static_cast<int>(v);
        else if (key == "sing") sing = v;
        else if (key == "base") base = v;
        else
          throw ParseError(lineno, tokens[i].column, "unknown geometry key '" + key + "'");
      }
      if (!N || !k)
        throw ParseError(lineno, tokens[0].column, "geometry needs both N= and k=");
      try {
        scenario.geometry = GeometryInput(*N, *k, sing, base);
      } catch (const ValidationError& e) {
        throw ParseError(lineno, tokens[0].column, e.what());
      }
      scenario.geometry_declared = true;
    } else if (head == "rank") {
      if (tokens.size() < 2)
        throw ParseError(lineno, tokens[0].column, "rank needs SYM=int");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [sym, value] = detail::split_key_value(tokens[i], lineno);
        long long v = detail::parse_integer(value, lineno, tokens[i].column);
        if (v < 0)
          throw ParseError(lineno, tokens[i].column, "ranks must be nonnegative");
        scenario.ranks.emplace_back(sym, v);
      }
    } else if (head == "task" || head == "render") {
      TaskDescriptor task;
      std::size_t arg_start = 0;
      if (head == "render") {
        if (tokens.size() < 2 || tokens[1].text != "grid")
          throw ParseError(lineno, tokens[0].column, "render statement is 'render grid format=...'");
        task.kind = TaskDescriptor::Kind::Render;
        arg_start = 2;
      } else {
        if (tokens.size() < 2)
          throw ParseError(lineno, tokens[0].column, "task needs a name");
        const std::string& name = tokens[1].text;
        if (name == "dual") task.kind = TaskDescriptor::Kind::Dual;
        else if (name == "section") task.kind = TaskDescriptor::Kind::Section;
        else if (name == "replay") task.kind = TaskDescriptor::Kind::Replay;
        else if (name == "lefschetz") task.kind = TaskDescriptor::Kind::Lefschetz;
        else if (name == "blowup") task.kind = TaskDescriptor::Kind::Blowup;
        else if (name == "cayley") task.kind = TaskDescriptor::Kind::Cayley;
        else if (name == "check") task.kind = TaskDescriptor::Kind::Check;
        else if (name == "render") task.kind = TaskDescriptor::Kind::Render;
        else
          throw ParseError(lineno, tokens[1].column, "unknown task '" + name + "'");
        arg_start = 2;
      }
      for (std::size_t i = arg_start; i < tokens.size(); ++i) {
        auto [key, value] = detail::split_key_value(tokens[i], lineno);
        if (key == "m")
          task.m = static_cast<int>(detail::parse_integer(value, lineno, tokens[i].column));
        else if (key == "n")
          task.n = static_cast<int>(detail::parse_integer(value, lineno, tokens[i].column));
        else if (key == "r")
          task.r = static_cast<int>(detail::parse_integer(value, lineno, tokens[i].column));
        else if (key == "form") {
          if (value != "right" && value != "left")
            throw ParseError(lineno, tokens[i].column, "form must be right or left");
          task.form = value;
        } else if (key == "format") {
          if (value != "ascii" && value != "svg")
            throw ParseError(lineno, tokens[i].column, "format must be ascii or svg");
          task.format = value;
        } else {
          throw ParseError(lineno, tokens[i].column,
                           "unknown key '" + key + "' for task " + task_name(task.kind));
        }
      }
      // Per-task required arguments.
      switch (task.kind) {
        case TaskDescriptor::Kind::Section:
          if (!task.m || !task.n)
            throw ParseError(lineno, tokens[0].column, "task section needs m= and n=");
          break;
        case TaskDescriptor::Kind::Blowup:
        case TaskDescriptor::Kind::Cayley:
          if (!task.r)
            throw ParseError(lineno, tokens[0].column,
                             "task " + task_name(task.kind) + " needs r=");
          break;
        default:
          break;
      }
      scenario.tasks.push_back(task);
    } else if (head == "output") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        auto [key, value] = detail::split_key_value(tokens[i], lineno);
        if (key == "dir") scenario.output_dir = value;
        else
          throw ParseError(lineno, tokens[i].column, "unknown output key '" + key + "'");
      }
    } else {
      throw ParseError(lineno, tokens[0].column, "unknown statement '" + head + "'");
    }
  }

  // Tasks other than blowup/cayley consume the declared geometry.
  for (const auto& task : scenario.tasks) {
    bool needs_geometry = task.kind != TaskDescriptor::Kind::Blowup &&
                          task.kind != TaskDescriptor::Kind::Cayley &&
                          task.kind != TaskDescriptor::Kind::Check;
    if (needs_geometry && !scenario.geometry_declared)
      throw ParseError(1, 1, "task " + task_name(task.kind) +
                                 " requires a geometry statement");
  }
  return scenario;
}

/// Canonical printer; parse(print(s)) reproduces s and print(parse(text)) is
/// a fixpoint of print after one round.
inline std::string print_scenario(const Scenario& s) {
  std::ostringstream os;
  if (s.geometry_declared) {
    os << "geometry N=" << s.geometry.N << " k=" << s.geometry.k;
    if (s.geometry.sing_rank) os << " sing=" << *s.geometry.sing_rank;
    if (s.geometry.base_rank) os << " base=" << *s.geometry.base_rank;
    os << "\n";
  }
  for (const auto& [sym, value] : s.ranks) os << "rank " << sym << "=" << value << "\n";
  if (s.output_dir) os << "output dir=" << *s.output_dir << "\n";
  for (const auto& t : s.tasks) {
    if (t.kind == TaskDescriptor::Kind::Render) {
      os << "render grid format=" << t.format << "\n";
      continue;
    }
    os << "task " << task_name(t.kind);
    if (t.m) os << " m=" << *t.m;
    if (t.n) os << " n=" << *t.n;
    if (t.r) os << " r=" << *t.r;
    if ((t.kind == TaskDescriptor::Kind::Blowup ||
         t.kind == TaskDescriptor::Kind::Cayley) &&
        t.form != "right")
      os << " form=" << t.form;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Task execution.

/// The built-in cross-check battery: the engine formulas against the Betti
/// oracle on the reference instances. Rank overrides can perturb the
/// defaults (and break the checks, deliberately).
inline std::vector<CheckResult> builtin_checks(const RankAssignment& overrides = {}) {
  RankAssignment ranks{{"D(P3)", 4}, {"D(P1)", 2}, {"D(P2)", 3}, {"D(pt)", 1}};
  for (const auto& [name, value] : overrides) ranks[name] = value;

  CategorySymbol p3("D(P3)"), p1("D(P1)"), p2("D(P2)"), pt("D(pt)");
  std::vector<CheckResult> checks;
  checks.push_back(cross_check("blowup_bl_p1_p3", blowup_sod(p3, p1, 2), ranks,
                               toy_blowup(toy_projective_space(3), toy_projective_space(1), 2)));
  checks.push_back(cross_check("blowup_bl_pt_p2", blowup_sod(p2, pt, 2), ranks,
                               toy_blowup(toy_projective_space(2), toy_point(), 2)));
  checks.push_back(cross_check("bundle_p_o3",
                               projective_bundle_sod(pt, 3, kClassH), ranks,
                               toy_projective_bundle(toy_point(), 3)));
  checks.push_back(cross_check("cayley_divisor_11_p3xp1", cayley_sod(p3, p1, 2), ranks,
                               toy_divisor_hyperplane({3, 1}, {1, 1})));
  return checks;
}

struct TaskOutcome {
  std::string task;
  Json document;       // one JSON document per task
  std::string render;  // raw render output, when the task produces one
  std::vector<std::string> lines;  // line-oriented report (check task)
  int exit_class = 0;  // 0 ok, 1 check/replay failure, 2 validation error
};

inline TaskOutcome run_task(const TaskDescriptor& task, const Scenario& scenario) {
  TaskOutcome out;
  out.task = task_name(task.kind);
  const GeometryInput& g = scenario.geometry;
  try {
    switch (task.kind) {
      case TaskDescriptor::Kind::Dual:
        out.document = encode_hpd_pair(generalized_linear_dual(g));
        break;
      case TaskDescriptor::Kind::Section:
        out.document = encode_section_sods(fundamental_section_sods(*task.m, *task.n, g));
        break;
      case TaskDescriptor::Kind::Replay: {
        DualityReplayReport r = replay_duality_derivation(g);
        out.document = encode_duality_replay(r);
        if (!r.ok) out.exit_class = 1;
        break;
      }
      case TaskDescriptor::Kind::Lefschetz: {
        LefschetzStructure L = lefschetz_blowup_dual(g);
        auto v = validate_lefschetz(L);
        Json j;
        j["lefschetz"] = encode_lefschetz(L);
        j["valid"] = v.ok;
        j["right_form"] = encode_sod(right_form(L));
        out.document = std::move(j);
        break;
      }
      case TaskDescriptor::Kind::Blowup: {
        SodForm form = task.form == "left" ? SodForm::Left : SodForm::Right;
        Sod s = blowup_sod(CategorySymbol("X"), CategorySymbol("Z"), *task.r, form);
        out.document = encode_sod(s);
        break;
      }
      case TaskDescriptor::Kind::Cayley: {
        SodForm form = task.form == "left" ? SodForm::Left : SodForm::Right;
        Sod s = cayley_sod(CategorySymbol("X"), CategorySymbol("Z"), *task.r, form);
        out.document = encode_sod(s);
        break;
      }
      case TaskDescriptor::Kind::Check: {
        auto checks = builtin_checks(scenario.rank_map());
        Json arr = Json::array();
        bool all = true;
        for (const auto& c : checks) {
          out.lines.push_back(c.line());
          arr.push_back(encode_check(c));
          all = all && c.pass();
        }
        Json j;
        j["checks"] = std::move(arr);
        j["all_pass"] = all;
        out.document = std::move(j);
        if (!all) out.exit_class = 1;
        break;
      }
      case TaskDescriptor::Kind::Render: {
        Grid grid = grid_of(lefschetz_blowup_dual(g));
        GridFormat fmt = task.format == "svg" ? GridFormat::Svg : GridFormat::Ascii;
        out.render = render_grid(grid, fmt);
        Json j;
        j["format"] = task.format;
        j["grid"] = encode_grid(grid);
        out.document = std::move(j);
        break;
      }
    }
  } catch (const ValidationError& e) {
    Json j;
    j["task"] = out.task;
    j["error"] = e.what();
    out.document = std::move(j);
    out.exit_class = 2;
  }
  return out;
}

/// Execute every task in order. Task documents go to `out` (or files under
/// the scenario's output dir); diagnostics go to `err`. The exit status is
/// the worst failure class seen; a failing task never disturbs the outputs
/// already emitted.
inline int run_scenario(const Scenario& scenario, std::ostream& out, std::ostream& err) {
  int exit_class = 0;
  std::size_t index = 0;
  for (const auto& task : scenario.tasks) {
    TaskOutcome outcome = run_task(task, scenario);
    std::ostringstream doc;
    for (const auto& line : outcome.lines) doc << line << "\n";
    if (!outcome.render.empty()) doc << outcome.render;
    doc << outcome.document.dump(2) << "\n";
    if (scenario.output_dir) {
      std::ostringstream name;
      name << *scenario.output_dir << "/task_" << index << "_" << outcome.task
           << (outcome.render.empty() ? ".json" : ".txt");
      std::ofstream f(name.str());
      if (!f) {
        err << "cannot write " << name.str() << "\n";
        exit_class = std::max(exit_class, 2);
      } else {
        f << doc.str();
      }
    } else {
      out << doc.str();
    }
    if (outcome.exit_class != 0)
      err << "task " << index << " (" << outcome.task << ") failed with class "
          << outcome.exit_class << "\n";
    exit_class = std::max(exit_class, outcome.exit_class);
    ++index;
  }
  return exit_class;
}

}  // namespace sodforge
