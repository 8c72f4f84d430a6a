#pragma once

// uwvrp command line: solve, minvehicle, bounds, windows, oracle, gen, verify.
//
// Exit status: 0 success, 1 usage error, 2 input/validation/guard error,
// 3 when minvehicle certifies that no single vehicle tour exists.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "uwvrp/uwvrp.hpp"

namespace uwvrp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_no_single_tour = 3;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

/// Aligned text (two-space gutters, last column unpadded) or tab-separated rows.
class Table {
 public:
  explicit Table(bool porcelain) : porcelain_(porcelain) {}

  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) line += porcelain_ ? "\t" : "  ";
        line += r[i];
        if (!porcelain_ && i + 1 < r.size()) line.append(width[i] - r[i].size(), ' ');
      }
      out << line << '\n';
    }
  }

 private:
  bool porcelain_;
  std::vector<std::vector<std::string>> rows_;
};

inline TrimmedSolver parse_solver(const std::string& name) {
  if (name == "exact") return TrimmedSolver::exact;
  if (name == "tree-dp") return TrimmedSolver::tree_dp;
  return TrimmedSolver::automatic;
}

inline WindowMap select_windows(const Instance& inst, const std::string& kind) {
  if (kind == "original") return original_windows(inst);
  if (kind == "trimmed") return effective_windows(trim_half_unit(inst));
  ExpandedPartition parts = expand_and_partition(inst);
  return effective_windows(kind == "expanded-E" ? parts.even : parts.odd);
}

inline std::string window_text(const Window& w) { return "[" + to_string(w.start) + ", " + to_string(w.end) + ")"; }

inline std::string ids_text(const Instance& inst, const std::vector<RequestIndex>& ids) {
  std::string s;
  for (RequestIndex id : ids) s += (s.empty() ? "" : " ") + inst.request(id).id;
  return s;
}

/// Prints runs to `out`, or writes `<instance>.<label>.run` files under `dir`.
inline void emit_runs(const Instance& inst, const std::vector<Run>& runs, const std::string& dir, std::ostream& out) {
  for (const Run& r : runs) {
    if (dir.empty())
      out << format_run(inst, r);
    else
      write_file(std::filesystem::path(dir) / (inst.name() + "." + r.label + ".run"), format_run(inst, r));
  }
}

}  // namespace detail

struct Options {
  std::vector<std::string> inputs;
  bool single = false;
  long fleet = 0;
  std::string out_dir;
  bool porcelain = false;
  std::string solver = "auto";
  std::size_t exact_guard = default_exact_guard;
  std::vector<long> ks;
  std::vector<std::string> gammas{"1"};
  unsigned places = 4;
  long oracle_k = 1;
  std::string windows = "original";
  long guard = 0;
  int nodes = 0;
  int requests = 0;
  std::string horizon = "4";
  std::uint64_t seed = 1;
  bool opt1 = false;
  std::string output;
  std::string witness;
  int count = 0;
  std::string instance;
};

namespace detail {

inline int cmd_solve(const Options& o, std::ostream& out) {
  FleetOptions fo{parse_solver(o.solver), o.exact_guard};
  for (const std::string& path : o.inputs) {
    Instance inst = parse_instance(read_file(path));
    if (o.inputs.size() > 1) out << "== " << path << '\n';
    Table t(o.porcelain);
    if (o.single) {
      Run run = repairman_3approx(inst, inst.all_requests(), fo.solver, fo.exact_guard);
      emit_runs(inst, {run}, o.out_dir, out);
      Ratio p = run_profit(inst, run);
      t.row({"profit", to_string(p), decimal_preview(p)});
      t.row({"cost", to_string(run_cost(inst, run)), decimal_preview(run_cost(inst, run))});
      t.row({"guarantee", "1/3", decimal_preview(Ratio(1, 3))});
    } else {
      FleetSolution sol = k_vehicle_greedy(inst, o.fleet, fo);
      emit_runs(inst, sol.runs, o.out_dir, out);
      t.row({"run", "profit", "approx", "cost"});
      for (std::size_t i = 0; i < sol.runs.size(); ++i)
        t.row({sol.runs[i].label, to_string(sol.run_profit[i]), decimal_preview(sol.run_profit[i]),
               to_string(run_cost(inst, sol.runs[i]))});
      t.row({"total", to_string(sol.total_profit), decimal_preview(sol.total_profit)});
      t.row({"guarantee", to_string(sol.guarantee), decimal_preview(sol.guarantee)});
    }
    t.print(out);
  }
  return exit_ok;
}

inline int cmd_minvehicle(const Options& o, std::ostream& out, std::ostream& err) {
  FleetOptions fo{parse_solver(o.solver), o.exact_guard};
  int status = exit_ok;
  for (const std::string& path : o.inputs) {
    Instance inst = parse_instance(read_file(path));
    if (o.inputs.size() > 1) out << "== " << path << '\n';
    CoverSolution sol = single_repair(inst, fo);
    emit_runs(inst, sol.runs, o.out_dir, out);
    Table t(o.porcelain);
    t.row({"run", "serves", "cost"});
    for (const Run& r : sol.runs)
      t.row({r.label, std::to_string(r.served().size()), to_string(run_cost(inst, r))});
    t.print(out);
    out << "certificate: " << to_string(sol.certificate) << '\n';
    err << "uncovered:" << (sol.uncovered.empty() ? "" : " " + ids_text(inst, sol.uncovered)) << '\n';
    if (!sol.coverage_guaranteed) err << "note: general metric, six-run coverage is not guaranteed\n";
    if (!sol.covered) status = exit_no_single_tour;
  }
  return status;
}

inline int cmd_bounds(const Options& o, std::ostream& out) {
  std::vector<Ratio> gammas;
  for (const std::string& g : o.gammas) {
    try {
      gammas.push_back(parse_ratio(g));
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("--gamma: ") + e.what());
    }
    if (gammas.back() < 1) throw ValidationError("--gamma values must be at least 1");
  }
  for (long k : o.ks)
    if (k < 1) throw ValidationError("--k values must be at least 1");
  Table t(o.porcelain);
  for (const GuaranteeRow& r : bounds_table(o.ks, gammas, o.places))
    t.row({std::to_string(r.k), to_string(r.gamma), to_string(r.value), r.decimal_preview});
  t.print(out);
  return exit_ok;
}

inline int cmd_windows(const Options& o, std::ostream& out) {
  Instance inst = parse_instance(read_file(o.inputs.at(0)));
  TrimmedInstance trimmed = trim_half_unit(inst);
  ExpandedPartition parts = expand_and_partition(inst);
  Table t(o.porcelain);
  t.row({"id", "node", "original", "trimmed", "expanded", "set"});
  for (RequestIndex i = 0; i < inst.request_count(); ++i) {
    bool even = parts.even.assignment.contains(i);
    const TrimmedInstance& side = even ? parts.even : parts.odd;
    t.row({inst.request(i).id, std::to_string(inst.request(i).node), window_text(inst.request(i).window()),
           window_text(trimmed.effective_window(i)), window_text(side.effective_window(i)), even ? "E" : "O"});
  }
  t.print(out);
  return exit_ok;
}

inline int cmd_oracle(const Options& o, std::ostream& out) {
  Instance inst = parse_instance(read_file(o.inputs.at(0)));
  OracleGuard guard = OracleGuard::from_environment();
  if (o.guard > 0) guard.up_to_two_vehicles = guard.three_or_more_vehicles = static_cast<std::size_t>(o.guard);
  OracleResult res = brute_force_opt(inst, o.oracle_k, select_windows(inst, o.windows), guard);
  emit_runs(inst, res.runs, o.out_dir, out);
  Table t(o.porcelain);
  t.row({"run", "profit", "approx", "serves"});
  for (std::size_t i = 0; i < res.runs.size(); ++i)
    t.row({res.runs[i].label, to_string(res.per_run_profit[i]), decimal_preview(res.per_run_profit[i]),
           ids_text(inst, res.served[i])});
  t.row({"total", to_string(res.profit), decimal_preview(res.profit)});
  t.print(out);
  return exit_ok;
}

inline int cmd_gen(const Options& o, std::ostream& out) {
  Ratio horizon;
  try {
    horizon = parse_ratio(o.horizon);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("--horizon: ") + e.what());
  }
  auto make = [&](std::uint64_t seed) -> std::pair<Instance, std::optional<Run>> {
    try {
      if (o.opt1) {
        FeasibleInstance f = generate_feasible_opt1_instance(o.nodes, o.requests, seed);
        return {std::move(f.instance), std::move(f.witness)};
      }
      return {generate_random_instance(o.nodes, o.requests, horizon, seed), std::nullopt};
    } catch (const std::invalid_argument& e) {
      throw ValidationError(e.what());
    }
  };

  if (o.count > 0) {
    if (o.out_dir.empty()) throw ValidationError("--count requires --out-dir");
    for (int i = 0; i < o.count; ++i) {
      auto [inst, witness] = make(o.seed + static_cast<std::uint64_t>(i));
      std::filesystem::path base = std::filesystem::path(o.out_dir) / inst.name();
      write_file(base.string() + ".txt", serialize(inst));
      if (witness) write_file(base.string() + ".witness.run", format_run(inst, *witness));
      out << base.string() << ".txt\n";
    }
    return exit_ok;
  }

  auto [inst, witness] = make(o.seed);
  if (o.output.empty())
    out << serialize(inst);
  else
    write_file(o.output, serialize(inst));
  if (!o.witness.empty()) {
    if (!witness) throw ValidationError("--witness requires --opt1");
    write_file(o.witness, format_run(inst, *witness));
  }
  return exit_ok;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  Instance inst = parse_instance(read_file(o.instance));
  std::vector<Run> runs = parse_runs(read_file(o.inputs.at(0)), inst);
  WindowMap windows = select_windows(inst, o.windows);
  bool all_ok = true;
  for (const Run& r : runs) {
    RunReport rep = validate_run(inst, r, windows);
    all_ok = all_ok && rep.feasible;
    out << r.label << ": " << (rep.feasible ? "feasible" : "infeasible") << "  profit " << to_string(rep.profit)
        << "  cost " << to_string(rep.cost) << '\n';
    for (const Violation& v : rep.violations) out << "  " << v.kind << " at visit " << v.index << ": " << v.detail << '\n';
  }
  return all_ok ? exit_ok : exit_invalid;
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multivehicle routing with unit-time windows"};
  app.require_subcommand(1);
  Options o;

  auto solver_opts = [&](CLI::App* sub) {
    sub->add_option("--solver", o.solver, "trimmed single-vehicle solver")
        ->check(CLI::IsMember({"auto", "exact", "tree-dp"}));
    sub->add_option("--exact-guard", o.exact_guard, "max requests for the exhaustive solver");
    sub->add_option("--out-dir", o.out_dir, "write run files here instead of stdout");
    sub->add_flag("--porcelain", o.porcelain, "tab-separated report");
  };
  const auto window_kinds = CLI::IsMember({"original", "trimmed", "expanded-E", "expanded-O"});

  auto* solve = app.add_subcommand("solve", "greedy single- or multi-vehicle routing");
  solve->add_option("inputs", o.inputs, "instance files")->required()->check(CLI::ExistingFile);
  auto* single = solve->add_flag("--single", o.single, "one vehicle (trim, then solve exactly)");
  auto* fleet = solve->add_option("--fleet", o.fleet, "number of vehicles")->check(CLI::PositiveNumber);
  single->excludes(fleet);
  solver_opts(solve);

  auto* minvehicle = app.add_subcommand("minvehicle", "cover every request with six runs");
  minvehicle->add_option("inputs", o.inputs, "instance files")->required()->check(CLI::ExistingFile);
  solver_opts(minvehicle);

  auto* bounds = app.add_subcommand("bounds", "guaranteed fractions of the k-vehicle optimum");
  bounds->add_option("--k", o.ks, "vehicle counts")->required()->delimiter(',');
  bounds->add_option("--gamma", o.gammas, "solver factors")->delimiter(',');
  bounds->add_option("--places", o.places, "decimal places of the preview");
  bounds->add_flag("--porcelain", o.porcelain, "tab-separated report");

  auto* windows = app.add_subcommand("windows", "trimmed and expanded windows per request");
  windows->add_option("input", o.inputs, "instance file")->required()->check(CLI::ExistingFile)->expected(1);
  windows->add_flag("--porcelain", o.porcelain, "tab-separated report");

  auto* oracle = app.add_subcommand("oracle", "brute-force optimum for small instances");
  oracle->add_option("input", o.inputs, "instance file")->required()->check(CLI::ExistingFile)->expected(1);
  oracle->add_option("--k", o.oracle_k, "number of vehicles")->check(CLI::PositiveNumber);
  oracle->add_option("--windows", o.windows, "window mapping")->check(window_kinds);
  oracle->add_option("--guard", o.guard, "max requests (overrides UWVRP_ORACLE_GUARD)")->check(CLI::PositiveNumber);
  oracle->add_option("--out-dir", o.out_dir, "write run files here instead of stdout");
  oracle->add_flag("--porcelain", o.porcelain, "tab-separated report");

  auto* gen = app.add_subcommand("gen", "generate seeded random instances");
  gen->add_option("--nodes", o.nodes, "node count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--requests", o.requests, "request count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--horizon", o.horizon, "release horizon (random instances)");
  gen->add_option("--seed", o.seed, "seed (first seed in batch mode)");
  gen->add_flag("--opt1", o.opt1, "plant requests along a single feasible walk");
  gen->add_option("-o,--output", o.output, "instance file (default stdout)");
  gen->add_option("--witness", o.witness, "witness run file (with --opt1)");
  gen->add_option("--count", o.count, "batch size")->check(CLI::PositiveNumber);
  gen->add_option("--out-dir", o.out_dir, "batch output directory");

  auto* verify = app.add_subcommand("verify", "check run files against an instance");
  verify->add_option("run", o.inputs, "run file")->required()->check(CLI::ExistingFile)->expected(1);
  verify->add_option("--instance", o.instance, "instance file")->required()->check(CLI::ExistingFile);
  verify->add_option("--windows", o.windows, "window mapping")->check(window_kinds);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (solve->parsed() && !o.single && o.fleet == 0) throw CLI::ValidationError("solve", "one of --single or --fleet is required");
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (solve->parsed()) return detail::cmd_solve(o, out);
    if (minvehicle->parsed()) return detail::cmd_minvehicle(o, out, err);
    if (bounds->parsed()) return detail::cmd_bounds(o, out);
    if (windows->parsed()) return detail::cmd_windows(o, out);
    if (oracle->parsed()) return detail::cmd_oracle(o, out);
    if (gen->parsed()) return detail::cmd_gen(o, out);
    if (verify->parsed()) return detail::cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }
  return exit_usage;
}

}  // namespace uwvrp::cli
