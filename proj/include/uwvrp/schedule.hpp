#pragma once

// Timed service runs and the feasibility kernel shared by every solver.

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "uwvrp/instance.hpp"

namespace uwvrp {

struct Visit {
  NodeId node = 0;
  Ratio time;
  std::vector<RequestIndex> served;

  friend bool operator==(const Visit& a, const Visit& b) {
    return a.node == b.node && a.time == b.time && a.served == b.served;
  }
};

/// A timed walk. Waiting is allowed anywhere; one visit may serve several
/// co-located requests; no request is served twice.
struct Run {
  std::string label;
  std::vector<Visit> visits;

  bool empty() const noexcept { return visits.empty(); }

  std::vector<RequestIndex> served() const {
    std::vector<RequestIndex> out;
    for (const Visit& v : visits) out.insert(out.end(), v.served.begin(), v.served.end());
    return out;
  }

  friend bool operator==(const Run& a, const Run& b) { return a.label == b.label && a.visits == b.visits; }
};

inline Ratio run_profit(const Instance& inst, const Run& run) {
  Ratio sum = 0;
  for (RequestIndex i : run.served()) sum += inst.request(i).profit;
  return sum;
}

/// c(R): total distance between consecutive visit nodes.
inline Ratio run_cost(const Instance& inst, const Run& run) {
  Ratio sum = 0;
  for (std::size_t i = 1; i < run.visits.size(); ++i) sum += inst.distance(run.visits[i - 1].node, run.visits[i].node);
  return sum;
}

/// Serves `order` as early as possible: t_1 = start_1, t_i = max(start_i, t_{i-1} + d).
/// Returns nullopt when some t_i reaches its window end. Because waiting is free
/// and windows are intervals, no other timing of the same order can do better.
inline std::optional<Run> earliest_schedule(const Instance& inst, std::span<const RequestIndex> order,
                                            const WindowMap& windows) {
  Run run;
  std::set<RequestIndex> seen;
  for (RequestIndex id : order) {
    auto w = windows.find(id);
    if (id >= inst.request_count() || w == windows.end())
      throw UnknownId("request index " + std::to_string(id) + " has no window");
    if (!seen.insert(id).second) throw std::invalid_argument("request repeated in service order");

    NodeId node = inst.request(id).node;
    Ratio t = w->second.start;
    if (!run.visits.empty()) {
      const Visit& prev = run.visits.back();
      Ratio arrival = prev.time + inst.distance(prev.node, node);
      if (arrival > t) t = arrival;
    }
    if (t >= w->second.end) return std::nullopt;

    if (!run.visits.empty() && run.visits.back().node == node && run.visits.back().time == t)
      run.visits.back().served.push_back(id);
    else
      run.visits.push_back({node, t, {id}});
  }
  return run;
}

struct Violation {
  std::string kind;  // node | order | speed | unknown | duplicate | location | window
  std::size_t index = 0;  // visit index
  std::string detail;
};

struct RunReport {
  bool feasible = true;
  std::vector<Violation> violations;
  Ratio profit = 0;
  Ratio cost = 0;
};

/// Checks speed feasibility, location match, window containment and served-once
/// against `windows`. Problems are reported, never thrown.
inline RunReport validate_run(const Instance& inst, const Run& run, const WindowMap& windows) {
  RunReport report;
  auto flag = [&](std::string kind, std::size_t i, std::string detail) {
    report.violations.push_back({std::move(kind), i, std::move(detail)});
  };

  std::set<RequestIndex> credited;
  for (std::size_t i = 0; i < run.visits.size(); ++i) {
    const Visit& v = run.visits[i];
    if (!inst.valid_node(v.node)) {
      flag("node", i, "unknown node " + std::to_string(v.node));
      continue;
    }
    if (i > 0 && inst.valid_node(run.visits[i - 1].node)) {
      const Visit& p = run.visits[i - 1];
      Ratio gap = v.time - p.time;
      if (gap < 0) {
        flag("order", i, "time " + to_string(v.time) + " does not follow " + to_string(p.time));
      } else {
        const Ratio& d = inst.distance(p.node, v.node);
        report.cost += d;
        if (gap < d) flag("speed", i, "needs " + to_string(d) + ", has " + to_string(gap));
      }
    }
    for (RequestIndex id : v.served) {
      if (id >= inst.request_count()) {
        flag("unknown", i, "request index " + std::to_string(id));
        continue;
      }
      const Request& r = inst.request(id);
      if (!credited.insert(id).second) {
        flag("duplicate", i, "'" + r.id + "' served more than once");
        continue;
      }
      report.profit += r.profit;
      auto w = windows.find(id);
      if (w == windows.end()) {
        flag("unknown", i, "'" + r.id + "' has no window");
        continue;
      }
      if (r.node != v.node) flag("location", i, "'" + r.id + "' is at node " + std::to_string(r.node));
      if (!w->second.contains(v.time))
        flag("window", i,
             "'" + r.id + "' at " + to_string(v.time) + " outside [" + to_string(w->second.start) + ", " +
                 to_string(w->second.end) + ")");
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

/// Moves every visit by `delta`. Services are cleared; the caller re-credits them.
inline Run shift_run(const Run& run, const Ratio& delta) {
  Run shifted{run.label, {}};
  shifted.visits.reserve(run.visits.size());
  for (const Visit& v : run.visits) shifted.visits.push_back({v.node, v.time + delta, {}});
  return shifted;
}

/// Credits, along a fixed trajectory, every available request at the visited node
/// whose window contains the visit time. Visits in order, ids ascending.
inline Run reserve_services(const Instance& inst, const Run& run, const WindowMap& windows,
                            const std::set<RequestIndex>& available) {
  Run out{run.label, {}};
  std::set<RequestIndex> remaining = available;
  for (const Visit& v : run.visits) {
    Visit nv{v.node, v.time, {}};
    for (auto it = remaining.begin(); it != remaining.end();) {
      auto w = windows.find(*it);
      if (*it < inst.request_count() && w != windows.end() && inst.request(*it).node == v.node &&
          w->second.contains(v.time)) {
        nv.served.push_back(*it);
        it = remaining.erase(it);
      } else {
        ++it;
      }
    }
    out.visits.push_back(std::move(nv));
  }
  return out;
}

/// Run file:
///
///     run <label>
///     visit <node> <time> [serve <id> ...]
inline std::string format_run(const Instance& inst, const Run& run) {
  std::ostringstream out;
  out << "run " << run.label << '\n';
  for (const Visit& v : run.visits) {
    out << "visit " << v.node << ' ' << to_string(v.time);
    if (!v.served.empty()) {
      out << " serve";
      for (RequestIndex id : v.served) out << ' ' << inst.request(id).id;
    }
    out << '\n';
  }
  return out.str();
}

/// Parses one or more consecutive run blocks. Request ids are resolved against `inst`.
inline std::vector<Run> parse_runs(std::string_view text, const Instance& inst) {
  std::vector<Run> runs;
  for (const auto& [line, tokens] : detail::tokenized_lines(text)) {
    if (tokens[0].text == "run") {
      detail::expect_fields(line, tokens, 2);
      runs.push_back({std::string(tokens[1].text), {}});
    } else if (tokens[0].text == "visit") {
      if (runs.empty()) throw ParseError(line, tokens[0].column, "'visit' before any 'run' line");
      if (tokens.size() < 3) detail::expect_fields(line, tokens, 3);
      Visit v{detail::int_field(line, tokens[1]), detail::ratio_field(line, tokens[2]), {}};
      if (tokens.size() > 3) {
        if (tokens[3].text != "serve") throw ParseError(line, tokens[3].column, "expected 'serve'");
        for (std::size_t i = 4; i < tokens.size(); ++i) {
          auto id = inst.find_request(tokens[i].text);
          if (!id) throw ParseError(line, tokens[i].column, "unknown request id '" + std::string(tokens[i].text) + "'");
          v.served.push_back(*id);
        }
      }
      runs.back().visits.push_back(std::move(v));
    } else {
      throw ParseError(line, tokens[0].column, "unknown keyword '" + std::string(tokens[0].text) + "'");
    }
  }
  return runs;
}

inline Run parse_run(std::string_view text, const Instance& inst) {
  auto runs = parse_runs(text, inst);
  if (runs.size() != 1) throw ParseError(1, 1, "expected exactly one run, found " + std::to_string(runs.size()));
  return std::move(runs.front());
}

}  // namespace uwvrp
