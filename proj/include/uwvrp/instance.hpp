#pragma once

// Problem instances: a weighted undirected graph (tree or general), unit-window
// service requests and a travel speed.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "uwvrp/error.hpp"
#include "uwvrp/ratio.hpp"

namespace uwvrp {

using NodeId = int;
using RequestIndex = std::size_t;

enum class MetricKind { tree, general };

inline std::string_view to_string(MetricKind kind) { return kind == MetricKind::tree ? "tree" : "general"; }

/// Half-open time interval [start, end).
struct Window {
  Ratio start;
  Ratio end;

  bool contains(const Ratio& t) const { return start <= t && t < end; }
  Ratio length() const { return end - start; }

  friend bool operator==(const Window& a, const Window& b) { return a.start == b.start && a.end == b.end; }
};

/// Request index (position in id order) -> window used for service.
using WindowMap = std::map<RequestIndex, Window>;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Ratio weight;

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v && a.weight == b.weight; }
};

struct Request {
  std::string id;
  NodeId node = 0;
  Ratio release;
  Ratio profit = 1;

  /// Every window has unit length; the deadline is never stored.
  Window window() const { return {release, release + 1}; }

  friend bool operator==(const Request& a, const Request& b) {
    return a.id == b.id && a.node == b.node && a.release == b.release && a.profit == b.profit;
  }
};

/// All-pairs travel times, already divided by the speed.
class DistanceOracle {
 public:
  DistanceOracle() = default;

  DistanceOracle(int node_count, std::span<const Edge> edges, const Ratio& speed, MetricKind kind)
      : n_(node_count), table_(static_cast<std::size_t>(node_count) * node_count) {
    if (kind == MetricKind::tree)
      build_tree(edges, speed);
    else
      build_closure(edges, speed);
  }

  int node_count() const noexcept { return n_; }

  const Ratio& operator()(NodeId u, NodeId v) const { return table_[index(u, v)]; }

 private:
  std::size_t index(NodeId u, NodeId v) const { return static_cast<std::size_t>(u) * n_ + v; }

  void build_tree(std::span<const Edge> edges, const Ratio& speed) {
    std::vector<std::vector<std::pair<NodeId, Ratio>>> adj(n_);
    for (const Edge& e : edges) {
      Ratio t = e.weight / speed;
      adj[e.u].emplace_back(e.v, t);
      adj[e.v].emplace_back(e.u, t);
    }
    std::vector<char> seen(n_);
    for (NodeId s = 0; s < n_; ++s) {
      std::fill(seen.begin(), seen.end(), 0);
      std::queue<NodeId> frontier;
      frontier.push(s);
      seen[s] = 1;
      while (!frontier.empty()) {
        NodeId x = frontier.front();
        frontier.pop();
        for (const auto& [y, w] : adj[x]) {
          if (seen[y]) continue;
          seen[y] = 1;
          table_[index(s, y)] = table_[index(s, x)] + w;
          frontier.push(y);
        }
      }
    }
  }

  // Floyd-Warshall metric closure; connectivity is checked by the caller.
  void build_closure(std::span<const Edge> edges, const Ratio& speed) {
    std::vector<char> known(table_.size());
    for (NodeId v = 0; v < n_; ++v) known[index(v, v)] = 1;
    for (const Edge& e : edges) {
      Ratio t = e.weight / speed;
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (!known[index(a, b)] || t < table_[index(a, b)]) {
          table_[index(a, b)] = t;
          known[index(a, b)] = 1;
        }
      }
    }
    for (NodeId m = 0; m < n_; ++m)
      for (NodeId a = 0; a < n_; ++a) {
        if (!known[index(a, m)]) continue;
        for (NodeId b = 0; b < n_; ++b) {
          if (!known[index(m, b)]) continue;
          Ratio via = table_[index(a, m)] + table_[index(m, b)];
          if (!known[index(a, b)] || via < table_[index(a, b)]) {
            table_[index(a, b)] = via;
            known[index(a, b)] = 1;
          }
        }
      }
  }

  int n_ = 0;
  std::vector<Ratio> table_;
};

/// Immutable, validated instance in canonical form: edges normalized to u < v and
/// sorted, requests sorted by id. A RequestIndex is a position in `requests()`.
class Instance {
 public:
  Instance(std::string name, MetricKind metric, int node_count, std::vector<Edge> edges,
           std::vector<Request> requests, Ratio speed = 1)
      : name_(std::move(name)),
        metric_(metric),
        node_count_(node_count),
        edges_(std::move(edges)),
        requests_(std::move(requests)),
        speed_(std::move(speed)) {
    validate_and_canonicalize();
    distances_ = DistanceOracle(node_count_, edges_, speed_, metric_);
  }

  const std::string& name() const noexcept { return name_; }
  MetricKind metric() const noexcept { return metric_; }
  bool is_tree() const noexcept { return metric_ == MetricKind::tree; }
  int node_count() const noexcept { return node_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Request>& requests() const noexcept { return requests_; }
  std::size_t request_count() const noexcept { return requests_.size(); }
  const Request& request(RequestIndex i) const { return requests_.at(i); }
  const Ratio& speed() const noexcept { return speed_; }
  const DistanceOracle& distances() const noexcept { return distances_; }

  bool valid_node(NodeId v) const noexcept { return v >= 0 && v < node_count_; }

  /// Speed-normalized shortest-path travel time.
  const Ratio& distance(NodeId u, NodeId v) const {
    if (!valid_node(u) || !valid_node(v))
      throw UnknownId("unknown node id " + std::to_string(valid_node(u) ? v : u));
    return distances_(u, v);
  }

  std::optional<RequestIndex> find_request(std::string_view id) const {
    auto it = std::lower_bound(requests_.begin(), requests_.end(), id,
                               [](const Request& r, std::string_view key) { return r.id < key; });
    if (it == requests_.end() || it->id != id) return std::nullopt;
    return static_cast<RequestIndex>(it - requests_.begin());
  }

  RequestIndex index_of(std::string_view id) const {
    if (auto i = find_request(id)) return *i;
    throw UnknownId("unknown request id '" + std::string(id) + "'");
  }

  Ratio total_profit() const {
    Ratio sum = 0;
    for (const Request& r : requests_) sum += r.profit;
    return sum;
  }

  std::set<RequestIndex> all_requests() const {
    std::set<RequestIndex> all;
    for (RequestIndex i = 0; i < requests_.size(); ++i) all.insert(i);
    return all;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.name_ == b.name_ && a.metric_ == b.metric_ && a.node_count_ == b.node_count_ &&
           a.speed_ == b.speed_ && a.edges_ == b.edges_ && a.requests_ == b.requests_;
  }

 private:
  void validate_and_canonicalize() {
    if (node_count_ < 1) throw ValidationError("node count must be positive");
    if (speed_ <= 0) throw ValidationError("speed must be positive");
    speed_.canonicalize();
    if (name_.empty()) throw ValidationError("instance name must not be empty");

    for (Edge& e : edges_) {
      if (!valid_node(e.u) || !valid_node(e.v))
        throw ValidationError("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
      if (e.u == e.v) throw ValidationError("self-loop at node " + std::to_string(e.u));
      if (e.weight <= 0) throw ValidationError("edge weight must be positive");
      if (e.u > e.v) std::swap(e.u, e.v);
      e.weight.canonicalize();
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v) < std::tie(b.u, b.v) || (a.u == b.u && a.v == b.v && a.weight < b.weight);
    });

    if (metric_ == MetricKind::tree && edges_.size() != static_cast<std::size_t>(node_count_ - 1))
      throw ValidationError("not a tree: " + std::to_string(edges_.size()) + " edges for " +
                            std::to_string(node_count_) + " nodes");
    if (!connected())
      throw ValidationError(metric_ == MetricKind::tree ? "not a tree: graph is disconnected"
                                                         : "graph is disconnected");

    std::sort(requests_.begin(), requests_.end(), [](const Request& a, const Request& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < requests_.size(); ++i) {
      Request& r = requests_[i];
      r.release.canonicalize();
      r.profit.canonicalize();
      if (r.id.empty()) throw ValidationError("empty request id");
      if (i > 0 && requests_[i - 1].id == r.id) throw ValidationError("duplicate request id '" + r.id + "'");
      if (!valid_node(r.node)) throw ValidationError("request '" + r.id + "' at unknown node");
      if (r.release < 0) throw ValidationError("request '" + r.id + "' has negative release");
      if (r.profit <= 0) throw ValidationError("request '" + r.id + "' has nonpositive profit");
    }
  }

  bool connected() const {
    std::vector<int> parent(node_count_);
    for (int i = 0; i < node_count_; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int components = node_count_;
    for (const Edge& e : edges_) {
      int a = find(e.u), b = find(e.v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return components == 1;
  }

  std::string name_;
  MetricKind metric_;
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<Request> requests_;
  Ratio speed_;
  DistanceOracle distances_;
};

inline WindowMap original_windows(const Instance& inst) {
  WindowMap windows;
  for (RequestIndex i = 0; i < inst.request_count(); ++i) windows.emplace(i, inst.request(i).window());
  return windows;
}

inline Ratio profit_of(const Instance& inst, const std::set<RequestIndex>& ids) {
  Ratio sum = 0;
  for (RequestIndex i : ids) sum += inst.request(i).profit;
  return sum;
}

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

/// Splits one line into whitespace-separated tokens, dropping a trailing '#' comment.
inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

/// Non-empty tokenized lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::vector<Token>>> tokenized_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::vector<Token>>> lines;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto tokens = tokenize(line);
    if (!tokens.empty()) lines.emplace_back(line_no, std::move(tokens));
  }
  return lines;
}

inline Ratio ratio_field(std::size_t line, const Token& tok) {
  try {
    return parse_ratio(tok.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, tok.column, e.what());
  }
}

inline int int_field(std::size_t line, const Token& tok) {
  std::string_view s = tok.text;
  bool ok = !s.empty() && s.size() < 10;
  for (char c : s) ok = ok && c >= '0' && c <= '9';
  if (!ok) throw ParseError(line, tok.column, "expected a nonnegative integer, got '" + std::string(s) + "'");
  return std::stoi(std::string(s));
}

inline void expect_fields(std::size_t line, const std::vector<Token>& tokens, std::size_t count) {
  if (tokens.size() < count)
    throw ParseError(line, tokens.back().column + tokens.back().text.size(),
                     "'" + std::string(tokens.front().text) + "' expects " + std::to_string(count - 1) + " field(s)");
  if (tokens.size() > count) throw ParseError(line, tokens[count].column, "unexpected extra field");
}

}  // namespace detail

/// Reads the line-oriented instance format:
///
///     instance <name>
///     metric tree|general
///     speed <rational>
///     nodes <n>
///     edge <u> <v> <weight>                 (repeated)
///     request <id> <node> <release> <profit> (repeated)
///
/// Syntax problems raise ParseError; model violations raise ValidationError.
inline Instance parse_instance(std::string_view text) {
  auto lines = detail::tokenized_lines(text);
  const char* header[] = {"instance", "metric", "speed", "nodes"};
  std::size_t last_line = lines.empty() ? 1 : lines.back().first;
  for (std::size_t h = 0; h < 4; ++h) {
    if (h >= lines.size()) throw ParseError(last_line, 1, std::string("missing '") + header[h] + "' line");
    const auto& [line, tokens] = lines[h];
    if (tokens[0].text != header[h])
      throw ParseError(line, tokens[0].column,
                       std::string("expected '") + header[h] + "', got '" + std::string(tokens[0].text) + "'");
    detail::expect_fields(line, tokens, 2);
  }

  std::string name(lines[0].second[1].text);
  const auto& metric_tok = lines[1].second[1];
  MetricKind metric;
  if (metric_tok.text == "tree")
    metric = MetricKind::tree;
  else if (metric_tok.text == "general")
    metric = MetricKind::general;
  else
    throw ParseError(lines[1].first, metric_tok.column, "metric must be 'tree' or 'general'");
  Ratio speed = detail::ratio_field(lines[2].first, lines[2].second[1]);
  int nodes = detail::int_field(lines[3].first, lines[3].second[1]);

  std::vector<Edge> edges;
  std::vector<Request> requests;
  for (std::size_t i = 4; i < lines.size(); ++i) {
    const auto& [line, tokens] = lines[i];
    if (tokens[0].text == "edge") {
      detail::expect_fields(line, tokens, 4);
      edges.push_back({detail::int_field(line, tokens[1]), detail::int_field(line, tokens[2]),
                       detail::ratio_field(line, tokens[3])});
    } else if (tokens[0].text == "request") {
      // profit may be omitted and defaults to 1
      detail::expect_fields(line, tokens, tokens.size() == 4 ? 4 : 5);
      requests.push_back({std::string(tokens[1].text), detail::int_field(line, tokens[2]),
                          detail::ratio_field(line, tokens[3]),
                          tokens.size() == 5 ? detail::ratio_field(line, tokens[4]) : Ratio(1)});
    } else {
      throw ParseError(line, tokens[0].column, "unknown keyword '" + std::string(tokens[0].text) + "'");
    }
  }
  return Instance(std::move(name), metric, nodes, std::move(edges), std::move(requests), std::move(speed));
}

/// Canonical text form; parse_instance(serialize(x)) == x.
inline std::string serialize(const Instance& inst) {
  std::ostringstream out;
  out << "instance " << inst.name() << '\n'
      << "metric " << to_string(inst.metric()) << '\n'
      << "speed " << to_string(inst.speed()) << '\n'
      << "nodes " << inst.node_count() << '\n';
  for (const Edge& e : inst.edges()) out << "edge " << e.u << ' ' << e.v << ' ' << to_string(e.weight) << '\n';
  for (const Request& r : inst.requests())
    out << "request " << r.id << ' ' << r.node << ' ' << to_string(r.release) << ' ' << to_string(r.profit) << '\n';
  return out.str();
}

}  // namespace uwvrp
