#pragma once

#include <charconv>
#include <map>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/network.hpp"
#include "tflow/piecewise.hpp"

namespace tflow {

struct ParsedInstance {
  TemporalNetwork network;
  DemandVector demands;
  std::vector<std::string> warnings;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size() || line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineReader {
 public:
  LineReader(std::size_t line, std::vector<Token> tokens)
      : line_(line), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(const std::string& msg, std::size_t column) const {
    throw InputError("line " + std::to_string(line_) + ", column " + std::to_string(column) +
                     ": " + msg);
  }
  [[noreturn]] void fail_here(const std::string& msg) const {
    fail(msg, pos_ < tokens_.size() ? tokens_[pos_].column : end_column());
  }

  const Token& next(const char* what) {
    if (pos_ >= tokens_.size()) fail(std::string("expected ") + what, end_column());
    return tokens_[pos_++];
  }
  void expect(std::string_view word) {
    const Token& t = next(std::string(word).c_str());
    if (t.text != word) fail("expected '" + std::string(word) + "'", t.column);
  }
  std::int64_t integer(const char* what) {
    const Token& t = next(what);
    std::int64_t value = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) fail(std::string(what) + " out of range", t.column);
    if (ec != std::errc() || ptr != last) fail(std::string("expected ") + what, t.column);
    return value;
  }
  Capacity capacity() {
    const std::size_t col = column();
    if (pos_ < tokens_.size() && tokens_[pos_].text == "inf") {
      ++pos_;
      return Capacity::infinity();
    }
    const std::int64_t v = integer("capacity");
    if (v < 0) fail("negative capacity", col);
    return Capacity(v);
  }
  void finish() {
    if (pos_ < tokens_.size()) fail("unexpected trailing token", tokens_[pos_].column);
  }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const {
    return pos_ < tokens_.size() ? tokens_[pos_].column : end_column();
  }

 private:
  [[nodiscard]] std::size_t end_column() const {
    if (tokens_.empty()) return 1;
    return tokens_.back().column + tokens_.back().text.size();
  }
  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the line-oriented network format. Syntax and structural errors
/// throw InputError with line and column; unbalanced demands and zero
/// travel times are reported as warnings.
inline ParsedInstance parse_network(std::istream& in) {
  struct PendingEdge {
    NodeId from, to;
    std::size_t line;
    std::vector<Piece<Capacity>> caps;
    std::vector<Piece<TimeStep>> taus;
  };
  ParsedInstance out;
  std::optional<TimeStep> horizon;
  bool header = false;
  std::vector<PendingEdge> edges;
  std::vector<std::pair<std::string, TerminalKind>> nodes;
  std::vector<std::int64_t> demand_of;
  std::map<std::string, NodeId> ids;

  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::split_tokens(text);
    if (tokens.empty()) continue;
    detail::LineReader r(line_no, tokens);
    const auto& kw = r.next("keyword");
    if (!header) {
      if (kw.text != "tn") r.fail("file must start with 'tn 1'", kw.column);
      const auto version_col = r.column();
      if (r.integer("version") != 1) r.fail("unsupported version", version_col);
      r.finish();
      header = true;
      continue;
    }
    if (kw.text == "horizon") {
      if (horizon) r.fail("duplicate horizon", kw.column);
      const auto col = r.column();
      const std::int64_t t = r.integer("horizon");
      if (t < 0) r.fail("negative horizon", col);
      horizon = t;
      r.finish();
    } else if (kw.text == "node") {
      const auto& name = r.next("node id");
      const std::string id(name.text);
      if (ids.count(id)) r.fail("duplicate node '" + id + "'", name.column);
      const auto& kind = r.next("node kind");
      TerminalKind k = TerminalKind::kInternal;
      std::int64_t demand = 0;
      if (kind.text == "source") {
        k = TerminalKind::kSource;
        const auto col = r.column();
        demand = r.integer("demand");
        if (demand > 0) r.fail("source demand must be <= 0 (sources carry negative demand)", col);
      } else if (kind.text == "sink") {
        k = TerminalKind::kSink;
        const auto col = r.column();
        demand = r.integer("demand");
        if (demand < 0) r.fail("sink demand must be >= 0", col);
      } else if (kind.text != "internal") {
        r.fail("node kind must be source, sink or internal", kind.column);
      }
      r.finish();
      ids.emplace(id, nodes.size());
      nodes.emplace_back(id, k);
      demand_of.push_back(demand);
    } else if (kw.text == "edge") {
      const auto& a = r.next("edge tail");
      const auto& b = r.next("edge head");
      auto ia = ids.find(std::string(a.text));
      if (ia == ids.end()) r.fail("unknown node '" + std::string(a.text) + "'", a.column);
      auto ib = ids.find(std::string(b.text));
      if (ib == ids.end()) r.fail("unknown node '" + std::string(b.text) + "'", b.column);
      r.finish();
      edges.push_back({ia->second, ib->second, line_no, {}, {}});
    } else if (kw.text == "piece") {
      if (edges.empty()) r.fail("piece before any edge", kw.column);
      const TimeStep t0 = r.integer("piece start");
      const TimeStep t1 = r.integer("piece end");
      r.expect("cap");
      const Capacity u = r.capacity();
      r.expect("tt");
      const auto tt_col = r.column();
      const std::int64_t tau = r.integer("travel time");
      if (tau < 0) r.fail("negative travel time", tt_col);
      r.finish();
      edges.back().caps.push_back({t0, t1, u});
      edges.back().taus.push_back({t0, t1, tau});
    } else {
      r.fail("unknown keyword '" + std::string(kw.text) + "'", kw.column);
    }
  }
  if (!header) throw InputError("empty input; expected 'tn 1'");
  if (!horizon) throw InputError("missing 'horizon' line");

  out.network = TemporalNetwork(*horizon);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.network.add_node(nodes[i].first, nodes[i].second);
    if (nodes[i].second != TerminalKind::kInternal) out.demands.set(i, demand_of[i]);
  }
  for (auto& e : edges) {
    const std::string label = "edge " + nodes[e.from].first + "->" + nodes[e.to].first +
                              " (line " + std::to_string(e.line) + ")";
    try {
      out.network.add_edge(e.from, e.to, CapacityFn(e.caps, *horizon),
                           TravelTimeFn(e.taus, *horizon));
    } catch (const InputError& err) {
      throw InputError(label + ": " + err.what());
    }
    for (const auto& p : e.taus) {
      if (p.value == 0) {
        out.warnings.push_back(label + " has zero travel time on [" + std::to_string(p.start) +
                               "," + std::to_string(p.end) + "]");
        break;
      }
    }
  }
  if (out.demands.total() != 0) {
    out.warnings.push_back("demands sum to " + std::to_string(out.demands.total()) +
                           ", not 0; only maximum-flow mode accepts this");
  }
  return out;
}

inline ParsedInstance parse_network(const std::string& text) {
  std::istringstream in(text);
  return parse_network(in);
}

inline void serialize_network(std::ostream& os, const TemporalNetwork& n, const DemandVector& v) {
  os << "tn 1\n";
  os << "horizon " << n.horizon() << "\n";
  for (NodeId i = 0; i < n.node_count(); ++i) {
    const auto& node = n.node(i);
    os << "node " << node.name;
    switch (node.kind) {
      case TerminalKind::kSource: os << " source " << v.at(i); break;
      case TerminalKind::kSink: os << " sink " << v.at(i); break;
      case TerminalKind::kInternal: os << " internal"; break;
    }
    os << "\n";
  }
  for (const auto& e : n.edges()) {
    os << "edge " << n.node(e.from).name << " " << n.node(e.to).name << "\n";
    for (const auto& p : merge_pieces(e.capacity, e.travel_time)) {
      os << "piece " << p.start << " " << p.end << " cap " << p.capacity << " tt "
         << p.travel_time << "\n";
    }
  }
}

inline std::string serialize_network(const TemporalNetwork& n, const DemandVector& v) {
  std::ostringstream os;
  serialize_network(os, n, v);
  return os.str();
}

inline void write_flow(std::ostream& os, const TemporalNetwork& n, const FlowOverTime& f) {
  for (const auto& [key, amount] : f.entries()) {
    const auto& e = n.edge(key.first);
    os << "flow " << n.node(e.from).name << " " << n.node(e.to).name << " " << key.second << " "
       << amount << "\n";
  }
}

inline FlowOverTime parse_flow(std::istream& in, const TemporalNetwork& n) {
  FlowOverTime f;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto tokens = detail::split_tokens(text);
    if (tokens.empty()) continue;
    detail::LineReader r(line_no, tokens);
    r.expect("flow");
    const auto& a = r.next("edge tail");
    const auto& b = r.next("edge head");
    const auto ia = n.find_node(std::string(a.text));
    if (!ia) r.fail("unknown node", a.column);
    const auto ib = n.find_node(std::string(b.text));
    if (!ib) r.fail("unknown node", b.column);
    const auto e = n.find_edge(*ia, *ib);
    if (!e) r.fail("no such edge", a.column);
    const TimeStep t = r.integer("departure time");
    const std::int64_t amount = r.integer("amount");
    r.finish();
    f.add(*e, t, amount);
  }
  return f;
}

}  // namespace tflow
