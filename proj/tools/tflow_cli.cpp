// tflow: feasibility, quickest transshipment and max flow over time on
// temporal networks read from the line format.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "tflow.hpp"

namespace {

using namespace tflow;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kError = 2;

ParsedInstance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  auto p = parse_network(in);
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
  return p;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

void print_violated(const TemporalNetwork& n, const DttnResult& r) {
  std::cout << "INFEASIBLE\n";
  std::cout << "violated:";
  for (NodeId id : r.outcome.violated) {
    // original nodes keep their ids through both conversions
    std::cout << " " << (id < n.node_count() ? n.node(id).name : r.reduction.network.node(id).name);
  }
  std::cout << "\noT " << r.outcome.o_t << "\nnegv " << r.outcome.neg_v << "\n";
}

int cmd_feas(const std::string& in, bool show_flow) {
  const auto p = load(in);
  const auto r = dttn_feasible(p.network, p.demands);
  if (!r.outcome.feasible) {
    print_violated(p.network, r);
    return kInfeasible;
  }
  std::cout << "FEASIBLE\n";
  if (show_flow) write_flow(std::cout, p.network, extract_flow(p.network, p.demands));
  return kOk;
}

int cmd_quickest(const std::string& in, TimeStep t_cap) {
  const auto p = load(in);
  try {
    const auto q = quickest_transshipment(p.network, p.demands, t_cap);
    std::cout << "horizon " << q.horizon << "\nprobes " << q.probes << "\n";
    if (q.flow) write_flow(std::cout, p.network.with_horizon(q.horizon), *q.flow);
    return kOk;
  } catch (const BudgetError& e) {
    std::cout << "INFEASIBLE " << e.what() << "\n";
    return kInfeasible;
  }
}

int cmd_maxflow(const std::string& in, std::optional<TimeStep> horizon) {
  const auto p = load(in);
  const auto n = horizon ? p.network.with_horizon(*horizon) : p.network;
  const auto r = max_flow_over_time(n);
  std::cout << "value " << r.value << "\n";
  if (r.flow) write_flow(std::cout, n, *r.flow);
  return kOk;
}

int cmd_expand(const std::string& in, const std::string& mode, const std::string& out) {
  const auto p = load(in);
  const auto c = canonical_reduction(p.network, p.demands);
  const auto g = mode == "ten" ? build_ten(c.network, c.super_source, c.super_sink)
                               : build_cten(c.network, compute_breakpoints(c).cten,
                                            c.super_source, c.super_sink);
  auto os = open_out(out);
  write_dot(os, c.network, g);
  std::cout << "vertices " << g.vertex_count() << "\narcs " << g.arc_count() << "\n";
  return kOk;
}

int cmd_gen(const InstanceSpec& spec, const std::string& out) {
  const auto g = generate_instance(spec);
  if (out.empty() || out == "-") {
    serialize_network(std::cout, g.network, g.demands);
  } else {
    auto os = open_out(out);
    serialize_network(os, g.network, g.demands);
  }
  return kOk;
}

int cmd_verify(const std::string& in) {
  const auto p = load(in);
  const bool fast = dttn_feasible(p.network, p.demands).outcome.feasible;
  const bool slow = ten_feasible(p.network, p.demands);
  std::cout << "cten " << (fast ? "FEASIBLE" : "INFEASIBLE") << "\n";
  std::cout << "ten " << (slow ? "FEASIBLE" : "INFEASIBLE") << "\n";
  if (fast != slow) {
    std::cout << "MISMATCH\n";
    return kError;
  }
  std::cout << "AGREE\n";
  return fast ? kOk : kInfeasible;
}

int cmd_stats(const std::string& in) {
  const auto p = load(in);
  const auto& n = p.network;
  std::cout << "n " << n.node_count() << "\nm " << n.edge_count() << "\nk "
            << n.sources().size() + n.sinks().size() << "\nmu " << compute_mu(n) << "\nU "
            << n.max_finite_capacity() << "\nT " << n.horizon() << "\n";
  if (p.demands.total() == 0) {
    const auto r = dttn_feasible(n, p.demands);
    std::cout << "cten_vertices " << r.outcome.cten_vertices << "\ncten_arcs "
              << r.outcome.cten_arcs << "\n";
  } else {
    std::cout << "cten_vertices n/a (unbalanced demands)\n";
  }
  const auto c = canonical_reduction(n, p.demands.total() == 0 ? p.demands : DemandVector{});
  try {
    const auto g = build_ten(c.network, c.super_source, c.super_sink);
    std::cout << "ten_vertices " << g.vertex_count() << "\nten_arcs " << g.arc_count() << "\n";
  } catch (const BudgetError&) {
    std::cout << "ten_vertices " << c.network.node_count() * static_cast<std::size_t>(n.horizon() + 1)
              << "\nten_arcs over budget\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal network flows"};
  app.require_subcommand(1);
  int code = kOk;

  std::string input;
  std::string output;
  bool show_flow = false;
  TimeStep t_cap = 1 << 20;
  std::optional<TimeStep> horizon;
  std::string mode = "cten";
  InstanceSpec spec;
  std::string bias = "feasible";

  auto* feas_cmd = app.add_subcommand("feas", "decide feasibility, print a violated set if not");
  feas_cmd->add_option("-i,--input", input)->required();
  feas_cmd->add_flag("--flow", show_flow, "print a flow when feasible");

  auto* quick = app.add_subcommand("quickest", "least horizon at which the demands can be met");
  quick->add_option("-i,--input", input)->required();
  quick->add_option("--tcap", t_cap, "largest horizon to try")->check(CLI::NonNegativeNumber);

  auto* mf = app.add_subcommand("maxflow", "maximum flow over time, one source and one sink");
  mf->add_option("-i,--input", input)->required();
  mf->add_option("-T,--horizon", horizon)->check(CLI::NonNegativeNumber);

  auto* ex = app.add_subcommand("expand", "write the TEN or cTEN as DOT");
  ex->add_option("-i,--input", input)->required();
  ex->add_option("--mode", mode)->check(CLI::IsMember({"ten", "cten"}));
  ex->add_option("-o,--output", output)->required();

  auto* gen = app.add_subcommand("gen", "random instance");
  gen->add_option("--nodes", spec.nodes);
  gen->add_option("--edges", spec.edges);
  gen->add_option("--pieces", spec.pieces);
  gen->add_option("--capacity", spec.max_capacity);
  gen->add_option("--tau", spec.max_travel_time);
  gen->add_option("-T,--horizon", spec.horizon);
  gen->add_option("--terminals", spec.terminals);
  gen->add_option("--demand", spec.demand_magnitude);
  gen->add_option("--seed", spec.seed);
  gen->add_option("--bias", bias)->check(CLI::IsMember({"feasible", "infeasible", "random"}));
  gen->add_option("-o,--output", output);

  auto* ver = app.add_subcommand("verify", "cross-check the cTEN verdict against the full TEN");
  ver->add_option("-i,--input", input)->required();

  auto* st = app.add_subcommand("stats", "sizes of the network and its expansions");
  st->add_option("-i,--input", input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }

  try {
    if (*feas_cmd) code = cmd_feas(input, show_flow);
    if (*quick) code = cmd_quickest(input, t_cap);
    if (*mf) code = cmd_maxflow(input, horizon);
    if (*ex) code = cmd_expand(input, mode, output);
    if (*gen) {
      spec.bias = bias == "feasible"     ? DemandBias::kFeasible
                  : bias == "infeasible" ? DemandBias::kInfeasible
                                         : DemandBias::kRandom;
      code = cmd_gen(spec, output);
    }
    if (*ver) code = cmd_verify(input);
    if (*st) code = cmd_stats(input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return code;
}
