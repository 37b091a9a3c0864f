#include "trrg/builder.hpp"

#include <deque>
#include <set>

#include "trrg/errors.hpp"

namespace trrg {

TesterGraph build_ara(const DeterministicModel& model, const Decorations& decorations) {
  const TimedModel& m = model.model;
  const RegionSpace space = make_space(max_constants(m));
  TesterGraph graph(space, m.alphabet());

  auto refusals_of = [&](const std::string& location) {
    auto it = decorations.find(location);
    if (it == decorations.end()) throw ContractError("location '" + location + "' is not decorated");
    return it->second;
  };
  std::deque<std::size_t> work;
  auto visit = [&](const std::string& location, const ClockRegion& region) {
    if (auto existing = graph.find_state(location, region)) return *existing;
    SymbolicState s;
    s.base = location;
    s.region = region;
    s.refusals = refusals_of(location);
    s.is_final = m.find_location(location)->is_final;
    s.is_initial = graph.states().empty();
    const std::size_t id = graph.add_state(std::move(s));
    work.push_back(id);
    return id;
  };

  const std::size_t initial = visit(m.initial(), initial_region(space));
  graph.set_initial(initial);
  while (!work.empty()) {
    const std::size_t id = work.front();
    work.pop_front();
    const std::string base = graph.state(id).base;
    const std::vector<ClockRegion> closure = succ_closure(graph.state(id).region);
    for (std::size_t index : m.out_edges(base)) {
      const Edge& edge = m.edges()[index];
      for (const ClockRegion& fired : closure) {
        if (!region_entails(fired, edge.guard)) continue;
        const ClockRegion entered = edge.reset ? region_reset(fired, *edge.reset) : fired;
        const std::size_t target = visit(edge.target, entered);
        graph.add_edge(SymbolicEdge{id, edge.action, fired, edge.guard, edge.reset, target});
      }
    }
  }
  return graph;
}

TrrgBuild build_trrg_stages(const TimedModel& model) {
  DeterministicModel det = determinize(model);
  Decorations deco = decorate(det);
  TesterGraph trrg = build_ara(det, deco);
  return TrrgBuild{std::move(det), std::move(deco), std::move(trrg)};
}

TesterGraph build_trrg(const TimedModel& model) { return build_trrg_stages(model).trrg; }

std::vector<std::string> trrg_determinism_violations(const TesterGraph& graph) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < graph.states().size(); ++s) {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t e : graph.out_edges(s)) {
      const auto& edge = graph.edge(e);
      const std::string witness = edge.witness ? edge.witness->to_string() : "*";
      if (!seen.emplace(edge.action, witness).second) {
        out.push_back(graph.state_id(s) + ": duplicate (" + edge.action + ", " + witness + ")");
      }
    }
  }
  return out;
}

std::vector<std::string> edge_region_violations(const TesterGraph& graph) {
  std::vector<std::string> out;
  for (const auto& edge : graph.edges()) {
    if (!edge.witness || graph.state(edge.target).is_fail_sink) continue;
    const std::string label = graph.state_id(edge.source) + " -" + edge.action + "-> " + graph.state_id(edge.target);
    if (!region_entails(*edge.witness, edge.guard)) out.push_back(label + ": witness does not entail guard");
    const ClockRegion expected = edge.reset ? region_reset(*edge.witness, *edge.reset) : *edge.witness;
    if (!(expected == graph.state(edge.target).region)) out.push_back(label + ": target region is not the reset witness");
  }
  return out;
}

}  // namespace trrg
