#include "trrg/graph.hpp"

#include <algorithm>

#include "trrg/errors.hpp"

namespace trrg {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Incon: return "incon";
    case Verdict::Fail: return "fail";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "pass") return Verdict::Pass;
  if (text == "incon") return Verdict::Incon;
  if (text == "fail") return Verdict::Fail;
  return std::nullopt;
}

TesterGraph::TesterGraph(RegionSpace space, std::vector<std::string> alphabet)
    : space_(std::move(space)), alphabet_(std::move(alphabet)) {}

std::optional<std::size_t> TesterGraph::find_state(std::string_view base, const ClockRegion& region) const {
  auto it = index_.find(std::make_pair(std::string(base), region));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t TesterGraph::add_state(SymbolicState state) {
  auto key = std::make_pair(state.base, state.region);
  if (!state.is_fail_sink) {
    if (auto it = index_.find(key); it != index_.end()) return it->second;
  }
  const std::size_t id = states_.size();
  if (!state.is_fail_sink) index_.emplace(std::move(key), id);
  states_.push_back(std::move(state));
  out_.emplace_back();
  if (verdicts_) verdicts_->push_back(Verdict::Pass);
  return id;
}

std::size_t TesterGraph::add_edge(SymbolicEdge edge) {
  if (edge.source >= states_.size() || edge.target >= states_.size()) {
    throw DomainError("edge endpoint out of range");
  }
  const std::size_t id = edges_.size();
  out_[edge.source].push_back(id);
  edges_.push_back(std::move(edge));
  return id;
}

void TesterGraph::remove_edge(std::size_t index) {
  if (index >= edges_.size()) throw DomainError("edge index out of range");
  edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(index));
  for (auto& list : out_) list.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) out_[edges_[i].source].push_back(i);
}

void TesterGraph::set_initial(std::size_t index) {
  if (index >= states_.size()) throw DomainError("initial state out of range");
  initial_ = index;
}

std::size_t TesterGraph::add_fail_sink() {
  if (fail_sink_) throw ContractError("graph already has a fail sink");
  SymbolicState sink;
  sink.base = "fail";
  sink.region = initial_region(space_);
  sink.is_fail_sink = true;
  fail_sink_ = add_state(std::move(sink));
  return *fail_sink_;
}

void TesterGraph::set_verdicts(std::vector<Verdict> verdicts) {
  if (verdicts.size() != states_.size()) throw DomainError("verdict mapping must cover every state");
  verdicts_ = std::move(verdicts);
}

Verdict TesterGraph::verdict(std::size_t state) const {
  if (!verdicts_) throw ContractError("graph carries no verdicts");
  return verdicts_->at(state);
}

std::string TesterGraph::state_id(std::size_t index) const {
  const SymbolicState& s = state(index);
  if (s.is_fail_sink) return "fail";
  return s.base + "@" + s.region.to_string();
}

std::vector<std::size_t> TesterGraph::matching_edges(std::size_t state, std::string_view action,
                                                     const ClockRegion& region) const {
  std::vector<std::size_t> result;
  for (std::size_t e : out_edges(state)) {
    if (edges_[e].matches(action, region)) result.push_back(e);
  }
  return result;
}

std::vector<std::string> describe_graph(const TesterGraph& graph) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < graph.states().size(); ++i) {
    const auto& s = graph.state(i);
    std::string line = "state " + graph.state_id(i);
    if (!s.is_fail_sink) {
      line += " forb={" + s.refusals.forbidden_string() + "} perm={" + s.refusals.permanent_string() +
              "} temp={" + s.refusals.temporary_string() + "}";
    }
    if (s.is_final) line += " final";
    if (i == graph.initial()) line += " initial";
    if (graph.is_tester()) line += " verdict=" + std::string(to_string(graph.verdict(i)));
    lines.push_back(std::move(line));
  }
  for (const auto& e : graph.edges()) {
    lines.push_back("edge " + graph.state_id(e.source) + " -" + e.action + "[" +
                    (e.witness ? e.witness->to_string() : std::string("*")) + "]" +
                    (e.reset ? "{" + *e.reset + "}" : std::string()) + "-> " + graph.state_id(e.target));
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

TesterGraph strip_fail_sink(const TesterGraph& tester) {
  TesterGraph out(tester.space(), tester.alphabet());
  std::vector<std::size_t> remap(tester.states().size(), 0);
  for (std::size_t i = 0; i < tester.states().size(); ++i) {
    if (tester.state(i).is_fail_sink) continue;
    remap[i] = out.add_state(tester.state(i));
  }
  for (const auto& e : tester.edges()) {
    if (tester.state(e.source).is_fail_sink || tester.state(e.target).is_fail_sink) continue;
    SymbolicEdge copy = e;
    copy.source = remap[e.source];
    copy.target = remap[e.target];
    out.add_edge(std::move(copy));
  }
  out.set_initial(remap[tester.initial()]);
  return out;
}

}  // namespace trrg
