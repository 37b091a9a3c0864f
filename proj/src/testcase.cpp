#include "trrg/testcase.hpp"

#include <cstdint>
#include <deque>
#include <sstream>

#include "trrg/errors.hpp"

namespace trrg {

namespace {

bool is_fail_edge(const TesterGraph& tester, std::size_t edge) {
  return tester.state(tester.edge(edge).target).is_fail_sink;
}

// A final locality ends a path only once the path has left the initial state.
bool is_terminal(const TesterGraph& tester, std::size_t state, bool at_start) {
  const SymbolicState& s = tester.state(state);
  if ((s.is_final && !at_start) || s.is_fail_sink || tester.verdict(state) == Verdict::Incon) return true;
  for (std::size_t e : tester.out_edges(state)) {
    if (!is_fail_edge(tester, e)) return false;
  }
  return true;
}

class PathEnumerator {
 public:
  PathEnumerator(const TesterGraph& tester, std::size_t depth, bool probes, std::size_t limit)
      : tester_(tester), depth_(depth), probes_(probes), limit_(limit), used_(tester.edges().size(), false) {}

  std::vector<AbstractTestCase> run() {
    if (depth_ > 0) visit(tester_.initial());
    return std::move(cases_);
  }

 private:
  void visit(std::size_t state) {
    const bool stop = path_.size() >= depth_ || is_terminal(tester_, state, path_.empty());
    if (stop) emit(state);
    if (probes_ && path_.size() < depth_) {
      for (std::size_t e : tester_.out_edges(state)) {
        if (!is_fail_edge(tester_, e)) continue;
        path_.push_back(e);
        add(AbstractTestCase{path_, Verdict::Fail});
        path_.pop_back();
      }
    }
    if (stop) return;
    bool extended = false;
    for (std::size_t e : tester_.out_edges(state)) {
      if (is_fail_edge(tester_, e) || used_[e]) continue;
      extended = true;
      used_[e] = true;
      path_.push_back(e);
      visit(tester_.edge(e).target);
      path_.pop_back();
      used_[e] = false;
    }
    if (!extended) emit(state);
  }

  void emit(std::size_t state) { add(AbstractTestCase{path_, tester_.verdict(state)}); }

  void add(AbstractTestCase c) {
    if (cases_.size() >= limit_) {
      throw LimitExceeded("more than " + std::to_string(limit_) +
                          " test cases; lower the depth or use the edge-covering suite");
    }
    cases_.push_back(std::move(c));
  }

  const TesterGraph& tester_;
  std::size_t depth_;
  bool probes_;
  std::size_t limit_;
  std::vector<bool> used_;
  std::vector<std::size_t> path_;
  std::vector<AbstractTestCase> cases_;
};

void require_tester(const TesterGraph& tester) {
  if (!tester.is_tester()) throw ContractError("test cases need a canonical tester, not a TRRG");
}

Valuation zero_over(const RegionSpace& space) {
  Valuation v;
  for (const auto& clock : space->clocks()) v.emplace(clock, Time(0));
  return v;
}

void advance(Valuation& v, const Time& d) {
  for (auto& [clock, value] : v) value += d;
}

}  // namespace

std::vector<AbstractTestCase> extract_cases(const TesterGraph& tester, std::size_t depth,
                                            bool include_fail_probes, std::size_t max_cases) {
  require_tester(tester);
  return PathEnumerator(tester, depth, include_fail_probes, max_cases).run();
}

std::vector<AbstractTestCase> edge_covering_cases(const TesterGraph& tester, std::size_t depth,
                                                  bool include_fail_probes) {
  require_tester(tester);
  std::vector<AbstractTestCase> cases;
  if (depth == 0) return cases;
  // Shortest specification paths (no fail edges) to every locality.
  const std::size_t none = tester.edges().size();
  std::vector<std::size_t> parent(tester.states().size(), none);
  std::vector<std::size_t> distance(tester.states().size(), SIZE_MAX);
  std::deque<std::size_t> work{tester.initial()};
  distance[tester.initial()] = 0;
  while (!work.empty()) {
    const std::size_t s = work.front();
    work.pop_front();
    if (tester.state(s).is_fail_sink) continue;
    for (std::size_t e : tester.out_edges(s)) {
      const std::size_t t = tester.edge(e).target;
      if (is_fail_edge(tester, e) || distance[t] != SIZE_MAX) continue;
      distance[t] = distance[s] + 1;
      parent[t] = e;
      work.push_back(t);
    }
  }
  auto path_to = [&](std::size_t state) {
    std::vector<std::size_t> path;
    while (state != tester.initial()) {
      const std::size_t e = parent[state];
      path.push_back(e);
      state = tester.edge(e).source;
    }
    return std::vector<std::size_t>(path.rbegin(), path.rend());
  };
  for (std::size_t e = 0; e < tester.edges().size(); ++e) {
    const auto& edge = tester.edge(e);
    if (distance[edge.source] == SIZE_MAX || distance[edge.source] + 1 > depth) continue;
    const bool fail = is_fail_edge(tester, e);
    if (fail && !include_fail_probes) continue;
    std::vector<std::size_t> path = path_to(edge.source);
    path.push_back(e);
    cases.push_back(AbstractTestCase{std::move(path), tester.verdict(edge.target)});
  }
  return cases;
}

TimedTestCase concretize(const TesterGraph& tester, const AbstractTestCase& abstract, std::string id) {
  TimedTestCase tc{std::move(id), {}, abstract.terminal_verdict};
  Valuation v = zero_over(tester.space());
  std::size_t at = tester.initial();
  for (std::size_t e : abstract.path) {
    const SymbolicEdge& edge = tester.edge(e);
    if (edge.source != at) throw ContractError("abstract test case path does not chain");
    Time d(0);
    if (edge.witness) {
      const auto delay = delay_into(v, *edge.witness);
      if (!delay) throw ContractError("witness region " + edge.witness->to_string() + " is not reachable by delay");
      d = *delay;
    }
    advance(v, d);
    if (edge.reset) v[*edge.reset] = Time(0);
    tc.steps.push_back(TimedStep{d, edge.action});
    at = edge.target;
  }
  return tc;
}

std::vector<TimedTestCase> concretize_all(const TesterGraph& tester, const std::vector<AbstractTestCase>& cases) {
  std::vector<TimedTestCase> out;
  out.reserve(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) out.push_back(concretize(tester, cases[i], std::to_string(i + 1)));
  return out;
}

ReplayResult replay_case(const TimedModel& determinized, const TesterGraph& tester, const TimedTestCase& tc) {
  require_tester(tester);
  Configuration config = initial_configuration(determinized);
  std::size_t state = tester.initial();
  auto failure = [&](std::size_t step, const std::string& why) {
    return ReplayResult{false, tester.verdict(state), "case " + tc.id + " step " + std::to_string(step + 1) + ": " + why};
  };
  for (std::size_t i = 0; i < tc.steps.size(); ++i) {
    const TimedStep& step = tc.steps[i];
    if (tester.state(state).is_fail_sink) return failure(i, "continues past the fail sink");
    config = step_delay(config, step.delay);
    const ClockRegion region = region_of(config.valuation, tester.space());
    const auto edges = tester.matching_edges(state, step.action, region);
    if (edges.size() != 1) {
      return failure(i, std::to_string(edges.size()) + " tester edges match (" + step.action + ", " +
                            region.to_string() + ")");
    }
    const SymbolicEdge& edge = tester.edge(edges.front());
    if (edge.witness && !(*edge.witness == region)) return failure(i, "fired outside the witness region");
    const auto next = step_action(determinized, config, step.action);
    if (tester.state(edge.target).is_fail_sink) {
      if (!next.empty()) return failure(i, "specification accepts an action the tester routes to fail");
      state = edge.target;
      continue;
    }
    if (next.size() != 1) {
      return failure(i, "specification offers " + std::to_string(next.size()) + " successors for " + step.action);
    }
    const SymbolicState& target = tester.state(edge.target);
    if (next.front().location != target.base) {
      return failure(i, "specification moved to " + next.front().location + ", tester to " + target.base);
    }
    if (!(region_of(next.front().valuation, tester.space()) == target.region)) {
      return failure(i, "specification entered a region other than " + target.region.to_string());
    }
    config = next.front();
    state = edge.target;
  }
  const Verdict reached = tester.verdict(state);
  if (reached != tc.expected) {
    return ReplayResult{false, reached,
                        "case " + tc.id + ": reached " + std::string(to_string(reached)) + ", expected " +
                            std::string(to_string(tc.expected))};
  }
  return ReplayResult{true, reached, {}};
}

Verdict reference_verdict(const TesterGraph& tester, const TimedTestCase& tc) {
  require_tester(tester);
  Valuation v = zero_over(tester.space());
  std::size_t state = tester.initial();
  for (std::size_t i = 0; i < tc.steps.size(); ++i) {
    const TimedStep& step = tc.steps[i];
    advance(v, step.delay);
    const auto edges = tester.matching_edges(state, step.action, region_of(v, tester.space()));
    if (edges.size() != 1) throw ContractError("case " + tc.id + " does not follow the tester");
    const SymbolicEdge& edge = tester.edge(edges.front());
    if (tester.state(edge.target).is_fail_sink) {
      if (i + 1 != tc.steps.size()) throw ContractError("case " + tc.id + " continues past the fail sink");
      return tester.verdict(state);
    }
    if (edge.reset) v[*edge.reset] = Time(0);
    state = edge.target;
  }
  return tester.verdict(state);
}

std::string format_cases(const std::vector<TimedTestCase>& cases) {
  std::string out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (i > 0) out += "\n";
    out += "case " + cases[i].id + " expect=" + std::string(to_string(cases[i].expected)) + "\n";
    for (const auto& step : cases[i].steps) {
      out += "step delay=" + format_time(step.delay) + " action=" + step.action + "\n";
    }
  }
  return out;
}

std::vector<TimedTestCase> parse_cases(std::string_view text) {
  std::vector<TimedTestCase> cases;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    if (keyword == "case") {
      std::string id;
      std::string expect;
      words >> id >> expect;
      if (id.empty() || !expect.starts_with("expect=")) throw SyntaxError("expected 'case <id> expect=<verdict>'", number, 1);
      const auto verdict = parse_verdict(std::string_view(expect).substr(7));
      if (!verdict) throw SyntaxError("unknown verdict '" + expect.substr(7) + "'", number, 1);
      cases.push_back(TimedTestCase{id, {}, *verdict});
    } else if (keyword == "step") {
      if (cases.empty()) throw SyntaxError("step outside a case", number, 1);
      std::string delay;
      std::string action;
      words >> delay >> action;
      if (!delay.starts_with("delay=") || !action.starts_with("action=") || action.size() == 7) {
        throw SyntaxError("expected 'step delay=<p>/<q> action=<name>'", number, 1);
      }
      Time d;
      try {
        d = parse_time(std::string_view(delay).substr(6));
      } catch (const DomainError& e) {
        throw SyntaxError(e.what(), number, 1);
      }
      if (d < Time(0)) throw SyntaxError("negative delay", number, 1);
      cases.back().steps.push_back(TimedStep{d, action.substr(7)});
    } else {
      throw SyntaxError("unexpected line '" + line + "'", number, 1);
    }
    std::string extra;
    if (words >> extra) throw SyntaxError("trailing text '" + extra + "'", number, 1);
  }
  return cases;
}

}  // namespace trrg
