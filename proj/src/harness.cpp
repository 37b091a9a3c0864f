#include "trrg/harness.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "json.hpp"

#include "trrg/determinize.hpp"
#include "trrg/dot_model.hpp"
#include "trrg/errors.hpp"

namespace trrg {

// ---------------------------------------------------------------------------
// runs

RunReport run_case(const TimedModel& impl, const TimedTestCase& tc, const TesterGraph& tester,
                   const RunOptions& options) {
  if (!tester.is_tester()) throw ContractError("run_case needs a canonical tester");
  RunReport report;
  report.case_id = tc.id;
  report.expected = tc.expected;

  std::mt19937_64 rng(options.seed);
  Configuration config = initial_configuration(impl);
  Valuation spec_clocks;
  for (const auto& clock : tester.space()->clocks()) spec_clocks.emplace(clock, Time(0));
  std::size_t state = tester.initial();
  std::optional<Verdict> observed;

  for (const TimedStep& step : tc.steps) {
    if (!impl.has_action(step.action)) {
      report.steps.push_back(StepRecord{step.delay, step.action, false});
      report.diagnostic = "action '" + step.action + "' is outside the implementation alphabet";
      observed = Verdict::Fail;
      break;
    }
    config = step_delay(config, step.delay);
    for (auto& [clock, value] : spec_clocks) value += step.delay;
    const ClockRegion region = region_of(spec_clocks, tester.space());
    const auto matching = tester.matching_edges(state, step.action, region);
    if (matching.size() != 1) {
      throw ContractError("case " + tc.id + " does not follow the tester at (" + step.action + ", " +
                          region.to_string() + ")");
    }
    const SymbolicEdge& edge = tester.edge(matching.front());
    std::vector<Configuration> next = step_action(impl, config, step.action);
    const bool accepted = !next.empty();
    report.steps.push_back(StepRecord{step.delay, step.action, accepted});

    if (tester.state(edge.target).is_fail_sink) {
      if (accepted) {
        observed = Verdict::Fail;
        report.diagnostic = "implementation accepted " + step.action + " where the specification refuses it";
      } else {
        observed = tester.verdict(state);
      }
      break;
    }
    if (!accepted) {
      if (tester.state(state).refusals.permanently_refuses(step.action, region)) {
        observed = Verdict::Incon;
        report.diagnostic = "implementation refused " + step.action + " under a permanent refusal";
      } else {
        observed = Verdict::Fail;
        report.diagnostic = "implementation refused " + step.action + " where the specification must accept it";
      }
      break;
    }
    std::sort(next.begin(), next.end());
    std::size_t pick = 0;
    if (options.policy == ChoicePolicy::Seeded && next.size() > 1) {
      pick = std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng);
    }
    config = std::move(next[pick]);
    if (edge.reset) spec_clocks[*edge.reset] = Time(0);
    state = edge.target;
  }
  report.observed = observed.value_or(tester.verdict(state));
  report.agreement = report.observed == reference_verdict(tester, tc);
  return report;
}

SuiteSummary run_suite(const TimedModel& impl, const std::vector<TimedTestCase>& suite, const TesterGraph& tester,
                       const RunOptions& options) {
  SuiteSummary summary;
  for (const auto& tc : suite) {
    RunReport report = run_case(impl, tc, tester, options);
    switch (report.observed) {
      case Verdict::Pass: ++summary.pass; break;
      case Verdict::Incon: ++summary.incon; break;
      case Verdict::Fail: ++summary.fail; break;
    }
    if (!report.agreement) summary.disagreements.push_back(report.case_id);
    summary.reports.push_back(std::move(report));
  }
  return summary;
}

std::string SuiteSummary::to_text() const {
  std::string out = "cases " + std::to_string(reports.size()) + " pass " + std::to_string(pass) + " incon " +
                    std::to_string(incon) + " fail " + std::to_string(fail) + " disagreements " +
                    std::to_string(disagreements.size()) + "\n";
  for (const auto& r : reports) {
    out += "case " + r.case_id + " expected=" + std::string(to_string(r.expected)) +
           " observed=" + std::string(to_string(r.observed)) + " agreement=" + (r.agreement ? "yes" : "no");
    if (!r.diagnostic.empty()) out += " # " + r.diagnostic;
    out += "\n";
  }
  return out;
}

std::string SuiteSummary::to_json_lines() const {
  std::string out;
  for (const auto& r : reports) {
    nlohmann::json record{{"id", r.case_id},
                          {"expected", to_string(r.expected)},
                          {"observed", to_string(r.observed)},
                          {"agreement", r.agreement}};
    out += record.dump() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// mutants

std::string_view to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::AddEdge: return "add-edge";
    case MutationKind::DeleteEdge: return "delete-edge";
    case MutationKind::WidenGuard: return "widen-guard";
    case MutationKind::NarrowGuard: return "narrow-guard";
    case MutationKind::RetargetEdge: return "retarget-edge";
  }
  return "?";
}

namespace {

std::optional<Atom> shift_atom(const Atom& atom, bool widen) {
  Atom a = atom;
  const bool lower = atom.op == CmpOp::GreaterEq || atom.op == CmpOp::Greater;
  if (atom.op == CmpOp::Equal) {
    if (!widen) return std::nullopt;
    a.op = CmpOp::GreaterEq;
    return a;
  }
  // Lower bounds widen downwards, upper bounds widen upwards.
  const std::int64_t step = (lower == widen) ? -1 : 1;
  a.bound += step;
  if (a.bound < 0) {
    if (atom.op == CmpOp::Greater) {
      a = Atom{atom.clock, CmpOp::GreaterEq, 0};
      return a;
    }
    return std::nullopt;
  }
  return a;
}

TimedModel with_edges(const TimedModel& base, std::vector<Edge> edges) {
  return TimedModel(base.locations(), base.initial(), base.clocks(), std::move(edges), base.alphabet());
}

}  // namespace

std::vector<Mutant> enumerate_mutants(const TimedModel& model, std::span<const MutationKind> kinds) {
  std::vector<Mutant> candidates;
  const auto& edges = model.edges();
  auto wants = [&](MutationKind k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };

  if (wants(MutationKind::AddEdge)) {
    for (const auto& loc : model.locations()) {
      const auto offered = enabled_actions(model, loc.name);
      for (const auto& action : model.alphabet()) {
        if (offered.contains(action)) continue;
        std::vector<Edge> e = edges;
        e.push_back(Edge{loc.name, Guard{}, action, std::nullopt, loc.name});
        candidates.push_back(Mutant{with_edges(model, std::move(e)), MutationKind::AddEdge,
                                    "add " + loc.name + " -" + action + "-> " + loc.name});
      }
    }
  }
  if (wants(MutationKind::DeleteEdge)) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      std::vector<Edge> e = edges;
      e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
      candidates.push_back(Mutant{with_edges(model, std::move(e)), MutationKind::DeleteEdge,
                                  "delete " + describe_edge(edges[i])});
    }
  }
  for (const bool widen : {true, false}) {
    const MutationKind kind = widen ? MutationKind::WidenGuard : MutationKind::NarrowGuard;
    if (!wants(kind)) continue;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& atoms = edges[i].guard.atoms();
      for (std::size_t j = 0; j < atoms.size(); ++j) {
        const auto shifted = shift_atom(atoms[j], widen);
        if (!shifted) continue;
        std::vector<Atom> changed = atoms;
        changed[j] = *shifted;
        std::vector<Edge> e = edges;
        e[i].guard = Guard(std::move(changed));
        candidates.push_back(Mutant{with_edges(model, std::move(e)), kind,
                                    std::string(widen ? "widen " : "narrow ") + atoms[j].to_string() + " to " +
                                        shifted->to_string() + " on " + describe_edge(edges[i])});
      }
    }
  }
  if (wants(MutationKind::RetargetEdge)) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (const auto& loc : model.locations()) {
        if (loc.name == edges[i].target) continue;
        std::vector<Edge> e = edges;
        e[i].target = loc.name;
        candidates.push_back(Mutant{with_edges(model, std::move(e)), MutationKind::RetargetEdge,
                                    "retarget " + describe_edge(edges[i]) + " to " + loc.name});
      }
    }
  }

  std::set<std::string> seen{canonical_text(model)};
  std::vector<Mutant> result;
  for (auto& m : candidates) {
    if (has_errors(validate_model(m.model))) continue;
    if (!seen.insert(canonical_text(m.model)).second) continue;
    result.push_back(std::move(m));
  }
  return result;
}

std::vector<Mutant> generate_mutants(const TimedModel& model, std::uint64_t seed, std::size_t count) {
  if (count == 0) return {};
  static constexpr MutationKind all[] = {MutationKind::AddEdge, MutationKind::DeleteEdge, MutationKind::WidenGuard,
                                         MutationKind::NarrowGuard, MutationKind::RetargetEdge};
  std::vector<Mutant> pool = enumerate_mutants(model, all);
  std::mt19937_64 rng(seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  return pool;
}

// ---------------------------------------------------------------------------
// bounded behavioral comparison

namespace {

struct JointEdge {
  std::string action;
  Guard guard;  // over joint clock names
  std::optional<std::size_t> reset;
  std::string target;
};

using JointEdges = std::map<std::string, std::vector<JointEdge>>;

Guard rename(const Guard& guard, const std::string& prefix) {
  std::vector<Atom> atoms = guard.atoms();
  for (auto& a : atoms) a.clock = prefix + a.clock;
  return Guard(std::move(atoms));
}

JointEdges joint_edges(const TimedModel& m, const std::string& prefix, const MaxConstants& joint) {
  JointEdges out;
  for (const auto& loc : m.locations()) out[loc.name];
  for (const auto& e : m.edges()) {
    std::optional<std::size_t> reset;
    if (e.reset) reset = joint.index_of(prefix + *e.reset);
    out[e.source].push_back(JointEdge{e.action, rename(e.guard, prefix), reset, e.target});
  }
  return out;
}

const JointEdge* enabled(const JointEdges& edges, const std::string& location, const std::string& action,
                         const ClockRegion& region) {
  for (const auto& e : edges.at(location)) {
    if (e.action == action && region_entails(region, e.guard)) return &e;
  }
  return nullptr;
}

}  // namespace

std::optional<std::vector<std::string>> behavioral_difference(const TimedModel& spec, const TimedModel& impl,
                                                              std::size_t depth) {
  const TimedModel ds = determinize(spec).model;
  const TimedModel di = determinize(impl).model;
  const std::string sp = "spec:";
  const std::string ip = "impl:";

  std::map<std::string, std::int64_t> constants;
  for (const auto& [prefix, model] : {std::pair{ip, &di}, std::pair{sp, &ds}}) {
    const MaxConstants mc = max_constants(*model);
    for (std::size_t i = 0; i < mc.size(); ++i) constants[prefix + mc.clocks()[i]] = mc.constant(i);
  }
  std::vector<std::string> clocks;
  std::vector<std::int64_t> values;
  for (const auto& [c, v] : constants) {
    clocks.push_back(c);
    values.push_back(v);
  }
  const RegionSpace space = make_space(MaxConstants(std::move(clocks), std::move(values)));
  const JointEdges spec_edges = joint_edges(ds, sp, *space);
  const JointEdges impl_edges = joint_edges(di, ip, *space);

  std::set<std::string> alphabet(ds.alphabet().begin(), ds.alphabet().end());
  alphabet.insert(di.alphabet().begin(), di.alphabet().end());

  struct Node {
    std::string spec_location;
    std::string impl_location;
    ClockRegion region;
    std::size_t depth;
    std::size_t parent;
    std::string label;
  };
  const std::size_t root = SIZE_MAX;
  std::vector<Node> nodes{Node{ds.initial(), di.initial(), initial_region(space), 0, root, ""}};
  std::set<std::tuple<std::string, std::string, ClockRegion>> seen{{ds.initial(), di.initial(), nodes[0].region}};
  auto trace_to = [&](std::size_t index, std::string last) {
    std::vector<std::string> trace{std::move(last)};
    for (; index != root; index = nodes[index].parent) {
      if (!nodes[index].label.empty()) trace.push_back(nodes[index].label);
    }
    return std::vector<std::string>(trace.rbegin(), trace.rend());
  };

  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (nodes[n].depth >= depth) continue;
    const std::vector<ClockRegion> closure = succ_closure(nodes[n].region);
    for (const ClockRegion& fired : closure) {
      for (const auto& action : alphabet) {
        const JointEdge* s = enabled(spec_edges, nodes[n].spec_location, action, fired);
        const JointEdge* i = enabled(impl_edges, nodes[n].impl_location, action, fired);
        const std::string label = action + "@" + fired.to_string();
        if ((s == nullptr) != (i == nullptr)) {
          return trace_to(n, label + (s == nullptr ? " (only implementation)" : " (only reference model)"));
        }
        if (s == nullptr) continue;
        ClockRegion entered = fired;
        if (s->reset) entered = region_reset(entered, *s->reset);
        if (i->reset) entered = region_reset(entered, *i->reset);
        if (seen.emplace(s->target, i->target, entered).second) {
          nodes.push_back(Node{s->target, i->target, entered, nodes[n].depth + 1, n, label});
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace trrg
