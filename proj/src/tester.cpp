#include "trrg/tester.hpp"

#include <algorithm>
#include <set>

#include "trrg/errors.hpp"

namespace trrg {

TesterGraph build_tester(const TesterGraph& trrg) {
  if (trrg.fail_sink() || trrg.is_tester()) throw ContractError("input already is a tester (fail sink or verdicts present)");
  TesterGraph tester = trrg;
  const std::size_t original_states = tester.states().size();
  const std::size_t fail = tester.add_fail_sink();

  for (std::size_t s = 0; s < original_states; ++s) {
    const SymbolicState& state = tester.state(s);
    const std::vector<ClockRegion> closure = succ_closure(state.region);
    for (const auto& action : tester.alphabet()) {
      if (state.refusals.forbidden.contains(action)) {
        tester.add_edge(SymbolicEdge{s, action, std::nullopt, Guard{}, std::nullopt, fail});
        continue;
      }
      std::set<ClockRegion> firing;
      for (std::size_t e : tester.out_edges(s)) {
        const auto& edge = tester.edge(e);
        if (edge.action == action && edge.witness) firing.insert(*edge.witness);
      }
      for (const ClockRegion& region : closure) {
        if (!firing.contains(region)) {
          tester.add_edge(SymbolicEdge{s, action, region, Guard{}, std::nullopt, fail});
        }
      }
    }
  }

  std::vector<Verdict> verdicts(tester.states().size(), Verdict::Pass);
  for (std::size_t s = 0; s < tester.states().size(); ++s) {
    if (s == fail) {
      verdicts[s] = Verdict::Fail;
    } else if (!tester.state(s).refusals.permanent.empty()) {
      verdicts[s] = Verdict::Incon;
    }
  }
  tester.set_verdicts(std::move(verdicts));
  return tester;
}

std::string CompletenessGap::describe(const TesterGraph& tester) const {
  switch (kind) {
    case Kind::Missing:
      return "gap: " + tester.state_id(state) + " has no edge for (" + action + ", " + region->to_string() + ")";
    case Kind::Overlap:
      return "overlap: " + tester.state_id(state) + " has " + std::to_string(matches) + " edges for (" + action +
             ", " + region->to_string() + ")";
    case Kind::FailEscape:
      return "escape: the fail sink has an outgoing " + action + " edge";
  }
  return "?";
}

std::vector<CompletenessGap> completeness_check(const TesterGraph& tester) {
  if (!tester.is_tester()) throw ContractError("completeness_check needs a tester with verdicts");
  std::vector<CompletenessGap> gaps;
  for (std::size_t s = 0; s < tester.states().size(); ++s) {
    const SymbolicState& state = tester.state(s);
    if (state.is_fail_sink) {
      for (std::size_t e : tester.out_edges(s)) {
        gaps.push_back(CompletenessGap{CompletenessGap::Kind::FailEscape, s, tester.edge(e).action, std::nullopt, 1});
      }
      continue;
    }
    const std::vector<ClockRegion> closure = succ_closure(state.region);
    for (const auto& action : tester.alphabet()) {
      for (const ClockRegion& region : closure) {
        const std::size_t matches = tester.matching_edges(s, action, region).size();
        if (matches == 0) {
          gaps.push_back(CompletenessGap{CompletenessGap::Kind::Missing, s, action, region, 0});
        } else if (matches > 1) {
          gaps.push_back(CompletenessGap{CompletenessGap::Kind::Overlap, s, action, region, matches});
        }
      }
    }
  }
  return gaps;
}

}  // namespace trrg
