#pragma once

// Canonical tester synthesis: the TRRG plus a fail sink that absorbs every
// action the specification does not permit, with pass/incon/fail verdicts.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trrg/graph.hpp"

namespace trrg {

// Throws ContractError if `trrg` already has a fail sink or verdicts.
TesterGraph build_tester(const TesterGraph& trrg);

struct CompletenessGap {
  enum class Kind { Missing, Overlap, FailEscape };

  Kind kind = Kind::Missing;
  std::size_t state = 0;
  std::string action;
  std::optional<ClockRegion> region;
  std::size_t matches = 0;

  std::string describe(const TesterGraph& tester) const;
};

// Every (non-fail state, action, region reachable by delay) must be matched by
// exactly one outgoing edge, and the fail sink must have no outgoing edge.
// Throws ContractError on a graph without verdicts.
std::vector<CompletenessGap> completeness_check(const TesterGraph& tester);

}  // namespace trrg
