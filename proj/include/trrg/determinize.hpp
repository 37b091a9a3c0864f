#pragma once

// Subset construction over DATA* locations with guard partitioning. Supported
// class: per subset and action, the competing edges have pairwise disjoint
// guards, or identical guards, or guards that all constrain one common clock;
// edges enabled together must reset the same clock. Anything else raises
// UnsupportedNondeterminism.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "trrg/model.hpp"

namespace trrg {

struct SubsetLocation {
  std::vector<std::string> members;  // sorted, non-empty
  std::string name;                  // members joined by "+"
  bool is_final = false;
  std::vector<Guard> durations;
};

std::string subset_name(const std::vector<std::string>& members);

struct DeterministicModel {
  TimedModel model;  // locations are named by subset_name()
  std::vector<SubsetLocation> subsets;  // same order as model.locations()
  TimedModel source;

  const SubsetLocation& subset(std::string_view name) const;
};

DeterministicModel determinize(const TimedModel& model);

// Pairs of same-source, same-action edges whose guards overlap, as
// human-readable descriptions. Empty iff the model is deterministic.
std::vector<std::string> determinism_violations(const TimedModel& model);

}  // namespace trrg
