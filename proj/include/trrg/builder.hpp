#pragma once

// Region automaton over a determinized, decorated model, and the full
// model -> TRRG pipeline.

#include <string>
#include <vector>

#include "trrg/determinize.hpp"
#include "trrg/graph.hpp"
#include "trrg/model.hpp"
#include "trrg/refusal.hpp"

namespace trrg {

// Breadth-first from (initial location, initial region). For each locality
// (q, r), each model edge (q, g, a, x, q') and each r'' in succ_closure(r)
// with r'' |= g, adds the edge (q, r) -a[r'']-> (q', r''[x <- 0]). States
// inherit the refusals of their base location.
TesterGraph build_ara(const DeterministicModel& model, const Decorations& decorations);

struct TrrgBuild {
  DeterministicModel determinized;
  Decorations decorations;
  TesterGraph trrg;
};

TrrgBuild build_trrg_stages(const TimedModel& model);
TesterGraph build_trrg(const TimedModel& model);

// Pairs of outgoing edges sharing (action, witness).
std::vector<std::string> trrg_determinism_violations(const TesterGraph& graph);

// Edges whose witness does not entail the originating guard, or whose target
// region is not the reset of the witness.
std::vector<std::string> edge_region_violations(const TesterGraph& graph);

}  // namespace trrg
