#pragma once

// DOT dialect for models and symbolic graphs.
//
// Models: one node per location (id = name) with optional initial="true",
// final="true" and durations="<guard>(;<guard>)*"; one edge per transition
// with label="<action>", optional guard="<atom>( & <atom>)*" (absent = true)
// and optional reset="<clock>". Graph attributes actions="a,b" and
// clocks="x,y" extend the alphabet and the clock set beyond what the edges
// mention; a clock used in a guard or duration must be reset somewhere or
// listed in clocks.
//
// Symbolic graphs: node "<base>@<region>" carrying base, region, forb, perm,
// temp (and verdict on testers); the sink is node "fail". Edges carry label,
// witness (region string, "*" for catch-all) and reset.

#include <string>
#include <string_view>
#include <vector>

#include "trrg/determinize.hpp"
#include "trrg/dot.hpp"
#include "trrg/graph.hpp"
#include "trrg/model.hpp"
#include "trrg/refusal.hpp"

namespace trrg {

// Throws ModelError for documents outside the dialect or describing an
// invalid model.
TimedModel parse_model(const DotDocument& document);
// parse_dot + parse_model; SyntaxError for lexical/grammar problems.
TimedModel parse_model_text(std::string_view text);

// Nodes sorted by name, edges by (source, action, target, guard).
DotDocument emit_model(const TimedModel& model);

// A determinized model with forb/perm/temp node attributes.
DotDocument emit_decorated(const DeterministicModel& model, const Decorations& decorations);

// Nodes sorted by id, edges by (source, action, target, witness). Optional
// comment lines (e.g. test cases) are written ahead of the graph.
DotDocument emit_tester(const TesterGraph& graph, std::vector<std::string> comments = {});

// Canonical text of a model: equal for isomorphic models.
std::string canonical_text(const TimedModel& model);

}  // namespace trrg
