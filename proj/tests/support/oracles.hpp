#pragma once

// Reference implementations used to check the library. They work on concrete
// valuations and plain sets and share no code with the region engine, the
// determinizer or the graph builder beyond the model types and the timed
// step semantics.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trrg/model.hpp"

namespace oracle {

using Constants = std::map<std::string, std::int64_t>;

// Largest constant per declared clock from guards and durations (0 if unused).
Constants constants_of(const trrg::TimedModel& model);

// Alur-Dill equivalence, stated literally: equal clipped integer parts, equal
// zero-fraction flags and equal fraction order for every pair of clocks that
// stay within their constants.
bool equivalent(const trrg::Valuation& a, const trrg::Valuation& b, const Constants& constants);

// A string that is equal for two valuations iff they are equivalent.
std::string class_key(const trrg::Valuation& v, const Constants& constants);

// A valuation in the class entered first when time passes from v (v itself
// is returned when every clock exceeds its constant).
trrg::Valuation time_successor(const trrg::Valuation& v, const Constants& constants);

// Delays from v that visit every class reachable by letting time pass.
std::vector<trrg::Time> probe_delays(const trrg::Valuation& v, const Constants& constants);

struct Graph {
  std::set<std::string> states;  // "location|class key"
  std::set<std::string> edges;   // "source -action[witness key]-> target"
};

// Region automaton of a deterministic model enumerated over concrete
// valuations: from each reached (location, valuation), every probe delay and
// every edge whose guard holds gives one edge.
Graph brute_force_ara(const trrg::TimedModel& model, const Constants& constants);

struct Subsets {
  std::set<std::string> locations;  // members joined by "+"
  std::set<std::string> edges;      // "source -action-> target"
};

// Classical subset construction on the untimed automaton.
Subsets untimed_subsets(const trrg::TimedModel& model);

struct RandomModelOptions {
  int max_locations = 4;
  int max_clocks = 2;
  int max_constant = 3;
  bool deterministic = false;
  bool timed = true;
};

// Seeded random model. Every action has one guard clock and one reset choice,
// so any nondeterminism stays within the class the determinizer supports.
trrg::TimedModel random_model(std::uint64_t seed, const RandomModelOptions& options = {});

}  // namespace oracle
