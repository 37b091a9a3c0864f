#include "trrg/determinize.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>

#include "trrg/errors.hpp"

namespace trrg {

std::string subset_name(const std::vector<std::string>& members) {
  std::string name;
  for (const auto& m : members) {
    if (!name.empty()) name += "+";
    name += m;
  }
  return name;
}

const SubsetLocation& DeterministicModel::subset(std::string_view name) const {
  auto it = std::find_if(subsets.begin(), subsets.end(), [&](const SubsetLocation& s) { return s.name == name; });
  if (it == subsets.end()) throw DomainError("unknown subset location '" + std::string(name) + "'");
  return *it;
}

namespace {

struct Cell {
  ClockBounds bounds;
  std::vector<std::size_t> covering;  // indices into the competing edge list
};

ClockBounds point(std::int64_t p) { return ClockBounds{Limit{p, false}, Limit{p, false}}; }

// Maximal intervals of the single constrained clock on which the set of
// satisfied guards is constant and non-empty.
std::vector<Cell> partition(const std::vector<ClockBounds>& intervals) {
  std::set<std::int64_t> marks{0};
  for (const auto& b : intervals) {
    if (b.lower) marks.insert(b.lower->value);
    if (b.upper) marks.insert(b.upper->value);
  }
  std::vector<ClockBounds> pieces;
  for (auto it = marks.begin(); it != marks.end(); ++it) {
    pieces.push_back(point(*it));
    auto next = std::next(it);
    if (next == marks.end()) {
      pieces.push_back(ClockBounds{Limit{*it, true}, std::nullopt});
    } else {
      pieces.push_back(ClockBounds{Limit{*it, true}, Limit{*next, true}});
    }
  }

  std::vector<Cell> cells;
  for (const auto& piece : pieces) {
    std::vector<std::size_t> covering;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (intervals[i].includes(piece)) covering.push_back(i);
    }
    if (!cells.empty() && !covering.empty() && cells.back().covering == covering) {
      cells.back().bounds.upper = piece.upper;
      continue;
    }
    cells.push_back(Cell{piece, std::move(covering)});
  }
  std::erase_if(cells, [](const Cell& c) { return c.covering.empty(); });
  return cells;
}

}  // namespace

DeterministicModel determinize(const TimedModel& model) {
  const auto diagnostics = validate_model(model);
  if (has_errors(diagnostics)) {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::Error) throw ModelError(d.to_string());
    }
  }

  DeterministicModel result;
  result.source = model;
  std::vector<Location> locations;
  std::vector<Edge> edges;
  std::set<std::string> known;
  std::deque<std::vector<std::string>> work;

  auto discover = [&](std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    const std::string name = subset_name(members);
    if (known.insert(name).second) {
      SubsetLocation subset{members, name, false, {}};
      for (const auto& m : members) {
        const Location* loc = model.find_location(m);
        subset.is_final = subset.is_final || loc->is_final;
        for (const auto& d : loc->durations) {
          if (std::find(subset.durations.begin(), subset.durations.end(), d) == subset.durations.end()) {
            subset.durations.push_back(d);
          }
        }
      }
      locations.push_back(Location{name, subset.durations, subset.is_final});
      result.subsets.push_back(std::move(subset));
      work.push_back(members);
    }
    return name;
  };

  const std::string initial = discover({model.initial()});
  while (!work.empty()) {
    const std::vector<std::string> members = std::move(work.front());
    work.pop_front();
    const std::string source = subset_name(members);

    std::map<std::string, std::vector<const Edge*>> by_action;
    for (const auto& m : members) {
      for (std::size_t index : model.out_edges(m)) by_action[model.edges()[index].action].push_back(&model.edges()[index]);
    }

    for (const auto& [action, competing] : by_action) {
      auto unsupported = [&](const std::string& why) {
        return UnsupportedNondeterminism("unsupported nondeterminism at subset {" + source + "} on action '" +
                                         action + "': " + why);
      };
      auto common_reset = [&](const std::vector<const Edge*>& group) {
        std::set<std::optional<std::string>> resets;
        for (const Edge* e : group) resets.insert(e->reset);
        if (resets.size() > 1) throw unsupported("overlapping edges reset different clocks");
        return *resets.begin();
      };

      // Pairwise disjoint guards never compete: each edge survives unchanged.
      bool disjoint = true;
      for (std::size_t i = 0; i < competing.size() && disjoint; ++i) {
        for (std::size_t j = i + 1; j < competing.size() && disjoint; ++j) {
          disjoint = !Guard::conjunction(competing[i]->guard, competing[j]->guard).satisfiable();
        }
      }
      if (disjoint) {
        for (const Edge* e : competing) {
          edges.push_back(Edge{source, e->guard.normalized(), action, e->reset, discover({e->target})});
        }
        continue;
      }

      const Guard first = competing.front()->guard.normalized();
      const bool uniform = std::all_of(competing.begin(), competing.end(), [&](const Edge* e) {
        return e->guard.normalized() == first;
      });
      if (uniform) {
        std::vector<std::string> targets;
        for (const Edge* e : competing) targets.push_back(e->target);
        edges.push_back(Edge{source, first, action, common_reset(competing), discover(targets)});
        continue;
      }

      std::set<std::string> clocks;
      for (const Edge* e : competing) {
        const auto c = e->guard.clocks();
        clocks.insert(c.begin(), c.end());
      }
      if (clocks.size() > 1) {
        std::string names;
        for (const auto& c : clocks) names += (names.empty() ? "" : ", ") + c;
        throw unsupported("competing guards constrain several clocks (" + names + ")");
      }
      const std::string clock = *clocks.begin();
      std::vector<ClockBounds> intervals;
      for (const Edge* e : competing) intervals.push_back(e->guard.bounds_of(clock));
      for (const Cell& cell : partition(intervals)) {
        std::vector<std::string> targets;
        std::vector<const Edge*> group;
        for (std::size_t i : cell.covering) {
          targets.push_back(competing[i]->target);
          group.push_back(competing[i]);
        }
        const Guard guard = Guard::from_bounds({{clock, cell.bounds}});
        edges.push_back(Edge{source, guard, action, common_reset(group), discover(targets)});
      }
    }
  }

  result.model = TimedModel(std::move(locations), initial, model.clocks(), std::move(edges), model.alphabet());
  return result;
}

std::vector<std::string> determinism_violations(const TimedModel& model) {
  std::vector<std::string> out;
  for (const auto& loc : model.locations()) {
    const auto indices = model.out_edges(loc.name);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      for (std::size_t j = i + 1; j < indices.size(); ++j) {
        const Edge& a = model.edges()[indices[i]];
        const Edge& b = model.edges()[indices[j]];
        if (a.action != b.action) continue;
        if (Guard::conjunction(a.guard, b.guard).satisfiable()) {
          out.push_back(describe_edge(a) + " [" + a.guard.to_string() + "] overlaps " + describe_edge(b) + " [" +
                        b.guard.to_string() + "]");
        }
      }
    }
  }
  return out;
}

}  // namespace trrg
