#include "trrg/refusal.hpp"

#include <algorithm>

#include "trrg/errors.hpp"
#include "trrg/region.hpp"

namespace trrg {

std::string GuardedRefusal::to_string() const { return action + "[" + guard.to_string() + "]"; }

namespace {

template <typename Range, typename Render>
std::string join(const Range& items, Render render) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ",";
    out += render(item);
  }
  return out;
}

// A guard that keeps its action refused for a while after entry: some clock
// needs a strictly positive lower bound.
bool has_positive_lower_bound(const Guard& guard) {
  for (const auto& [clock, b] : guard.bounds()) {
    if (b.lower && (b.lower->strict ? b.lower->value >= 0 : b.lower->value >= 1)) return true;
  }
  return false;
}

void require_location(const DeterministicModel& model, std::string_view location) {
  if (model.model.find_location(location) == nullptr) {
    throw DomainError("unknown determinized location '" + std::string(location) + "'");
  }
}

}  // namespace

std::string RefusalSet::forbidden_string() const {
  return join(forbidden, [](const std::string& a) { return a; });
}

std::string RefusalSet::permanent_string() const {
  return join(permanent, [](const GuardedRefusal& r) { return r.to_string(); });
}

std::string RefusalSet::temporary_string() const {
  return join(temporary, [](const GuardedRefusal& r) { return r.to_string(); });
}

bool RefusalSet::permanently_refuses(std::string_view action, const ClockRegion& region) const {
  return std::any_of(permanent.begin(), permanent.end(), [&](const GuardedRefusal& r) {
    return r.action == action && region_entails(region, r.guard);
  });
}

std::set<std::string> forbidden_of(const DeterministicModel& model, std::string_view location) {
  require_location(model, location);
  std::set<std::string> result(model.model.alphabet().begin(), model.model.alphabet().end());
  for (std::size_t index : model.model.out_edges(location)) result.erase(model.model.edges()[index].action);
  return result;
}

std::set<GuardedRefusal> permanent_of(const DeterministicModel& model, std::string_view location) {
  require_location(model, location);
  const SubsetLocation& subset = model.subset(location);
  std::set<GuardedRefusal> result;
  for (std::size_t index : model.model.out_edges(location)) {
    const Edge& edge = model.model.edges()[index];
    std::size_t offering = 0;
    for (const auto& member : subset.members) {
      for (std::size_t original : model.source.out_edges(member)) {
        const Edge& e = model.source.edges()[original];
        if (e.action == edge.action && e.guard.includes(edge.guard)) {
          ++offering;
          break;
        }
      }
    }
    if (offering > 0 && offering < subset.members.size()) {
      result.insert(GuardedRefusal{edge.action, edge.guard.normalized(), RefusalKind::Permanent});
    }
  }
  return result;
}

std::set<GuardedRefusal> temporary_of(const DeterministicModel& model, std::string_view location) {
  require_location(model, location);
  std::set<GuardedRefusal> result;
  for (std::size_t index : model.model.out_edges(location)) {
    const Edge& edge = model.model.edges()[index];
    const Guard guard = edge.guard.normalized();
    if (has_positive_lower_bound(guard)) result.insert(GuardedRefusal{edge.action, guard, RefusalKind::Temporary});
  }
  return result;
}

Decorations decorate(const DeterministicModel& model) {
  Decorations result;
  for (const auto& loc : model.model.locations()) {
    result.emplace(loc.name, RefusalSet{forbidden_of(model, loc.name), permanent_of(model, loc.name),
                                        temporary_of(model, loc.name)});
  }
  return result;
}

std::vector<std::string> refusal_partition_violations(const DeterministicModel& model,
                                                      const Decorations& decorations) {
  std::vector<std::string> out;
  for (const auto& loc : model.model.locations()) {
    auto it = decorations.find(loc.name);
    if (it == decorations.end()) {
      out.push_back(loc.name + ": no refusal decoration");
      continue;
    }
    const RefusalSet& refusals = it->second;
    std::set<std::string> offered;
    for (std::size_t index : model.model.out_edges(loc.name)) offered.insert(model.model.edges()[index].action);
    for (const auto& a : refusals.forbidden) {
      if (offered.contains(a)) out.push_back(loc.name + ": forbidden action '" + a + "' has an outgoing edge");
    }
    for (const auto& a : model.model.alphabet()) {
      if (!offered.contains(a) && !refusals.forbidden.contains(a)) {
        out.push_back(loc.name + ": action '" + a + "' is neither offered nor forbidden");
      }
    }
    const SubsetLocation& subset = model.subset(loc.name);
    for (const auto& r : refusals.permanent) {
      const bool some_member = std::any_of(subset.members.begin(), subset.members.end(), [&](const std::string& m) {
        for (std::size_t index : model.source.out_edges(m)) {
          if (model.source.edges()[index].action == r.action) return true;
        }
        return false;
      });
      if (!some_member) out.push_back(loc.name + ": permanent refusal " + r.to_string() + " offered by no member");
    }
    for (const auto& r : refusals.temporary) {
      if (!offered.contains(r.action)) {
        out.push_back(loc.name + ": temporary refusal " + r.to_string() + " without an outgoing edge");
      }
    }
  }
  return out;
}

}  // namespace trrg
