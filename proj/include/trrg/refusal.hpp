#pragma once

// Refusal decoration of determinized locations: forbidden actions, permanent
// refusals (choices lost to determinization) and temporary refusals (actions
// waiting for a positive lower bound).

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trrg/determinize.hpp"
#include "trrg/model.hpp"

namespace trrg {

class ClockRegion;

enum class RefusalKind { Permanent, Temporary };

struct GuardedRefusal {
  std::string action;
  Guard guard;  // normalized
  RefusalKind kind = RefusalKind::Permanent;

  // "a[x>=1]"; "a[true]" for an unconstrained guard.
  std::string to_string() const;

  friend auto operator<=>(const GuardedRefusal&, const GuardedRefusal&) = default;
  friend bool operator==(const GuardedRefusal&, const GuardedRefusal&) = default;
};

struct RefusalSet {
  std::set<std::string> forbidden;
  std::set<GuardedRefusal> permanent;
  std::set<GuardedRefusal> temporary;

  // Canonical attribute strings: "a,b", "a[x>=1],b[true]", ...
  std::string forbidden_string() const;
  std::string permanent_string() const;
  std::string temporary_string() const;

  // Some permanent refusal of `action` whose guard holds throughout `region`.
  bool permanently_refuses(std::string_view action, const ClockRegion& region) const;

  friend bool operator==(const RefusalSet&, const RefusalSet&) = default;
};

using Decorations = std::map<std::string, RefusalSet>;

std::set<std::string> forbidden_of(const DeterministicModel& model, std::string_view location);
std::set<GuardedRefusal> permanent_of(const DeterministicModel& model, std::string_view location);
std::set<GuardedRefusal> temporary_of(const DeterministicModel& model, std::string_view location);

// Total over the determinized locations.
Decorations decorate(const DeterministicModel& model);

// Checks that forbidden actions have no outgoing edge, permanent refusals are
// offered by some provenance member and temporary ones by the location itself.
std::vector<std::string> refusal_partition_violations(const DeterministicModel& model,
                                                      const Decorations& decorations);

}  // namespace trrg
