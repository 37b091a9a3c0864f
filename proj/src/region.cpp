#include "trrg/region.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "trrg/errors.hpp"

namespace trrg {

MaxConstants::MaxConstants(std::vector<std::string> clocks, std::vector<std::int64_t> constants)
    : clocks_(std::move(clocks)), constants_(std::move(constants)) {
  if (clocks_.size() != constants_.size()) throw DomainError("clock/constant count mismatch");
  if (!std::is_sorted(clocks_.begin(), clocks_.end()) ||
      std::adjacent_find(clocks_.begin(), clocks_.end()) != clocks_.end()) {
    throw DomainError("clock names must be sorted and unique");
  }
}

std::optional<std::size_t> MaxConstants::find(std::string_view clock) const {
  auto it = std::lower_bound(clocks_.begin(), clocks_.end(), clock);
  if (it == clocks_.end() || *it != clock) return std::nullopt;
  return static_cast<std::size_t>(it - clocks_.begin());
}

std::size_t MaxConstants::index_of(std::string_view clock) const {
  if (auto index = find(clock)) return *index;
  throw DomainError("unknown clock '" + std::string(clock) + "'");
}

MaxConstants max_constants(const TimedModel& model) {
  std::map<std::string, std::int64_t> max;
  for (const auto& clock : model.clocks()) max[clock] = 0;
  auto scan = [&](const Guard& guard) {
    for (const auto& atom : guard.atoms()) {
      auto it = max.find(atom.clock);
      if (it != max.end()) it->second = std::max(it->second, atom.bound);
    }
  };
  for (const auto& edge : model.edges()) scan(edge.guard);
  for (const auto& loc : model.locations()) {
    for (const auto& duration : loc.durations) scan(duration);
  }
  std::vector<std::string> clocks;
  std::vector<std::int64_t> constants;
  for (const auto& [clock, c] : max) {
    clocks.push_back(clock);
    constants.push_back(c);
  }
  return MaxConstants(std::move(clocks), std::move(constants));
}

RegionSpace make_space(MaxConstants constants) {
  return std::make_shared<const MaxConstants>(std::move(constants));
}

ClockRegion::ClockRegion(RegionSpace space, std::vector<ClockCell> cells)
    : space_(std::move(space)), cells_(std::move(cells)) {
  if (!space_ || space_->size() != cells_.size()) throw DomainError("region does not match its clock space");
}

int ClockRegion::fractional_ranks() const {
  int m = 0;
  for (const auto& c : cells_) m = std::max(m, c.rank);
  return m;
}

bool ClockRegion::is_unbounded() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const ClockCell& c) { return c.overflow; });
}

std::string ClockRegion::to_string() const {
  if (cells_.empty()) return "true";
  const auto& names = space_->clocks();
  std::string out;
  auto append = [&](const std::string& clause) {
    if (!out.empty()) out += ", ";
    out += clause;
  };
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& c = cells_[i];
    if (c.overflow) {
      append(names[i] + ">" + std::to_string(space_->constant(i)));
    } else if (c.rank == 0) {
      append(names[i] + "=" + std::to_string(c.integer));
    } else {
      append(std::to_string(c.integer) + "<" + names[i] + "<" + std::to_string(c.integer + 1));
    }
  }
  const int m = fractional_ranks();
  std::string previous_first;
  for (int rank = 1; rank <= m; ++rank) {
    std::string first;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i].overflow || cells_[i].rank != rank) continue;
      if (first.empty()) {
        first = names[i];
        if (!previous_first.empty()) append("frac(" + previous_first + ")<frac(" + first + ")");
      } else {
        append("frac(" + first + ")=frac(" + names[i] + ")");
      }
    }
    previous_first = first;
  }
  return out;
}

std::size_t ClockRegionHash::operator()(const ClockRegion& region) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& c : region.cells()) {
    const std::size_t v = static_cast<std::size_t>(c.integer) * 131 + static_cast<std::size_t>(c.rank) * 7 +
                          (c.overflow ? 1 : 0);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

// Renumbers non-zero ranks to 1..m preserving order.
void densify(std::vector<ClockCell>& cells) {
  std::set<int> used;
  for (const auto& c : cells) {
    if (!c.overflow && c.rank > 0) used.insert(c.rank);
  }
  std::map<int, int> remap;
  int next = 1;
  for (int r : used) remap[r] = next++;
  for (auto& c : cells) {
    if (c.overflow) {
      c = ClockCell{0, 0, true};
    } else if (c.rank > 0) {
      c.rank = remap[c.rank];
    }
  }
}

}  // namespace

ClockRegion region_of(const Valuation& valuation, const RegionSpace& space) {
  const auto& clocks = space->clocks();
  std::vector<ClockCell> cells(clocks.size());
  std::vector<Time> fractions;
  std::vector<Time> frac_of(clocks.size());
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    auto it = valuation.find(clocks[i]);
    if (it == valuation.end()) throw DomainError("valuation lacks clock '" + clocks[i] + "'");
    const Time& value = it->second;
    if (value < Time(0)) throw DomainError("negative clock value for '" + clocks[i] + "'");
    if (value > Time(space->constant(i))) {
      cells[i] = ClockCell{0, 0, true};
      continue;
    }
    const std::int64_t integer = floor_of(value);
    cells[i].integer = integer;
    frac_of[i] = value - Time(integer);
    if (frac_of[i] != Time(0)) fractions.push_back(frac_of[i]);
  }
  std::sort(fractions.begin(), fractions.end());
  fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());
  for (std::size_t i = 0; i < clocks.size(); ++i) {
    if (cells[i].overflow || frac_of[i] == Time(0)) continue;
    cells[i].rank = static_cast<int>(std::lower_bound(fractions.begin(), fractions.end(), frac_of[i]) -
                                      fractions.begin()) +
                    1;
  }
  return ClockRegion(space, std::move(cells));
}

ClockRegion initial_region(const RegionSpace& space) {
  return ClockRegion(space, std::vector<ClockCell>(space->size()));
}

std::optional<ClockRegion> time_successor(const ClockRegion& region) {
  if (region.is_unbounded()) return std::nullopt;
  const auto& space = *region.space();
  std::vector<ClockCell> cells = region.cells();
  const bool has_integer_point = std::any_of(cells.begin(), cells.end(), [](const ClockCell& c) {
    return !c.overflow && c.rank == 0;
  });
  if (has_integer_point) {
    // Integer clocks leave their integer and get the smallest fraction.
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto& c = cells[i];
      if (c.overflow) continue;
      if (c.rank > 0) {
        c.rank += 1;
      } else if (c.integer >= space.constant(i)) {
        c = ClockCell{0, 0, true};
      } else {
        c.rank = 1;
      }
    }
  } else {
    // Clocks with the largest fraction reach the next integer.
    const int top = region.fractional_ranks();
    for (auto& c : cells) {
      if (!c.overflow && c.rank == top) {
        c.integer += 1;
        c.rank = 0;
      }
    }
  }
  densify(cells);
  return ClockRegion(region.space(), std::move(cells));
}

std::vector<ClockRegion> succ_closure(const ClockRegion& region) {
  std::vector<ClockRegion> out{region};
  while (auto next = time_successor(out.back())) out.push_back(std::move(*next));
  return out;
}

namespace {

// Does every value of the clock's cell satisfy the atom?
bool cell_entails(const ClockCell& cell, std::int64_t max_constant, const Atom& atom) {
  if (!cell.overflow && cell.rank == 0) return atom.holds(Time(cell.integer));
  const std::int64_t lo = cell.overflow ? max_constant : cell.integer;
  switch (atom.op) {
    case CmpOp::Less:
    case CmpOp::LessEq:
      return !cell.overflow && cell.integer + 1 <= atom.bound;
    case CmpOp::Equal:
      return false;
    case CmpOp::GreaterEq:
    case CmpOp::Greater:
      return lo >= atom.bound;
  }
  return false;
}

}  // namespace

bool region_entails(const ClockRegion& region, const Guard& guard) {
  const auto& space = *region.space();
  for (const auto& atom : guard.atoms()) {
    const std::size_t i = space.index_of(atom.clock);
    if (!cell_entails(region.cell(i), space.constant(i), atom)) return false;
  }
  return true;
}

ClockRegion region_reset(const ClockRegion& region, std::size_t clock) {
  std::vector<ClockCell> cells = region.cells();
  cells.at(clock) = ClockCell{};
  densify(cells);
  return ClockRegion(region.space(), std::move(cells));
}

ClockRegion region_reset(const ClockRegion& region, std::string_view clock) {
  return region_reset(region, region.space()->index_of(clock));
}

Valuation representative(const ClockRegion& region) {
  const auto& space = *region.space();
  const std::int64_t m = region.fractional_ranks();
  Valuation v;
  for (std::size_t i = 0; i < region.clock_count(); ++i) {
    const auto& c = region.cell(i);
    Time value;
    if (c.overflow) {
      value = Time(space.constant(i)) + Time(1, 2);
    } else if (c.rank == 0) {
      value = Time(c.integer);
    } else {
      value = Time(c.integer) + Time(c.rank, m + 1);
    }
    v.emplace(space.clocks()[i], value);
  }
  return v;
}

bool region_contains(const ClockRegion& region, const Valuation& valuation) {
  return region_of(valuation, region.space()) == region;
}

std::uint64_t count_regions(const RegionSpace& space) {
  std::set<ClockRegion> seen;
  std::queue<ClockRegion> work;
  const ClockRegion start = initial_region(space);
  seen.insert(start);
  work.push(start);
  while (!work.empty()) {
    const ClockRegion r = work.front();
    work.pop();
    std::vector<ClockRegion> next;
    if (auto s = time_successor(r)) next.push_back(std::move(*s));
    for (std::size_t i = 0; i < space->size(); ++i) next.push_back(region_reset(r, i));
    for (auto& n : next) {
      if (seen.insert(n).second) work.push(std::move(n));
    }
  }
  return seen.size();
}

std::uint64_t region_count_bound(const MaxConstants& constants) {
  std::uint64_t bound = 1;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    bound *= (i + 1) * 2 * static_cast<std::uint64_t>(2 * constants.constant(i) + 2);
  }
  return bound;
}

std::optional<Time> delay_into(const Valuation& valuation, const ClockRegion& target) {
  const auto& space = *target.space();
  std::vector<Time> breaks;
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto it = valuation.find(space.clocks()[i]);
    if (it == valuation.end()) throw DomainError("valuation lacks clock '" + space.clocks()[i] + "'");
    const Time& value = it->second;
    for (std::int64_t k = floor_of(value) + 1; k <= space.constant(i); ++k) breaks.push_back(Time(k) - value);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto advanced = [&](const Time& d) {
    Valuation v = valuation;
    for (auto& [clock, value] : v) value += d;
    return v;
  };
  auto hits = [&](const Time& d) { return region_of(advanced(d), target.space()) == target; };

  if (hits(Time(0))) return Time(0);
  Time previous(0);
  for (const Time& b : breaks) {
    const Time mid = (previous + b) / Time(2);
    if (hits(mid)) return mid;
    if (hits(b)) return b;
    previous = b;
  }
  const Time tail = previous + Time(1, 2);
  if (hits(tail)) return tail;
  return std::nullopt;
}

}  // namespace trrg
