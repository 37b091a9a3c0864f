#pragma once

// Alur-Dill clock regions over a fixed clock set with per-clock maximal
// constants.
//
// A region is stored canonically as one cell per clock (in clock-name order):
//   - overflow:       the clock exceeds its maximal constant; no fraction data;
//   - integer, rank:  integer part `integer` (<= c_x) and fractional rank.
// Rank 0 means the fractional part is zero. Non-zero fractions are ranked
// 1..m densely, equal ranks meaning equal fractions, so the ranks encode the
// ordered partition of fractional clocks directly.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trrg/model.hpp"
#include "trrg/time.hpp"

namespace trrg {

// Clock names (sorted) and the largest constant each one is compared with.
class MaxConstants {
 public:
  MaxConstants() = default;
  MaxConstants(std::vector<std::string> clocks, std::vector<std::int64_t> constants);

  std::size_t size() const noexcept { return clocks_.size(); }
  const std::vector<std::string>& clocks() const noexcept { return clocks_; }
  const std::vector<std::int64_t>& constants() const noexcept { return constants_; }
  std::int64_t constant(std::size_t clock) const { return constants_.at(clock); }
  // Throws DomainError for an unknown clock.
  std::size_t index_of(std::string_view clock) const;
  std::optional<std::size_t> find(std::string_view clock) const;

  friend bool operator==(const MaxConstants&, const MaxConstants&) = default;

 private:
  std::vector<std::string> clocks_;
  std::vector<std::int64_t> constants_;
};

// c_x = largest bound comparing x in any guard or duration condition; 0 if none.
MaxConstants max_constants(const TimedModel& model);

struct ClockCell {
  std::int64_t integer = 0;
  int rank = 0;
  bool overflow = false;

  friend auto operator<=>(const ClockCell&, const ClockCell&) = default;
};

using RegionSpace = std::shared_ptr<const MaxConstants>;

class ClockRegion {
 public:
  ClockRegion() = default;
  // Cells must be canonical: dense ranks, overflow cells {0, 0, true}.
  ClockRegion(RegionSpace space, std::vector<ClockCell> cells);

  const RegionSpace& space() const noexcept { return space_; }
  const std::vector<ClockCell>& cells() const noexcept { return cells_; }
  const ClockCell& cell(std::size_t clock) const { return cells_.at(clock); }
  std::size_t clock_count() const noexcept { return cells_.size(); }

  // Number of distinct non-zero fractional ranks.
  int fractional_ranks() const;
  // True iff every clock overflows (including the zero-clock region).
  bool is_unbounded() const;

  // Canonical text: "x=0, 0<y<1, frac(x)<frac(y)"; "true" without clocks.
  std::string to_string() const;

  // Regions over the same space compare by cells only.
  friend bool operator==(const ClockRegion& a, const ClockRegion& b) { return a.cells_ == b.cells_; }
  friend auto operator<=>(const ClockRegion& a, const ClockRegion& b) { return a.cells_ <=> b.cells_; }

 private:
  RegionSpace space_;
  std::vector<ClockCell> cells_;
};

struct ClockRegionHash {
  std::size_t operator()(const ClockRegion& region) const noexcept;
};

RegionSpace make_space(MaxConstants constants);

ClockRegion region_of(const Valuation& valuation, const RegionSpace& space);
ClockRegion initial_region(const RegionSpace& space);

// Next region entered as time elapses; nullopt for the unbounded region.
std::optional<ClockRegion> time_successor(const ClockRegion& region);

// The region itself followed by every iterated time successor.
std::vector<ClockRegion> succ_closure(const ClockRegion& region);

// True iff every valuation of the region satisfies the guard.
bool region_entails(const ClockRegion& region, const Guard& guard);

// Region of v[clock <- 0] for v in the region.
ClockRegion region_reset(const ClockRegion& region, std::string_view clock);
ClockRegion region_reset(const ClockRegion& region, std::size_t clock);

// Exact witness: integer clocks at their integer, fractional clocks at
// integer + rank/(m+1) for m fractional ranks, overflowing clocks at c + 1/2.
Valuation representative(const ClockRegion& region);

bool region_contains(const ClockRegion& region, const Valuation& valuation);

// Number of regions reachable from the initial region under time successors
// and single-clock resets.
std::uint64_t count_regions(const RegionSpace& space);

// |X|! * 2^|X| * prod(2 c_x + 2).
std::uint64_t region_count_bound(const MaxConstants& constants);

// Exact delay d >= 0 with region_of(valuation + d) == target, chosen
// deterministically: 0 if the valuation already lies in target, the instant
// itself for a point region, the midpoint of a bounded stretch, or the start
// of the final unbounded stretch plus 1/2. nullopt if letting time pass never
// enters target.
std::optional<Time> delay_into(const Valuation& valuation, const ClockRegion& target);

}  // namespace trrg
