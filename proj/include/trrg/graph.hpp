#pragma once

// Symbolic graphs over (determinized location, clock region) localities. The
// same structure carries the timed refusals region graph (no fail sink, no
// verdicts) and the canonical tester (fail sink and verdicts present).

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trrg/model.hpp"
#include "trrg/refusal.hpp"
#include "trrg/region.hpp"

namespace trrg {

enum class Verdict { Pass, Incon, Fail };

std::string_view to_string(Verdict verdict);
std::optional<Verdict> parse_verdict(std::string_view text);

struct SymbolicState {
  std::string base;
  ClockRegion region;
  RefusalSet refusals;
  bool is_final = false;
  bool is_initial = false;
  bool is_fail_sink = false;
};

struct SymbolicEdge {
  std::size_t source = 0;
  std::string action;
  // Region in which the action fires; nullopt on a catch-all edge, which
  // matches every region reachable from the source by letting time pass.
  std::optional<ClockRegion> witness;
  Guard guard;  // guard of the originating model edge; true on fail edges
  std::optional<std::string> reset;
  std::size_t target = 0;

  bool is_catch_all() const noexcept { return !witness.has_value(); }
  bool matches(std::string_view a, const ClockRegion& region) const {
    return action == a && (!witness || *witness == region);
  }
};

class TesterGraph {
 public:
  TesterGraph() = default;
  TesterGraph(RegionSpace space, std::vector<std::string> alphabet);

  const RegionSpace& space() const noexcept { return space_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }

  const std::vector<SymbolicState>& states() const noexcept { return states_; }
  const SymbolicState& state(std::size_t index) const { return states_.at(index); }
  const std::vector<SymbolicEdge>& edges() const noexcept { return edges_; }
  const SymbolicEdge& edge(std::size_t index) const { return edges_.at(index); }
  std::span<const std::size_t> out_edges(std::size_t state) const { return out_.at(state); }
  std::size_t initial() const noexcept { return initial_; }

  std::optional<std::size_t> find_state(std::string_view base, const ClockRegion& region) const;
  // Adds the state, or returns the existing one with the same (base, region).
  std::size_t add_state(SymbolicState state);
  std::size_t add_edge(SymbolicEdge edge);
  void remove_edge(std::size_t index);
  void set_initial(std::size_t index);

  std::optional<std::size_t> fail_sink() const noexcept { return fail_sink_; }
  std::size_t add_fail_sink();

  bool is_tester() const noexcept { return verdicts_.has_value(); }
  void set_verdicts(std::vector<Verdict> verdicts);
  // Throws ContractError on a graph without verdicts.
  Verdict verdict(std::size_t state) const;

  // "base@region" for localities, "fail" for the sink. Unique per state.
  std::string state_id(std::size_t index) const;

  // Outgoing edges of `state` matching the action in the region.
  std::vector<std::size_t> matching_edges(std::size_t state, std::string_view action,
                                          const ClockRegion& region) const;

 private:
  RegionSpace space_;
  std::vector<std::string> alphabet_;
  std::vector<SymbolicState> states_;
  std::vector<SymbolicEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::map<std::pair<std::string, ClockRegion>, std::size_t> index_;
  std::size_t initial_ = 0;
  std::optional<std::size_t> fail_sink_;
  std::optional<std::vector<Verdict>> verdicts_;
};

// Sorted, name-based description of states (with refusals and verdicts) and
// edges. Two graphs are isomorphic iff their descriptions are equal.
std::vector<std::string> describe_graph(const TesterGraph& graph);

// Copy without the fail sink, its incoming edges and the verdicts.
TesterGraph strip_fail_sink(const TesterGraph& tester);

}  // namespace trrg
