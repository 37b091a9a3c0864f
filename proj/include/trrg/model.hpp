#pragma once

// Durational-actions timed automata: model types, validation and the timed
// operational semantics (delay and action steps over configurations).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trrg/time.hpp"

namespace trrg {

enum class CmpOp { Less, LessEq, Equal, GreaterEq, Greater };

std::string_view to_string(CmpOp op);

// Clock constraint `clock op bound`.
struct Atom {
  std::string clock;
  CmpOp op = CmpOp::GreaterEq;
  std::int64_t bound = 0;

  bool holds(const Time& value) const;
  std::string to_string() const;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

// One side of an interval: `value` with `strict` selecting < / > over <= / >=.
struct Limit {
  std::int64_t value = 0;
  bool strict = false;

  friend auto operator<=>(const Limit&, const Limit&) = default;
};

// Interval of values a guard admits for one clock. Absent limits are open-ended
// (the lower end defaults to x >= 0, which every clock satisfies).
struct ClockBounds {
  std::optional<Limit> lower;
  std::optional<Limit> upper;

  bool empty() const;
  bool contains(const Time& value) const;
  // True iff every value admitted by `inner` is admitted by *this.
  bool includes(const ClockBounds& inner) const;
  ClockBounds intersect(const ClockBounds& other) const;

  friend auto operator<=>(const ClockBounds&, const ClockBounds&) = default;
};

// Conjunction of atoms; the empty conjunction is `true`.
class Guard {
 public:
  Guard() = default;
  explicit Guard(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  bool is_true() const noexcept { return atoms_.empty(); }

  // Per-clock intersection of the atoms.
  std::map<std::string, ClockBounds> bounds() const;
  ClockBounds bounds_of(const std::string& clock) const;
  std::set<std::string> clocks() const;
  bool satisfiable() const;

  // At most one lower and one upper atom per clock, clocks in name order,
  // lower before upper, a closed point rendered as `x=c`, `x>=0` dropped.
  Guard normalized() const;

  // True iff every valuation satisfying `inner` satisfies *this.
  bool includes(const Guard& inner) const;

  // "x>=2 & y<3" in stored atom order; "true" when empty.
  std::string to_string() const;

  static Guard from_bounds(const std::map<std::string, ClockBounds>& bounds);
  static Guard conjunction(const Guard& a, const Guard& b);

  friend bool operator==(const Guard&, const Guard&) = default;
  friend auto operator<=>(const Guard&, const Guard&) = default;

 private:
  std::vector<Atom> atoms_;
};

// Parses "true" or "<atom>( & <atom>)*". Throws DomainError on bad syntax.
Guard parse_guard(std::string_view text);

// True for non-empty [A-Za-z0-9_]+ names (actions and clocks).
bool is_token(std::string_view name);

struct Location {
  std::string name;
  std::vector<Guard> durations;
  bool is_final = false;

  friend bool operator==(const Location&, const Location&) = default;
};

struct Edge {
  std::string source;
  Guard guard;
  std::string action;
  std::optional<std::string> reset;
  std::string target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A DATA* model. Immutable after construction; clocks and alphabet are kept
// sorted and duplicate-free, locations and edges keep their given order.
class TimedModel {
 public:
  TimedModel() = default;
  TimedModel(std::vector<Location> locations, std::string initial,
             std::vector<std::string> clocks, std::vector<Edge> edges,
             std::vector<std::string> alphabet);

  const std::vector<Location>& locations() const noexcept { return locations_; }
  const std::string& initial() const noexcept { return initial_; }
  const std::vector<std::string>& clocks() const noexcept { return clocks_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }

  const Location* find_location(std::string_view name) const;
  bool has_clock(std::string_view name) const;
  bool has_action(std::string_view name) const;

  // Indices into edges() of the edges leaving `location`, in edge order.
  std::span<const std::size_t> out_edges(std::string_view location) const;

 private:
  std::vector<Location> locations_;
  std::string initial_;
  std::vector<std::string> clocks_;
  std::vector<Edge> edges_;
  std::vector<std::string> alphabet_;
  std::map<std::string, std::size_t, std::less<>> location_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> out_index_;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string subject;  // "location s1", "edge s0 -a-> s1", "model"
  std::string message;

  std::string to_string() const;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::vector<Diagnostic> validate_model(const TimedModel& model);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

std::string describe_edge(const Edge& edge);

using Valuation = std::map<std::string, Time>;

Valuation zero_valuation(const TimedModel& model);

struct Configuration {
  std::string location;
  Valuation valuation;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const TimedModel& model);

// Throws DomainError if the guard names a clock absent from `valuation`.
bool guard_satisfied(const Guard& guard, const Valuation& valuation);

// Throws DomainError on a negative delay.
Configuration step_delay(const Configuration& config, const Time& delay);

// One configuration per enabled edge labeled `action`, in edge order, with
// duplicates removed. Empty iff the action is refused. Throws DomainError if
// `action` is not in the alphabet.
std::vector<Configuration> step_action(const TimedModel& model, const Configuration& config,
                                       std::string_view action);

// Guards of the outgoing edges of `location`, grouped by action.
std::map<std::string, std::vector<Guard>> enabled_actions(const TimedModel& model,
                                                          std::string_view location);

}  // namespace trrg
