#include "trrg/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "trrg/errors.hpp"

namespace trrg {

// ---------------------------------------------------------------------------
// time helpers

std::string format_time(const Time& t) {
  return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

Time parse_time(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw DomainError("malformed time value '" + std::string(text) + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Time(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den < 1) throw DomainError("time denominator must be >= 1 in '" + std::string(text) + "'");
  return Time(num, den);
}

std::int64_t floor_of(const Time& t) {
  std::int64_t q = t.numerator() / t.denominator();
  if (t.numerator() < 0 && q * t.denominator() != t.numerator()) --q;
  return q;
}

// ---------------------------------------------------------------------------
// atoms and guards

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Less: return "<";
    case CmpOp::LessEq: return "<=";
    case CmpOp::Equal: return "=";
    case CmpOp::GreaterEq: return ">=";
    case CmpOp::Greater: return ">";
  }
  return "?";
}

bool Atom::holds(const Time& value) const {
  const Time b(bound);
  switch (op) {
    case CmpOp::Less: return value < b;
    case CmpOp::LessEq: return value <= b;
    case CmpOp::Equal: return value == b;
    case CmpOp::GreaterEq: return value >= b;
    case CmpOp::Greater: return value > b;
  }
  return false;
}

std::string Atom::to_string() const {
  return clock + std::string(trrg::to_string(op)) + std::to_string(bound);
}

namespace {

ClockBounds bounds_of_atom(const Atom& atom) {
  ClockBounds b;
  switch (atom.op) {
    case CmpOp::Less: b.upper = Limit{atom.bound, true}; break;
    case CmpOp::LessEq: b.upper = Limit{atom.bound, false}; break;
    case CmpOp::Equal:
      b.lower = Limit{atom.bound, false};
      b.upper = Limit{atom.bound, false};
      break;
    case CmpOp::GreaterEq: b.lower = Limit{atom.bound, false}; break;
    case CmpOp::Greater: b.lower = Limit{atom.bound, true}; break;
  }
  return b;
}

// Tighter of two lower limits.
Limit max_lower(const Limit& a, const Limit& b) {
  if (a.value != b.value) return a.value > b.value ? a : b;
  return Limit{a.value, a.strict || b.strict};
}

Limit min_upper(const Limit& a, const Limit& b) {
  if (a.value != b.value) return a.value < b.value ? a : b;
  return Limit{a.value, a.strict || b.strict};
}

}  // namespace

bool ClockBounds::empty() const {
  const Limit lo = lower.value_or(Limit{0, false});
  if (lo.value < 0) return false;
  if (!upper) return false;
  if (upper->value < 0) return true;
  if (lo.value > upper->value) return true;
  if (lo.value == upper->value) return lo.strict || upper->strict;
  return false;
}

bool ClockBounds::contains(const Time& value) const {
  if (lower) {
    if (lower->strict ? !(value > Time(lower->value)) : !(value >= Time(lower->value))) return false;
  }
  if (upper) {
    if (upper->strict ? !(value < Time(upper->value)) : !(value <= Time(upper->value))) return false;
  }
  return true;
}

bool ClockBounds::includes(const ClockBounds& inner) const {
  if (inner.empty()) return true;
  if (lower) {
    const Limit in = inner.lower.value_or(Limit{0, false});
    // inner's lower end must not be below ours.
    if (in.value < lower->value) return false;
    if (in.value == lower->value && lower->strict && !in.strict) return false;
  }
  if (upper) {
    if (!inner.upper) return false;
    if (inner.upper->value > upper->value) return false;
    if (inner.upper->value == upper->value && upper->strict && !inner.upper->strict) return false;
  }
  return true;
}

ClockBounds ClockBounds::intersect(const ClockBounds& other) const {
  ClockBounds r = *this;
  if (other.lower) r.lower = r.lower ? max_lower(*r.lower, *other.lower) : *other.lower;
  if (other.upper) r.upper = r.upper ? min_upper(*r.upper, *other.upper) : *other.upper;
  return r;
}

Guard::Guard(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

std::map<std::string, ClockBounds> Guard::bounds() const {
  std::map<std::string, ClockBounds> result;
  for (const auto& atom : atoms_) {
    auto& b = result[atom.clock];
    b = b.intersect(bounds_of_atom(atom));
  }
  return result;
}

ClockBounds Guard::bounds_of(const std::string& clock) const {
  ClockBounds b;
  for (const auto& atom : atoms_) {
    if (atom.clock == clock) b = b.intersect(bounds_of_atom(atom));
  }
  return b;
}

std::set<std::string> Guard::clocks() const {
  std::set<std::string> result;
  for (const auto& atom : atoms_) result.insert(atom.clock);
  return result;
}

bool Guard::satisfiable() const {
  for (const auto& [clock, b] : bounds()) {
    if (b.empty()) return false;
  }
  return true;
}

Guard Guard::from_bounds(const std::map<std::string, ClockBounds>& bounds) {
  std::vector<Atom> atoms;
  for (const auto& [clock, b] : bounds) {
    if (b.lower && b.upper && b.lower->value == b.upper->value && !b.lower->strict &&
        !b.upper->strict) {
      atoms.push_back(Atom{clock, CmpOp::Equal, b.lower->value});
      continue;
    }
    if (b.lower && !(b.lower->value <= 0 && !b.lower->strict) && !(b.lower->value < 0)) {
      atoms.push_back(Atom{clock, b.lower->strict ? CmpOp::Greater : CmpOp::GreaterEq, b.lower->value});
    }
    if (b.upper) {
      atoms.push_back(Atom{clock, b.upper->strict ? CmpOp::Less : CmpOp::LessEq, b.upper->value});
    }
  }
  return Guard(std::move(atoms));
}

Guard Guard::normalized() const { return from_bounds(bounds()); }

bool Guard::includes(const Guard& inner) const {
  if (!inner.satisfiable()) return true;
  const auto inner_bounds = inner.bounds();
  for (const auto& [clock, outer] : bounds()) {
    auto it = inner_bounds.find(clock);
    const ClockBounds in = it == inner_bounds.end() ? ClockBounds{} : it->second;
    if (!outer.includes(in)) return false;
  }
  return true;
}

std::string Guard::to_string() const {
  if (atoms_.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i > 0) out += " & ";
    out += atoms_[i].to_string();
  }
  return out;
}

Guard Guard::conjunction(const Guard& a, const Guard& b) {
  std::vector<Atom> atoms = a.atoms_;
  atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
  return Guard(std::move(atoms));
}

bool is_token(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_';
  });
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Atom parse_atom(std::string_view text) {
  const std::string_view s = trim(text);
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) != 0 || s[i] == '_')) ++i;
  const std::string_view clock = s.substr(0, i);
  if (clock.empty()) throw DomainError("guard atom '" + std::string(s) + "' lacks a clock name");
  std::string_view rest = trim(s.substr(i));
  CmpOp op;
  if (rest.starts_with("<=")) {
    op = CmpOp::LessEq;
    rest.remove_prefix(2);
  } else if (rest.starts_with(">=")) {
    op = CmpOp::GreaterEq;
    rest.remove_prefix(2);
  } else if (rest.starts_with("==")) {
    op = CmpOp::Equal;
    rest.remove_prefix(2);
  } else if (rest.starts_with("<")) {
    op = CmpOp::Less;
    rest.remove_prefix(1);
  } else if (rest.starts_with(">")) {
    op = CmpOp::Greater;
    rest.remove_prefix(1);
  } else if (rest.starts_with("=")) {
    op = CmpOp::Equal;
    rest.remove_prefix(1);
  } else {
    throw DomainError("guard atom '" + std::string(s) + "' lacks a comparison operator");
  }
  rest = trim(rest);
  std::int64_t bound = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), bound);
  if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size() || bound < 0) {
    throw DomainError("guard atom '" + std::string(s) + "' needs a natural-number bound");
  }
  return Atom{std::string(clock), op, bound};
}

}  // namespace

Guard parse_guard(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw DomainError("empty guard");
  if (s == "true") return Guard{};
  std::vector<Atom> atoms;
  std::size_t start = 0;
  while (true) {
    const auto amp = s.find('&', start);
    std::string_view part = s.substr(start, amp == std::string_view::npos ? s.size() - start : amp - start);
    // Accept "&&" as well as "&".
    if (amp != std::string_view::npos && amp + 1 < s.size() && s[amp + 1] == '&') {
      atoms.push_back(parse_atom(part));
      start = amp + 2;
      continue;
    }
    atoms.push_back(parse_atom(part));
    if (amp == std::string_view::npos) break;
    start = amp + 1;
  }
  return Guard(std::move(atoms));
}

// ---------------------------------------------------------------------------
// model

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TimedModel::TimedModel(std::vector<Location> locations, std::string initial,
                       std::vector<std::string> clocks, std::vector<Edge> edges,
                       std::vector<std::string> alphabet)
    : locations_(std::move(locations)),
      initial_(std::move(initial)),
      clocks_(sorted_unique(std::move(clocks))),
      edges_(std::move(edges)),
      alphabet_(sorted_unique(std::move(alphabet))) {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    location_index_.emplace(locations_[i].name, i);
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_index_[edges_[i].source].push_back(i);
  }
}

const Location* TimedModel::find_location(std::string_view name) const {
  auto it = location_index_.find(name);
  return it == location_index_.end() ? nullptr : &locations_[it->second];
}

bool TimedModel::has_clock(std::string_view name) const {
  return std::binary_search(clocks_.begin(), clocks_.end(), name);
}

bool TimedModel::has_action(std::string_view name) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), name);
}

std::span<const std::size_t> TimedModel::out_edges(std::string_view location) const {
  auto it = out_index_.find(location);
  if (it == out_index_.end()) return {};
  return it->second;
}

std::string Diagnostic::to_string() const {
  return std::string(severity == Severity::Error ? "error" : "warning") + ": " + subject + ": " +
         message;
}

std::string describe_edge(const Edge& edge) {
  return "edge " + edge.source + " -" + edge.action + "-> " + edge.target;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::vector<Diagnostic> validate_model(const TimedModel& model) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string subject, std::string message) {
    out.push_back(Diagnostic{Severity::Error, std::move(subject), std::move(message)});
  };

  std::set<std::string> seen;
  for (const auto& loc : model.locations()) {
    const std::string subject = "location " + loc.name;
    if (loc.name.empty()) error("location <empty>", "location name is empty");
    if (loc.name.find_first_of("\"\n\\") != std::string::npos) {
      error(subject, "location name contains a quote, backslash or newline");
    }
    if (!seen.insert(loc.name).second) error(subject, "duplicate location name");
    for (const auto& duration : loc.durations) {
      for (const auto& clock : duration.clocks()) {
        if (!model.has_clock(clock)) error(subject, "duration uses undeclared clock '" + clock + "'");
      }
      if (!duration.satisfiable()) {
        error(subject, "duration '" + duration.to_string() + "' is unsatisfiable");
      }
    }
  }
  if (model.find_location(model.initial()) == nullptr) {
    error("model", "initial location '" + model.initial() + "' is not declared");
  }
  for (const auto& clock : model.clocks()) {
    if (!is_token(clock)) error("clock " + clock, "clock name is not a [A-Za-z0-9_]+ token");
  }
  for (const auto& action : model.alphabet()) {
    if (!is_token(action)) error("action " + action, "action name is not a [A-Za-z0-9_]+ token");
  }

  std::map<std::string, std::set<std::string>> resetters;  // clock -> actions resetting it
  for (const auto& edge : model.edges()) {
    const std::string subject = describe_edge(edge);
    if (model.find_location(edge.source) == nullptr) {
      error(subject, "source location '" + edge.source + "' is not declared");
    }
    if (model.find_location(edge.target) == nullptr) {
      error(subject, "target location '" + edge.target + "' is not declared");
    }
    if (!model.has_action(edge.action)) {
      error(subject, "action '" + edge.action + "' is not in the alphabet");
    }
    if (edge.reset) {
      if (!model.has_clock(*edge.reset)) {
        error(subject, "reset clock '" + *edge.reset + "' is not declared");
      } else {
        resetters[*edge.reset].insert(edge.action);
      }
    }
    for (const auto& clock : edge.guard.clocks()) {
      if (!model.has_clock(clock)) error(subject, "guard uses undeclared clock '" + clock + "'");
    }
    if (!edge.guard.satisfiable()) {
      error(subject, "guard '" + edge.guard.to_string() + "' is unsatisfiable");
    }
  }
  for (const auto& [clock, actions] : resetters) {
    if (actions.size() > 1) {
      std::string names;
      for (const auto& a : actions) names += (names.empty() ? "" : ", ") + a;
      out.push_back(Diagnostic{Severity::Warning, "clock " + clock,
                               "reset by several actions (" + names + "); expected one clock per action"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// semantics

Valuation zero_valuation(const TimedModel& model) {
  Valuation v;
  for (const auto& clock : model.clocks()) v.emplace(clock, Time(0));
  return v;
}

Configuration initial_configuration(const TimedModel& model) {
  return Configuration{model.initial(), zero_valuation(model)};
}

bool guard_satisfied(const Guard& guard, const Valuation& valuation) {
  for (const auto& atom : guard.atoms()) {
    auto it = valuation.find(atom.clock);
    if (it == valuation.end()) throw DomainError("guard uses clock '" + atom.clock + "' outside the valuation");
    if (!atom.holds(it->second)) return false;
  }
  return true;
}

Configuration step_delay(const Configuration& config, const Time& delay) {
  if (delay < Time(0)) throw DomainError("negative delay " + format_time(delay));
  Configuration next = config;
  for (auto& [clock, value] : next.valuation) value += delay;
  return next;
}

std::vector<Configuration> step_action(const TimedModel& model, const Configuration& config,
                                       std::string_view action) {
  if (!model.has_action(action)) throw DomainError("action '" + std::string(action) + "' is not in the alphabet");
  std::vector<Configuration> result;
  for (std::size_t index : model.out_edges(config.location)) {
    const Edge& edge = model.edges()[index];
    if (edge.action != action || !guard_satisfied(edge.guard, config.valuation)) continue;
    Configuration next{edge.target, config.valuation};
    if (edge.reset) next.valuation[*edge.reset] = Time(0);
    if (std::find(result.begin(), result.end(), next) == result.end()) result.push_back(std::move(next));
  }
  return result;
}

std::map<std::string, std::vector<Guard>> enabled_actions(const TimedModel& model,
                                                          std::string_view location) {
  std::map<std::string, std::vector<Guard>> result;
  for (std::size_t index : model.out_edges(location)) {
    const Edge& edge = model.edges()[index];
    auto& guards = result[edge.action];
    if (std::find(guards.begin(), guards.end(), edge.guard) == guards.end()) guards.push_back(edge.guard);
  }
  return result;
}

}  // namespace trrg
