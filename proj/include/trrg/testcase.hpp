#pragma once

// Test cases as traces of the canonical tester, their concretization into
// exact timed (delay, action) sequences, and the line-oriented case format:
//
//   case <id> expect=<pass|incon|fail>
//   step delay=<p>/<q> action=<name>
//   ...
//   <blank line between cases>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trrg/determinize.hpp"
#include "trrg/graph.hpp"
#include "trrg/time.hpp"

namespace trrg {

struct AbstractTestCase {
  std::vector<std::size_t> path;  // tester edge indices from the initial state
  Verdict terminal_verdict = Verdict::Pass;

  bool is_probe() const noexcept { return terminal_verdict == Verdict::Fail; }
};

struct TimedStep {
  Time delay;
  std::string action;

  friend bool operator==(const TimedStep&, const TimedStep&) = default;
};

struct TimedTestCase {
  std::string id;
  std::vector<TimedStep> steps;
  Verdict expected = Verdict::Pass;

  friend bool operator==(const TimedTestCase&, const TimedTestCase&) = default;
};

// All paths of at most `depth` edges from the initial state that use each
// edge at most once, cut at incon localities, at final localities other than
// the start, at dead ends and at the depth bound. With probes, every fail edge leaving a visited locality within
// the bound also yields a case ending in the fail sink. depth == 0 yields none.
// Throws LimitExceeded once more than `max_cases` cases would be produced.
std::vector<AbstractTestCase> extract_cases(const TesterGraph& tester, std::size_t depth,
                                            bool include_fail_probes, std::size_t max_cases = SIZE_MAX);

// One case per tester edge whose source is reachable within depth - 1 steps:
// a shortest path to the source followed by the edge. Fail edges only with
// probes.
std::vector<AbstractTestCase> edge_covering_cases(const TesterGraph& tester, std::size_t depth,
                                                  bool include_fail_probes);

// Walks the path from the all-zero valuation, choosing for each edge the
// delay_into() its witness region (0 for catch-all edges).
TimedTestCase concretize(const TesterGraph& tester, const AbstractTestCase& abstract, std::string id);

// Concretizes in order with ids "1", "2", ...
std::vector<TimedTestCase> concretize_all(const TesterGraph& tester, const std::vector<AbstractTestCase>& cases);

struct ReplayResult {
  bool ok = false;
  Verdict reached = Verdict::Pass;
  std::string message;
};

// Replays the case on the determinized specification alongside the tester:
// every step must match exactly one tester edge in the current region, the
// specification must take the step to the edge's base location and region
// (or refuse it on a fail edge), and the reached verdict must be `expected`.
ReplayResult replay_case(const TimedModel& determinized, const TesterGraph& tester, const TimedTestCase& tc);

// Verdict the specification itself obtains on the case: the verdict of the
// reached locality, or of the locality before the final step when that step
// leads into the fail sink. Throws ContractError if a step matches no edge.
Verdict reference_verdict(const TesterGraph& tester, const TimedTestCase& tc);

std::string format_cases(const std::vector<TimedTestCase>& cases);
// Throws SyntaxError with the offending line.
std::vector<TimedTestCase> parse_cases(std::string_view text);

}  // namespace trrg
