#pragma once

// Model-level conformance runs: timed test cases are executed against an
// implementation model under the timed semantics while the canonical tester
// tracks what the specification permits. Also provides single-edit mutants of
// a model and a bounded behavioral equivalence check used to classify them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trrg/graph.hpp"
#include "trrg/model.hpp"
#include "trrg/testcase.hpp"

namespace trrg {

// How a nondeterministic implementation resolves a choice between successors.
enum class ChoicePolicy { FirstCanonical, Seeded };

struct RunOptions {
  ChoicePolicy policy = ChoicePolicy::FirstCanonical;
  std::uint64_t seed = 0;
};

struct StepRecord {
  Time delay;
  std::string action;
  bool accepted = false;
};

struct RunReport {
  std::string case_id;
  Verdict observed = Verdict::Pass;
  Verdict expected = Verdict::Pass;
  std::vector<StepRecord> steps;
  // The implementation obtained the verdict the specification obtains on
  // this case (for fail probes: it refused the probed action).
  bool agreement = false;
  std::string diagnostic;
};

RunReport run_case(const TimedModel& impl, const TimedTestCase& tc, const TesterGraph& tester,
                   const RunOptions& options = {});

struct SuiteSummary {
  std::size_t pass = 0;
  std::size_t incon = 0;
  std::size_t fail = 0;
  std::vector<RunReport> reports;       // in suite order
  std::vector<std::string> disagreements;  // case ids

  std::string to_text() const;
  // One JSON object per line: id, expected, observed, agreement.
  std::string to_json_lines() const;
};

SuiteSummary run_suite(const TimedModel& impl, const std::vector<TimedTestCase>& suite, const TesterGraph& tester,
                       const RunOptions& options = {});

enum class MutationKind { AddEdge, DeleteEdge, WidenGuard, NarrowGuard, RetargetEdge };

std::string_view to_string(MutationKind kind);

struct Mutant {
  TimedModel model;
  MutationKind kind = MutationKind::DeleteEdge;
  std::string description;
};

// Every valid single-edit mutant of the requested kinds, in a fixed order,
// without duplicates and without copies of the base model. Guards move by one
// time unit; added edges are self-loops with guard true for an action the
// location does not offer.
std::vector<Mutant> enumerate_mutants(const TimedModel& model, std::span<const MutationKind> kinds);

// `count` mutants of all kinds drawn by a seeded shuffle; fewer if the model
// has fewer distinct mutants.
std::vector<Mutant> generate_mutants(const TimedModel& model, std::uint64_t seed, std::size_t count);

// Explores both determinized models in lockstep over regions of their joint
// clocks up to `depth` actions. Returns a distinguishing trace (actions with
// their firing regions) if some action is enabled in one model but not the
// other, nullopt if they agree up to the depth.
std::optional<std::vector<std::string>> behavioral_difference(const TimedModel& spec, const TimedModel& impl,
                                                              std::size_t depth);

}  // namespace trrg
