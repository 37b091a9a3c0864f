#pragma once

// Command orchestration: parse -> determinize -> decorate -> TRRG -> tester
// -> test cases -> run. Each command reads the input model, writes its
// artifacts into the output directory named after the input stem, and maps
// failures onto distinct exit statuses. Nothing is written when a command
// fails.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include "trrg/graph.hpp"
#include "trrg/model.hpp"
#include "trrg/testcase.hpp"

namespace trrg {

enum class ExitStatus : int {
  Ok = 0,
  Usage = 1,
  Parse = 2,
  Validation = 3,
  Nondeterminism = 4,
  Completeness = 5,
  Conformance = 6,
  Io = 7,
};

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path output_dir = ".";
  std::size_t depth = 6;
  bool include_fail_probes = true;
  // run: resolve implementation choices randomly from this seed instead of canonically first.
  std::optional<std::uint64_t> seed;
  bool emit_intermediates = false;
  // Use the edge-covering suite instead of all bounded paths.
  bool edge_cover = false;
  // Upper limit on enumerated paths; exceeding it is a usage error.
  std::size_t max_cases = 1'000'000;
  std::filesystem::path impl;   // run: implementation model
  std::filesystem::path cases;  // run: case file; generated from the input when empty
  // Test hook applied to the tester before the completeness check.
  std::function<void(TesterGraph&)> tamper_tester;
};

// Tester of a TRRG; throws CompletenessError listing every gap.
TesterGraph checked_tester(const TesterGraph& trrg);

// Cases for a tester as configured (bounded paths or edge cover, probes).
std::vector<TimedTestCase> generate_cases(const TesterGraph& tester, const PipelineConfig& config);

// <output_dir>/<input stem><suffix>
std::filesystem::path artifact_path(const PipelineConfig& config, const std::string& suffix);

// Writes <stem>.trrg.dot.
int cmd_trrg(const PipelineConfig& config, std::ostream& err);
// Writes <stem>.tester.dot.
int cmd_tester(const PipelineConfig& config, std::ostream& err);
// Writes <stem>.cases.txt and <stem>.cases.dot (tester with the cases as comments).
int cmd_cases(const PipelineConfig& config, std::ostream& err);
// Writes <stem>.report.txt and <stem>.report.jsonl; Conformance when any case fails.
int cmd_run(const PipelineConfig& config, std::ostream& out, std::ostream& err);

}  // namespace trrg
