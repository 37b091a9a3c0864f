#include "trrg/pipeline.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "trrg/builder.hpp"
#include "trrg/dot_model.hpp"
#include "trrg/errors.hpp"
#include "trrg/harness.hpp"
#include "trrg/tester.hpp"

namespace trrg {

namespace fs = std::filesystem;

namespace {

// Raised for unreadable inputs and unwritable outputs.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Pending outputs are collected first and written only once every stage succeeded.
using Outputs = std::vector<std::pair<fs::path, std::string>>;

void write_all(const Outputs& outputs) {
  for (const auto& [path, text] : outputs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + path.string());
  }
}

void require_complete(const TesterGraph& tester) {
  const auto gaps = completeness_check(tester);
  if (gaps.empty()) return;
  std::string message = std::to_string(gaps.size()) + " completeness gap(s)";
  for (const auto& gap : gaps) message += "\n  " + gap.describe(tester);
  throw CompletenessError(message);
}

void check_paths(const PipelineConfig& config) {
  if (config.input.empty()) throw IoError("no input model given");
  if (!fs::is_regular_file(config.input)) throw IoError("input " + config.input.string() + " is not a readable file");
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (!fs::is_directory(config.output_dir)) throw IoError("cannot use output directory " + config.output_dir.string());
}

struct Stages {
  TrrgBuild build;
  std::optional<TesterGraph> tester;
};

Stages run_stages(const PipelineConfig& config, bool with_tester, Outputs& outputs) {
  check_paths(config);
  const TimedModel model = parse_model_text(read_file(config.input));
  Stages stages{build_trrg_stages(model), std::nullopt};
  if (config.emit_intermediates) {
    outputs.emplace_back(artifact_path(config, ".det.dot"), write_dot(emit_model(stages.build.determinized.model)));
    outputs.emplace_back(artifact_path(config, ".decorated.dot"),
                         write_dot(emit_decorated(stages.build.determinized, stages.build.decorations)));
  }
  if (with_tester) {
    TesterGraph tester = build_tester(stages.build.trrg);
    if (config.tamper_tester) config.tamper_tester(tester);
    require_complete(tester);
    stages.tester = std::move(tester);
  }
  return stages;
}

// Maps library failures onto exit statuses with a diagnostic on `err`.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Io);
  } catch (const SyntaxError& e) {
    err << "parse error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Parse);
  } catch (const ModelError& e) {
    err << "invalid model: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Validation);
  } catch (const DomainError& e) {
    err << "invalid model: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Validation);
  } catch (const UnsupportedNondeterminism& e) {
    err << "unsupported nondeterminism: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Nondeterminism);
  } catch (const CompletenessError& e) {
    err << "incomplete tester: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Completeness);
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Usage);
  }
}

RunOptions run_options(const PipelineConfig& config) {
  if (!config.seed) return RunOptions{};
  return RunOptions{ChoicePolicy::Seeded, *config.seed};
}

}  // namespace

TesterGraph checked_tester(const TesterGraph& trrg) {
  TesterGraph tester = build_tester(trrg);
  require_complete(tester);
  return tester;
}

std::vector<TimedTestCase> generate_cases(const TesterGraph& tester, const PipelineConfig& config) {
  const auto abstract = config.edge_cover ? edge_covering_cases(tester, config.depth, config.include_fail_probes)
                                          : extract_cases(tester, config.depth, config.include_fail_probes, config.max_cases);
  return concretize_all(tester, abstract);
}

fs::path artifact_path(const PipelineConfig& config, const std::string& suffix) {
  return config.output_dir / (config.input.stem().string() + suffix);
}

int cmd_trrg(const PipelineConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    Outputs outputs;
    const Stages stages = run_stages(config, false, outputs);
    outputs.emplace_back(artifact_path(config, ".trrg.dot"), write_dot(emit_tester(stages.build.trrg)));
    write_all(outputs);
    return static_cast<int>(ExitStatus::Ok);
  });
}

int cmd_tester(const PipelineConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    Outputs outputs;
    const Stages stages = run_stages(config, true, outputs);
    outputs.emplace_back(artifact_path(config, ".tester.dot"), write_dot(emit_tester(*stages.tester)));
    write_all(outputs);
    return static_cast<int>(ExitStatus::Ok);
  });
}

int cmd_cases(const PipelineConfig& config, std::ostream& err) {
  return guarded(err, [&] {
    Outputs outputs;
    const Stages stages = run_stages(config, true, outputs);
    const auto cases = generate_cases(*stages.tester, config);
    const std::string text = format_cases(cases);
    std::vector<std::string> comments;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) comments.push_back(line);
    outputs.emplace_back(artifact_path(config, ".cases.txt"), text);
    outputs.emplace_back(artifact_path(config, ".cases.dot"), write_dot(emit_tester(*stages.tester, comments)));
    write_all(outputs);
    return static_cast<int>(ExitStatus::Ok);
  });
}

int cmd_run(const PipelineConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.impl.empty() || !fs::is_regular_file(config.impl)) {
      throw IoError("implementation model " + config.impl.string() + " is not a readable file");
    }
    Outputs outputs;
    const Stages stages = run_stages(config, true, outputs);
    const TimedModel impl = parse_model_text(read_file(config.impl));
    const auto cases =
        config.cases.empty() ? generate_cases(*stages.tester, config) : parse_cases(read_file(config.cases));
    const SuiteSummary summary = run_suite(impl, cases, *stages.tester, run_options(config));
    outputs.emplace_back(artifact_path(config, ".report.txt"), summary.to_text());
    outputs.emplace_back(artifact_path(config, ".report.jsonl"), summary.to_json_lines());
    write_all(outputs);
    out << "pass " << summary.pass << " incon " << summary.incon << " fail " << summary.fail << "\n";
    return static_cast<int>(summary.fail > 0 ? ExitStatus::Conformance : ExitStatus::Ok);
  });
}

}  // namespace trrg
