#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trrg/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"trrg: timed refusals region graphs, canonical testers and test cases for DATA* models"};
  app.require_subcommand(1);

  trrg::PipelineConfig config;
  std::string input;
  std::string out = ".";
  std::string impl;
  std::string cases;
  bool no_fail_probes = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", input, "Model in the DOT dialect")->required();
    sub->add_option("--out", out, "Output directory (created if missing)");
    sub->add_flag("--emit-intermediates", config.emit_intermediates,
                  "Also write the determinized and decorated models");
  };
  auto generation = [&](CLI::App* sub) {
    sub->add_option("--depth", config.depth, "Maximum test case length in actions")->check(CLI::NonNegativeNumber);
    sub->add_flag("--no-fail-probes", no_fail_probes, "Omit cases ending in the fail sink");
    sub->add_flag("--edge-cover", config.edge_cover, "One shortest case per tester edge instead of all bounded paths");
    sub->add_option("--max-cases", config.max_cases, "Refuse to enumerate more bounded paths than this");
  };

  CLI::App* trrg_cmd = app.add_subcommand("trrg", "Write <stem>.trrg.dot");
  common(trrg_cmd);
  CLI::App* tester_cmd = app.add_subcommand("tester", "Write <stem>.tester.dot");
  common(tester_cmd);
  CLI::App* cases_cmd = app.add_subcommand("cases", "Write <stem>.cases.txt and <stem>.cases.dot");
  common(cases_cmd);
  generation(cases_cmd);
  CLI::App* run_cmd = app.add_subcommand("run", "Run the suite against an implementation model");
  common(run_cmd);
  generation(run_cmd);
  run_cmd->add_option("--impl", impl, "Implementation model")->required();
  run_cmd->add_option("--cases", cases, "Case file to run instead of generating one");
  run_cmd->add_option("--seed", config.seed, "Seed for resolving implementation nondeterminism");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(trrg::ExitStatus::Usage);
  }

  config.input = input;
  config.output_dir = out;
  config.impl = impl;
  config.cases = cases;
  config.include_fail_probes = !no_fail_probes;

  if (trrg_cmd->parsed()) return trrg::cmd_trrg(config, std::cerr);
  if (tester_cmd->parsed()) return trrg::cmd_tester(config, std::cerr);
  if (cases_cmd->parsed()) return trrg::cmd_cases(config, std::cerr);
  return trrg::cmd_run(config, std::cout, std::cerr);
}
