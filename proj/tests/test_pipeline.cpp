#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "trrg/builder.hpp"
#include "trrg/dot.hpp"
#include "trrg/pipeline.hpp"
#include "trrg/tester.hpp"

using namespace trrg;
namespace fs = std::filesystem;

namespace {

class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("trrg_pipeline_" + std::string(::testing::UnitTest::GetInstance()
                                                                            ->current_test_info()
                                                                            ->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  PipelineConfig config(const std::string& fixture) const {
    PipelineConfig c;
    c.input = fixtures::path(fixture);
    c.output_dir = dir_;
    return c;
  }

  static std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  }

  fs::path dir_;
  std::ostringstream err_;
  std::ostringstream out_;
};

int code(ExitStatus s) { return static_cast<int>(s); }

}  // namespace

TEST_F(Pipeline, TrrgWritesTheGraph) {
  ASSERT_EQ(cmd_trrg(config("fig1.dot"), err_), 0) << err_.str();
  const fs::path out = dir_ / "fig1.trrg.dot";
  ASSERT_TRUE(fs::exists(out));
  EXPECT_EQ(read(out), write_dot(emit_tester(build_trrg(fixtures::model("fig1.dot")))));
  EXPECT_FALSE(fs::exists(dir_ / "fig1.det.dot"));
}

TEST_F(Pipeline, IntermediatesOnlyOnRequest) {
  PipelineConfig c = config("coffee.dot");
  c.emit_intermediates = true;
  ASSERT_EQ(cmd_trrg(c, err_), 0) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "coffee.det.dot"));
  EXPECT_NE(read(dir_ / "coffee.decorated.dot").find("perm=\"coffee[x>=2],tea[x>=1]\""), std::string::npos);
}

TEST_F(Pipeline, FailuresMapToDistinctStatusesAndWriteNothing) {
  EXPECT_EQ(cmd_trrg(config("malformed.dot"), err_), code(ExitStatus::Parse));
  EXPECT_EQ(cmd_trrg(config("two_initial.dot"), err_), code(ExitStatus::Validation));
  EXPECT_EQ(cmd_trrg(config("out_of_class.dot"), err_), code(ExitStatus::Nondeterminism));
  EXPECT_NE(err_.str().find("unsupported nondeterminism"), std::string::npos);
  EXPECT_EQ(cmd_trrg(config("missing.dot"), err_), code(ExitStatus::Io));
  EXPECT_FALSE(fs::exists(dir_ / "malformed.trrg.dot"));
  EXPECT_FALSE(fs::exists(dir_ / "two_initial.trrg.dot"));
  EXPECT_FALSE(fs::exists(dir_ / "out_of_class.trrg.dot"));
}

TEST_F(Pipeline, TesterEqualsTheComposedStages) {
  ASSERT_EQ(cmd_tester(config("coffee.dot"), err_), 0) << err_.str();
  const std::string once = read(dir_ / "coffee.tester.dot");
  EXPECT_EQ(once, write_dot(emit_tester(checked_tester(build_trrg(fixtures::model("coffee.dot"))))));
  ASSERT_EQ(cmd_tester(config("coffee.dot"), err_), 0);
  EXPECT_EQ(read(dir_ / "coffee.tester.dot"), once);
}

TEST_F(Pipeline, InjectedCompletenessGapIsRejected) {
  PipelineConfig c = config("fig1.dot");
  c.tamper_tester = [](TesterGraph& t) { t.remove_edge(t.out_edges(t.initial()).front()); };
  EXPECT_EQ(cmd_tester(c, err_), code(ExitStatus::Completeness));
  EXPECT_NE(err_.str().find("completeness gap"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "fig1.tester.dot"));
}

TEST_F(Pipeline, CasesFollowDepthAndProbeSettings) {
  PipelineConfig c = config("fig1.dot");
  ASSERT_EQ(cmd_cases(c, err_), 0);
  const std::string with_probes = read(dir_ / "fig1.cases.txt");
  EXPECT_FALSE(with_probes.empty());
  EXPECT_NE(read(dir_ / "fig1.cases.dot").find("// case 1 expect="), std::string::npos);

  c.include_fail_probes = false;
  ASSERT_EQ(cmd_cases(c, err_), 0);
  const auto without = parse_cases(read(dir_ / "fig1.cases.txt"));
  EXPECT_LT(without.size(), parse_cases(with_probes).size());

  c.depth = 0;
  ASSERT_EQ(cmd_cases(c, err_), 0);
  EXPECT_TRUE(read(dir_ / "fig1.cases.txt").empty());
}

TEST_F(Pipeline, CaseLimitIsAUsageError) {
  PipelineConfig c = config("fig1.dot");
  c.max_cases = 3;
  EXPECT_EQ(cmd_cases(c, err_), code(ExitStatus::Usage));
  EXPECT_NE(err_.str().find("edge-covering"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "fig1.cases.txt"));
  c.edge_cover = true;
  EXPECT_EQ(cmd_cases(c, err_), 0);
}

TEST_F(Pipeline, RunStatusFollowsTheFailCount) {
  PipelineConfig c = config("fig1.dot");
  c.impl = fixtures::path("fig1.dot");
  EXPECT_EQ(cmd_run(c, out_, err_), 0) << err_.str();
  EXPECT_NE(read(dir_ / "fig1.report.txt").find(" fail 0 "), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "fig1.report.jsonl"));

  PipelineConfig coffee = config("coffee.dot");
  coffee.impl = fixtures::path("coffee_tea_only.dot");
  std::ostringstream summary;
  EXPECT_EQ(cmd_run(coffee, summary, err_), 0);
  EXPECT_NE(summary.str().find("fail 0"), std::string::npos);
  EXPECT_EQ(summary.str().find("incon 0"), std::string::npos);

  // Running the coffee suite against fig1 mixes alphabets: every step fails.
  PipelineConfig wrong = config("coffee.dot");
  wrong.impl = fixtures::path("fig1.dot");
  EXPECT_EQ(cmd_run(wrong, out_, err_), code(ExitStatus::Conformance));
}

TEST_F(Pipeline, ChoiceResolutionIsReproducible) {
  PipelineConfig c = config("coffee.dot");
  c.impl = fixtures::path("coffee.dot");
  auto report = [&] {
    EXPECT_EQ(cmd_run(c, out_, err_), 0) << err_.str();
    return read(dir_ / "coffee.report.txt");
  };
  const std::string canonical = report();
  EXPECT_EQ(report(), canonical);
  c.seed = 3;
  const std::string seeded = report();
  EXPECT_EQ(report(), seeded);
}

TEST_F(Pipeline, RunAcceptsACaseFile) {
  PipelineConfig c = config("fig1.dot");
  ASSERT_EQ(cmd_cases(c, err_), 0);
  c.cases = dir_ / "fig1.cases.txt";
  c.impl = fixtures::path("fig1.dot");
  EXPECT_EQ(cmd_run(c, out_, err_), 0) << err_.str();
  c.impl = dir_ / "nope.dot";
  EXPECT_EQ(cmd_run(c, out_, err_), code(ExitStatus::Io));
}
