// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "trrg/builder.hpp"
#include "trrg/dot.hpp"
#include "trrg/dot_model.hpp"
#include "trrg/harness.hpp"
#include "trrg/pipeline.hpp"
#include "trrg/tester.hpp"
#include "trrg/testcase.hpp"

using namespace trrg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2fs", s);
  return buffer;
}

TesterGraph tester_of(const TimedModel& m) { return build_tester(build_trrg(m)); }

bool is_scale_fixture(const std::string& name) { return name == "trs.dot"; }

// All bounded paths where that stays small; the edge cover on the scale fixture.
std::vector<TimedTestCase> suite_for(const std::string& name, const TesterGraph& t, bool probes) {
  const auto abstract = is_scale_fixture(name) ? edge_covering_cases(t, 6, probes) : extract_cases(t, 6, probes);
  return concretize_all(t, abstract);
}

std::vector<TimedModel> random_models(std::uint64_t first, std::uint64_t count) {
  std::vector<TimedModel> out;
  for (std::uint64_t seed = first; seed < first + count; ++seed) out.push_back(oracle::random_model(seed));
  return out;
}

// 1 ---------------------------------------------------------------------------
Outcome region_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  const std::vector<std::string> names{"x", "y", "z"};
  std::size_t checked = 0;
  std::size_t pair_checks = 0;
  std::string failure;
  std::vector<std::pair<Valuation, ClockRegion>> window;
  RegionSpace space;
  oracle::Constants constants;
  for (int i = 0; i < 10000 && failure.empty(); ++i) {
    if (i % 500 == 0) {
      const int n = std::uniform_int_distribution<int>(1, 3)(rng);
      std::vector<std::string> clocks(names.begin(), names.begin() + n);
      std::vector<std::int64_t> cs;
      constants.clear();
      for (const auto& c : clocks) {
        cs.push_back(std::uniform_int_distribution<int>(0, 4)(rng));
        constants[c] = cs.back();
      }
      space = make_space(MaxConstants(clocks, cs));
      window.clear();
    }
    static const int denominators[] = {1, 2, 3, 4, 5, 6, 8};
    const int den = denominators[std::uniform_int_distribution<int>(0, 6)(rng)];
    Valuation v;
    for (std::size_t k = 0; k < space->size(); ++k) {
      v[space->clocks()[k]] =
          Time(std::uniform_int_distribution<std::int64_t>(0, (space->constant(k) + 2) * den)(rng), den);
    }
    const ClockRegion r = region_of(v, space);
    if (!oracle::equivalent(representative(r), v, constants)) failure = "region_of " + r.to_string();
    for (const auto& [w, q] : window) {
      ++pair_checks;
      if ((r == q) != oracle::equivalent(v, w, constants)) failure = "equivalence " + r.to_string() + " / " + q.to_string();
    }
    if (window.size() < 40) window.emplace_back(v, r);
    const auto next = time_successor(r);
    const Valuation expected = oracle::time_successor(v, constants);
    if (next ? !oracle::equivalent(representative(*next), expected, constants)
             : !oracle::equivalent(expected, v, constants)) {
      failure = "time_successor " + r.to_string();
    }
    for (const auto& c : space->clocks()) {
      Valuation reset = v;
      reset[c] = Time(0);
      if (!oracle::equivalent(representative(region_reset(r, c)), reset, constants)) {
        failure = "region_reset " + c + " " + r.to_string();
      }
    }
    ++checked;
  }
  const double t = seconds_since(start);
  Outcome o{failure.empty() && checked == 10000 && t < 30.0, ""};
  o.detail = std::to_string(checked) + " valuations, " + std::to_string(pair_checks) + " pair checks, " + fmt_seconds(t);
  if (!failure.empty()) o.detail += "; mismatch: " + failure;
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome region_count() {
  const std::uint64_t one = count_regions(make_space(MaxConstants({"x"}, {2})));
  Outcome o{one == 6, "one clock c=2: " + std::to_string(one) + " regions"};
  for (const auto& name : fixtures::valid()) {
    const TimedModel m = fixtures::model(name);
    const MaxConstants c = max_constants(m);
    const std::uint64_t bound = region_count_bound(c);
    // Exhaustive counting on small clock sets; regions used by the TRRG otherwise.
    std::uint64_t seen = 0;
    if (c.size() <= 3) {
      seen = count_regions(make_space(c));
    } else {
      std::set<ClockRegion> used;
      const TesterGraph g = build_trrg(m);
      for (const auto& s : g.states()) used.insert(s.region);
      for (const auto& e : g.edges()) used.insert(*e.witness);
      seen = used.size();
    }
    if (seen > bound) o.ok = false;
    o.detail += "; " + name + " " + std::to_string(seen) + "<=" + std::to_string(bound);
  }
  return o;
}

// 3 ---------------------------------------------------------------------------
Outcome ara_oracle() {
  const auto start = Clock::now();
  std::vector<std::pair<std::string, TimedModel>> models;
  auto small = [](const TimedModel& m) {
    const auto c = oracle::constants_of(m);
    std::int64_t top = 0;
    for (const auto& [clock, value] : c) top = std::max(top, value);
    return m.locations().size() <= 4 && m.clocks().size() <= 2 && top <= 3;
  };
  for (const auto& name : fixtures::valid()) {
    const TimedModel m = fixtures::model(name);
    if (small(m)) models.emplace_back(name, m);
  }
  const std::size_t hand_built = models.size();
  for (std::uint64_t seed = 1; models.size() < hand_built + 40; ++seed) {
    TimedModel m = oracle::random_model(seed);
    if (small(m)) models.emplace_back("random seed " + std::to_string(seed), std::move(m));
  }
  Outcome o;
  std::size_t states = 0;
  std::size_t edges = 0;
  for (const auto& [label, m] : models) {
    const DeterministicModel d = determinize(m);
    const TesterGraph ara = build_ara(d, decorate(d));
    const oracle::Constants c = oracle::constants_of(d.model);
    const oracle::Graph expected = oracle::brute_force_ara(d.model, c);
    oracle::Graph actual;
    auto key = [&](std::size_t s) {
      return ara.state(s).base + "|" + oracle::class_key(representative(ara.state(s).region), c);
    };
    for (std::size_t s = 0; s < ara.states().size(); ++s) actual.states.insert(key(s));
    for (const auto& e : ara.edges()) {
      actual.edges.insert(key(e.source) + " -" + e.action + "[" + oracle::class_key(representative(*e.witness), c) +
                          "]-> " + key(e.target));
    }
    const bool same = actual.states == expected.states && actual.edges == expected.edges &&
                      ara.states().size() == expected.states.size() && ara.edges().size() == expected.edges.size();
    if (!same) {
      o.ok = false;
      o.detail += "mismatch on " + label + "; ";
    }
    states += ara.states().size();
    edges += ara.edges().size();
  }
  const double t = seconds_since(start);
  o.ok = o.ok && models.size() >= 20 && t < 60.0;
  o.detail += std::to_string(models.size()) + " models (" + std::to_string(hand_built) + " hand-built), " +
              std::to_string(states) + " states, " + std::to_string(edges) + " edges, " + fmt_seconds(t);
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome determinism_and_decoration() {
  Outcome o;
  std::size_t deterministic = 0;
  for (const auto& name : fixtures::valid()) {
    const TrrgBuild b = build_trrg_stages(fixtures::model(name));
    const auto det = trrg_determinism_violations(b.trrg);
    const auto part = refusal_partition_violations(b.determinized, b.decorations);
    const auto regions = edge_region_violations(b.trrg);
    if (!det.empty() || !part.empty() || !regions.empty()) {
      o.ok = false;
      o.detail += name + " violates invariants; ";
    }
    if (determinism_violations(b.determinized.source).empty()) {
      ++deterministic;
      for (const auto& s : b.trrg.states()) {
        if (!s.refusals.permanent.empty()) {
          o.ok = false;
          o.detail += name + " has a permanent refusal at " + s.base + "; ";
        }
      }
    }
  }
  o.detail += std::to_string(fixtures::valid().size()) + " fixtures, " + std::to_string(deterministic) +
              " deterministic with empty permanent sets";
  return o;
}

// 5 ---------------------------------------------------------------------------
Outcome completeness() {
  Outcome o;
  std::size_t testers = 0;
  auto check = [&](const TimedModel& m, const std::string& label) {
    const TesterGraph t = tester_of(m);
    const auto gaps = completeness_check(t);
    ++testers;
    if (!gaps.empty()) {
      o.ok = false;
      o.detail += label + ": " + gaps.front().describe(t) + "; ";
    }
  };
  for (const auto& name : fixtures::valid()) check(fixtures::model(name), name);
  const auto randoms = random_models(1000, 100);
  for (std::size_t i = 0; i < randoms.size(); ++i) check(randoms[i], "random seed " + std::to_string(1000 + i));
  o.detail += std::to_string(testers) + " testers without gaps (" + std::to_string(fixtures::valid().size()) +
              " fixtures, 100 random)";
  return o;
}

// 6 ---------------------------------------------------------------------------
Outcome replay() {
  Outcome o;
  std::size_t total = 0;
  std::size_t ok = 0;
  auto run = [&](const TimedModel& m, const std::string& label, const std::string& name) {
    const DeterministicModel d = determinize(m);
    const TesterGraph t = build_tester(build_ara(d, decorate(d)));
    std::vector<TimedTestCase> cases;
    if (name.empty()) {
      // Random models branch over many regions: all paths to depth 3 plus a
      // depth-6 edge cover keep the suite finite.
      cases = concretize_all(t, extract_cases(t, 3, true));
      const auto cover = concretize_all(t, edge_covering_cases(t, 6, true));
      cases.insert(cases.end(), cover.begin(), cover.end());
    } else {
      cases = suite_for(name, t, true);
    }
    for (const auto& tc : cases) {
      ++total;
      const ReplayResult r = replay_case(d.model, t, tc);
      if (r.ok) {
        ++ok;
      } else if (o.ok) {
        o.ok = false;
        o.detail += label + ": " + r.message + "; ";
      }
    }
  };
  for (const auto& name : fixtures::valid()) run(fixtures::model(name), name, name);
  const auto randoms = random_models(1000, 100);
  for (std::size_t i = 0; i < randoms.size(); ++i) run(randoms[i], "random seed " + std::to_string(1000 + i), "");
  o.ok = o.ok && ok == total;
  o.detail += std::to_string(ok) + "/" + std::to_string(total) + " cases replayed with matching witness regions";
  return o;
}

// 7 ---------------------------------------------------------------------------
Outcome self_conformance() {
  Outcome o;
  std::vector<std::string> parts;
  for (const auto& name : fixtures::deterministic()) {
    const TimedModel m = fixtures::model(name);
    const TesterGraph t = tester_of(m);
    const SuiteSummary s = run_suite(m, suite_for(name, t, false), t);
    if (s.fail != 0 || s.incon != 0 || s.pass != s.reports.size() || s.reports.empty()) o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + name + " pass " + std::to_string(s.pass) + " incon " +
                std::to_string(s.incon) + " fail " + std::to_string(s.fail);
  }
  return o;
}

// 8 ---------------------------------------------------------------------------
Outcome mutation_detection() {
  const auto start = Clock::now();
  Outcome o;
  static constexpr MutationKind kinds[] = {MutationKind::NarrowGuard, MutationKind::DeleteEdge, MutationKind::AddEdge};
  for (const std::string name : {"fig1.dot", "trs.dot"}) {
    const TimedModel spec = fixtures::model(name);
    const TesterGraph t = tester_of(spec);
    const auto suite = concretize_all(t, edge_covering_cases(t, 6, true));
    std::size_t changing = 0;
    std::size_t detected = 0;
    std::size_t equivalent = 0;
    std::vector<std::string> escaped;
    for (const Mutant& mutant : enumerate_mutants(spec, kinds)) {
      const SuiteSummary s = run_suite(mutant.model, suite, t);
      if (s.fail > 0) {
        // An observed fail within six steps is itself a distinguishing trace.
        ++changing;
        ++detected;
        continue;
      }
      if (behavioral_difference(spec, mutant.model, 6)) {
        ++changing;
        escaped.push_back(mutant.description);
      } else {
        ++equivalent;
      }
    }
    const double rate = changing == 0 ? 1.0 : static_cast<double>(detected) / static_cast<double>(changing);
    if (rate < 0.9) o.ok = false;
    o.detail += name + " " + std::to_string(detected) + "/" + std::to_string(changing) + " detected, " +
                std::to_string(equivalent) + " equivalent survivors";
    for (const auto& e : escaped) o.detail += " [escaped: " + e + "]";
    o.detail += "; ";
  }
  const double t = seconds_since(start);
  if (t >= 120.0) o.ok = false;
  o.detail += "suite: edge cover with probes, depth 6, " + fmt_seconds(t);
  return o;
}

// 9 ---------------------------------------------------------------------------
Outcome nondeterminism_incon() {
  const TimedModel spec = fixtures::model("coffee.dot");
  const TesterGraph t = tester_of(spec);
  const auto suite = concretize_all(t, extract_cases(t, 6, true));
  const SuiteSummary s = run_suite(fixtures::model("coffee_tea_only.dot"), suite, t);
  return Outcome{s.incon >= 1 && s.fail == 0, std::to_string(suite.size()) + " cases: pass " + std::to_string(s.pass) +
                                                  " incon " + std::to_string(s.incon) + " fail " +
                                                  std::to_string(s.fail)};
}

// 10 --------------------------------------------------------------------------
std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) files[entry.path().filename().string()] = read_text(entry.path());
  return files;
}

Outcome round_trip_and_determinism() {
  Outcome o;
  std::size_t documents = 0;
  for (const auto& name : fixtures::valid()) {
    const TimedModel m = fixtures::model(name);
    const std::string model_text = canonical_text(m);
    const TimedModel again = parse_model_text(model_text);
    const bool model_iso = canonical_text(again) == model_text &&
                           describe_graph(build_trrg(again)) == describe_graph(build_trrg(m));
    const TesterGraph t = tester_of(m);
    const std::string tester_text = write_dot(emit_tester(t));
    const bool tester_iso = write_dot(parse_dot(tester_text)) == tester_text;
    documents += 2;
    if (!model_iso || !tester_iso) {
      o.ok = false;
      o.detail += name + " does not round-trip; ";
    }
  }

  const fs::path base = fs::temp_directory_path() / "trrg_acceptance_determinism";
  fs::remove_all(base);
  std::size_t compared = 0;
  for (const auto& name : fixtures::valid()) {
    std::map<std::string, std::string> runs[2];
    for (int run = 0; run < 2; ++run) {
      PipelineConfig c;
      c.input = fixtures::path(name);
      c.output_dir = base / std::to_string(run);
      c.emit_intermediates = true;
      c.edge_cover = is_scale_fixture(name);
      c.impl = c.input;
      std::ostringstream sink;
      cmd_trrg(c, sink);
      cmd_tester(c, sink);
      cmd_cases(c, sink);
      cmd_run(c, sink, sink);
    }
    for (int run = 0; run < 2; ++run) runs[run] = snapshot(base / std::to_string(run));
    if (runs[0] != runs[1] || runs[0].empty()) {
      o.ok = false;
      o.detail += name + " differs between runs; ";
    }
  }
  compared = snapshot(base / "0").size();
  fs::remove_all(base);
  o.detail += std::to_string(documents) + " documents round-trip; " + std::to_string(compared) +
              " artifacts byte-identical across two runs";
  return o;
}

// 11 --------------------------------------------------------------------------
Outcome scale() {
  const TimedModel m = fixtures::model("trs.dot");
  const MaxConstants c = max_constants(m);
  std::int64_t top = 0;
  for (auto v : c.constants()) top = std::max(top, v);
  const bool in_range = m.locations().size() <= 60 && m.clocks().size() <= 6 && top <= 10;

  const fs::path dir = fs::temp_directory_path() / "trrg_acceptance_scale";
  fs::remove_all(dir);
  PipelineConfig config;
  config.input = fixtures::path("trs.dot");
  config.output_dir = dir;
  config.impl = config.input;
  config.edge_cover = true;
  std::ostringstream sink;
  const auto start = Clock::now();
  const int status = cmd_trrg(config, sink) + cmd_tester(config, sink) + cmd_cases(config, sink) +
                     cmd_run(config, sink, sink);
  const double t = seconds_since(start);
  const std::size_t cases = parse_cases(read_text(dir / "trs.cases.txt")).size();
  fs::remove_all(dir);
  return Outcome{in_range && status == 0 && t < 10.0,
                 std::to_string(m.locations().size()) + " locations, " + std::to_string(m.clocks().size()) +
                     " clocks, max constant " + std::to_string(top) + "; " + std::to_string(cases) +
                     " edge-cover cases; status " + std::to_string(status) + ", " + fmt_seconds(t)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"region oracle equivalence", region_oracle},
      {"region count", region_count},
      {"ARA oracle equivalence", ara_oracle},
      {"TRRG determinism and decoration", determinism_and_decoration},
      {"tester completeness", completeness},
      {"replay soundness", replay},
      {"self-conformance", self_conformance},
      {"mutation detection", mutation_detection},
      {"nondeterminism gives incon", nondeterminism_incon},
      {"round-trip and determinism of artifacts", round_trip_and_determinism},
      {"scale smoke test", scale},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
