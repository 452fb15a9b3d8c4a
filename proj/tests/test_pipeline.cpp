#include <doctest.h>

#include <set>

#include "pisem/pipeline.hpp"

using namespace pisem;

namespace {

GeneratorFile basic_pair_file() {
  return parse_generator_text(
      R"({"name": "basic", "dim": 2, "generators": [{"E": [1, 2]}, {"E": [2, 1]}]})", "basic");
}

PipelineSettings all_checks() {
  PipelineSettings settings;
  for (const auto& name : all_check_names()) settings.checks.insert(name);
  return settings;
}

const CheckResult* find_check(const AnalysisReport& report, const std::string& name) {
  for (const auto& c : report.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("basic pair passes the full pipeline") {
  const AnalysisReport report = run_pipeline(basic_pair_file(), all_checks());
  CHECK(report.closure_size == 5);
  CHECK(report.closure_status == ClosureStatus::Closed);
  CHECK(report.self_adjoint);
  CHECK(report.contains_zero);
  CHECK_FALSE(report.contains_identity);

  const CheckResult* irr = find_check(report, "irreducibility");
  REQUIRE(irr);
  CHECK(irr->verdict == Verdict::Pass);
  CHECK(irr->detail.find("irreducible") == 0);

  const CheckResult* zu = find_check(report, "zero-unitary");
  REQUIRE(zu);
  CHECK(zu->verdict == Verdict::Pass);
  REQUIRE(report.zero_unitary.has_value());
  CHECK(report.zero_unitary->k == 2);
  CHECK(report.zero_unitary->r0 == 1);

  const CheckResult* prime = find_check(report, "prime-size");
  REQUIRE(prime);
  CHECK(prime->verdict == Verdict::Skipped);  // rank-one members

  const CheckResult* masa = find_check(report, "masa");
  REQUIRE(masa);
  CHECK(masa->verdict == Verdict::Pass);
  CHECK(masa->detail.find("masa-generating") == 0);

  const CheckResult* fg = find_check(report, "finitely-generated");
  REQUIRE(fg);
  CHECK(fg->verdict == Verdict::Pass);  // hypotheses fail, conclusion vacuous

  CHECK(report.exit_code == 0);
}

TEST_CASE("non-partial-isometry generator fails with the generator named") {
  const GeneratorFile file = parse_generator_text(
      R"({"dim": 2, "generators": [[[[1,0],[0,0]],[[0,0],[0.5,0]]]]})", "halfdiag");
  PipelineSettings settings;
  settings.checks = {"partial-isometry"};
  const AnalysisReport report = run_pipeline(file, settings);
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].verdict == Verdict::Fail);
  CHECK(report.checks[0].detail.find("generator #1") != std::string::npos);
  REQUIRE(report.checks[0].witness.has_value());
  CHECK(report.exit_code == 1);
}

TEST_CASE("empty checks set produces a closure summary only") {
  const AnalysisReport report = run_pipeline(basic_pair_file(), PipelineSettings{});
  CHECK(report.checks.empty());
  CHECK(report.closure_size == 5);
  CHECK(report.exit_code == 0);
}

TEST_CASE("unknown check names are rejected") {
  PipelineSettings settings;
  settings.checks = {"nonsense"};
  CHECK_THROWS_AS(run_pipeline(basic_pair_file(), settings), InputError);
}

TEST_CASE("budget exhaustion surfaces as exit code 2") {
  const GeneratorFile file = parse_generator_text(
      R"({"dim": 2, "budget": {"max_elements": 4, "max_word_length": 40},
          "generators": [[[[0.8090169943749475,0.5877852522924731],[0,0]],
                          [[0,0],[1,0]]]]})",
      "rot");  // e^(2 pi i/10) in the corner: the diagonal group is large
  PipelineSettings settings;
  settings.checks = {"partial-isometry"};
  const AnalysisReport report = run_pipeline(file, settings);
  CHECK(report.closure_status == ClosureStatus::BudgetExhausted);
  CHECK(report.exit_code == 2);
}

TEST_CASE("json emission is deterministic and schema-tagged") {
  const AnalysisReport a = run_pipeline(basic_pair_file(), all_checks());
  const AnalysisReport b = run_pipeline(basic_pair_file(), all_checks());
  const std::string ja = emit_json(a);
  CHECK(ja == emit_json(b));
  CHECK(ja.find("\"schema\": \"report/v1\"") != std::string::npos);
  CHECK(ja.find("\"exit_code\": 0") != std::string::npos);

  const std::string text = emit_text(a);
  for (const auto& c : a.checks)
    CHECK(text.find("check " + c.name + ":") != std::string::npos);
}

TEST_CASE("seed changes do not change verdicts") {
  PipelineSettings s1 = all_checks();
  PipelineSettings s2 = all_checks();
  s2.seed = 12345;
  const AnalysisReport a = run_pipeline(basic_pair_file(), s1);
  const AnalysisReport b = run_pipeline(basic_pair_file(), s2);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i)
    CHECK(a.checks[i].verdict == b.checks[i].verdict);
}

TEST_CASE("overrides replace file settings") {
  PipelineSettings settings;
  settings.checks = {"partial-isometry"};
  settings.tol_override = 1e-7;
  settings.max_elements_override = 17;
  settings.max_words_override = 5;
  const AnalysisReport report = run_pipeline(basic_pair_file(), settings);
  CHECK(report.tol == doctest::Approx(1e-7));
  CHECK(report.budget.max_elements == 17);
  CHECK(report.budget.max_word_length == 5);
}

TEST_CASE("reducible input skips structure extraction with a reason") {
  const GeneratorFile file = parse_generator_text(
      R"({"dim": 2, "generators": [[[[1,0],[0,0]],[[0,0],[-1,0]]]]})", "diag");
  const AnalysisReport report = run_pipeline(file, all_checks());
  const CheckResult* zu = find_check(report, "zero-unitary");
  REQUIRE(zu);
  CHECK(zu->verdict == Verdict::Skipped);
  CHECK(zu->detail.find("reducible") != std::string::npos);
  const CheckResult* sandwich = find_check(report, "sandwich");
  REQUIRE(sandwich);
  CHECK(sandwich->verdict == Verdict::Skipped);
}

TEST_SUITE_END();
