#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pisem/band.hpp"
#include "pisem/closure.hpp"
#include "pisem/input.hpp"
#include "pisem/powerpi.hpp"
#include "pisem/structure.hpp"

namespace pisem {

enum class Verdict { Pass, Fail, Inconclusive, Skipped, Violation };

std::string verdict_name(Verdict v);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Skipped;
  std::string detail;
  std::optional<CMatrix> witness;
};

struct PipelineSettings {
  /// Canonical check names; "all" in the CLI expands to all_check_names().
  std::set<std::string> checks;
  std::optional<double> tol_override;
  std::optional<std::size_t> max_elements_override;
  std::optional<std::size_t> max_words_override;
  std::uint64_t seed = 0;
};

struct SplitSummary {
  int rank = 0;
  int dimension = 0;
  std::size_t size = 0;
};

struct AnalysisReport {
  std::string schema = "report/v1";
  std::string input_name;
  std::string input_digest;
  int dim = 0;
  std::size_t generator_count = 0;
  double tol = 1e-9;
  ClosureBudget budget;
  std::uint64_t seed = 0;
  std::vector<std::string> requested;

  ClosureStatus closure_status = ClosureStatus::BudgetExhausted;
  std::size_t closure_size = 0;
  std::size_t max_word_length_reached = 0;
  std::size_t completed_word_length = 0;
  bool self_adjoint = false;
  bool contains_identity = false;
  bool contains_zero = false;

  std::vector<CheckResult> checks;

  std::vector<std::pair<std::size_t, HWDecomposition>> hw_decompositions;
  std::optional<ProjectionBand> band;
  std::optional<IrreducibilityReport> irreducibility_report;
  std::optional<ZeroUnitaryStructure> zero_unitary;
  std::optional<AtomicRepresentation> atomic;
  std::vector<SplitSummary> split;

  int exit_code = 0;
};

/// Canonical check list in execution (dependency) order.
const std::vector<std::string>& all_check_names();

/// Run the requested checks in dependency order: closure first, then
/// partial-isometry verification, band construction, enrichment,
/// irreducibility and structure extraction, then the corollary checks.
/// Checks whose preconditions fail are reported as skipped with a reason,
/// never dropped. Exit code: 0 all pass, 1 some check failed, 2 inconclusive,
/// 4 theorem violation (3 is reserved for input errors, raised before a
/// report exists).
AnalysisReport run_pipeline(const GeneratorFile& file, const PipelineSettings& settings);

/// Stable, schema-versioned JSON; byte-identical for identical inputs and
/// settings. Matrices are emitted with full round-trip precision.
std::string emit_json(const AnalysisReport& report);

/// Human summary, one line per check verdict.
std::string emit_text(const AnalysisReport& report);

}  // namespace pisem
