#include "pisem/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pisem/linalg.hpp"

namespace pisem {

using nlohmann::ordered_json;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Skipped: return "skipped";
    case Verdict::Violation: return "violation";
  }
  return "unknown";
}

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "partial-isometry",       "power-partial-isometry",
      "halmos-wallen",          "ppi-semigroup",
      "band",                   "conjugate-projection",
      "enrich",                 "irreducibility",
      "min-rank",               "unitary-powers",
      "zero-unitary",           "sandwich",
      "atomic-representation",  "reducible-split",
      "masa",                   "finitely-generated",
      "prime-size",             "automatic-selfadjoint",
  };
  return names;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct PipelineState {
  Tol tol;
  ClosureBudget budget;
  std::uint64_t seed = 0;
  ClosedSemigroup s;
  double check_eps = 0.0;
  bool all_pi = false;
  bool self_adjoint = false;

  std::optional<ProjectionBand> band;
  std::string band_reason;
  std::optional<EnrichResult> enriched;
  std::string enrich_reason;
  std::optional<IrreducibilityReport> irr;
};

CMatrix binary_power(const CMatrix& u, long n) {
  CMatrix result = CMatrix::Identity(u.rows(), u.cols());
  CMatrix base = u;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

// Dimension of the smallest subspace containing v and invariant under the
// generators; used by the seeded cross-check of the Burnside verdict.
int orbit_dimension(const std::vector<CMatrix>& generators, const CVector& v, double thr) {
  std::vector<CVector> basis;
  const int n = static_cast<int>(v.size());
  auto absorb = [&](CVector w) {
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    const double len = w.norm();
    if (len <= thr) return;
    basis.push_back(w / len);
  };
  absorb(v);
  for (std::size_t i = 0; i < basis.size() && static_cast<int>(basis.size()) < n; ++i) {
    const CVector cur = basis[i];
    for (const auto& g : generators) absorb(g * cur);
  }
  return static_cast<int>(basis.size());
}

const std::string* band_prerequisites(const PipelineState& st) {
  static const std::string not_pi = "closure contains non-partial-isometries";
  static const std::string not_sa = "closure is not self-adjoint as a set";
  if (!st.all_pi) return &not_pi;
  if (!st.self_adjoint) return &not_sa;
  return nullptr;
}

void ensure_band(PipelineState& st) {
  if (st.band || !st.band_reason.empty()) return;
  if (const std::string* why = band_prerequisites(st)) {
    st.band_reason = *why;
    return;
  }
  st.band = enveloping_band(projections_of(st.s, Tol(st.check_eps)), st.s.dim,
                            Tol(st.check_eps));
}

void ensure_irreducibility(PipelineState& st) {
  if (!st.irr) st.irr = irreducibility(st.s, st.tol);
}

void ensure_enrich(PipelineState& st) {
  if (st.enriched || !st.enrich_reason.empty()) return;
  if (const std::string* why = band_prerequisites(st)) {
    st.enrich_reason = *why;
    return;
  }
  try {
    st.enriched = enrich(st.s, st.tol, st.budget);
  } catch (const Error& e) {
    st.enrich_reason = e.what();
    throw;
  }
}

ordered_json matrix_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

AnalysisReport run_pipeline(const GeneratorFile& file, const PipelineSettings& settings) {
  for (const auto& name : settings.checks) {
    const auto& known = all_check_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw InputError("unknown check name: " + name);
  }

  PipelineState st;
  st.tol = settings.tol_override ? Tol(*settings.tol_override) : file.tol;
  st.budget = file.budget;
  if (settings.max_elements_override) st.budget.max_elements = *settings.max_elements_override;
  if (settings.max_words_override) st.budget.max_word_length = *settings.max_words_override;
  st.seed = settings.seed;

  AnalysisReport report;
  report.input_name = file.name;
  report.input_digest = file.digest;
  report.dim = file.dim;
  report.generator_count = file.generators.size();
  report.tol = st.tol.eps;
  report.budget = st.budget;
  report.seed = settings.seed;
  for (const auto& name : all_check_names())
    if (settings.checks.count(name)) report.requested.push_back(name);

  st.s = close(file.generators, st.tol, st.budget);
  st.check_eps = std::max(st.tol.eps, st.s.work_tol.eps);
  st.all_pi = all_partial_isometries(st.s, Tol(st.check_eps));
  st.self_adjoint = st.s.is_self_adjoint();

  report.closure_status = st.s.status;
  report.closure_size = st.s.size();
  report.max_word_length_reached = st.s.max_word_length_reached;
  report.completed_word_length = st.s.completed_word_length;
  report.self_adjoint = st.self_adjoint;
  report.contains_identity = st.s.contains_identity();
  report.contains_zero = st.s.contains_zero();

  auto run_check = [&](const std::string& name, auto&& body) {
    if (!settings.checks.count(name)) return;
    CheckResult r;
    r.name = name;
    try {
      body(r);
    } catch (const TheoremViolation& e) {
      r.verdict = Verdict::Violation;
      r.detail = e.what();
    } catch (const BudgetExhausted& e) {
      r.verdict = Verdict::Inconclusive;
      r.detail = e.what();
    } catch (const SearchExhaustedError& e) {
      r.verdict = Verdict::Inconclusive;
      r.detail = e.what();
    } catch (const EnumerationCapError& e) {
      r.verdict = Verdict::Inconclusive;
      r.detail = e.what();
    } catch (const DegenerateSemigroupError& e) {
      r.verdict = Verdict::Skipped;
      r.detail = e.what();
    } catch (const PreconditionError& e) {
      r.verdict = Verdict::Skipped;
      r.detail = e.what();
    } catch (const Error& e) {
      r.verdict = Verdict::Fail;
      r.detail = e.what();
    }
    report.checks.push_back(std::move(r));
  };

  run_check("partial-isometry", [&](CheckResult& r) {
    std::vector<std::size_t> bad_gens;
    for (std::size_t g = 0; g < file.generators.size(); ++g)
      if (!is_partial_isometry(file.generators[g], st.tol)) bad_gens.push_back(g);
    if (!bad_gens.empty()) {
      r.verdict = Verdict::Fail;
      std::ostringstream os;
      os << "generator";
      for (std::size_t g : bad_gens) os << " #" << (g + 1);
      os << " failed the partial isometry test";
      r.detail = os.str();
      r.witness = file.generators[bad_gens.front()];
      return;
    }
    for (std::size_t i = 0; i < st.s.size(); ++i)
      if (!is_partial_isometry(st.s.elements[i], Tol(st.check_eps))) {
        r.verdict = Verdict::Fail;
        r.detail = "closure element " + std::to_string(i) + " (word length " +
                   std::to_string(st.s.words[i].size()) + ") is not a partial isometry";
        r.witness = st.s.elements[i];
        return;
      }
    r.verdict = Verdict::Pass;
    r.detail = "all " + std::to_string(st.s.size()) + " closure elements are partial isometries";
  });

  run_check("power-partial-isometry", [&](CheckResult& r) {
    for (std::size_t g = 0; g < file.generators.size(); ++g)
      if (!is_power_partial_isometry(file.generators[g], st.tol)) {
        r.verdict = Verdict::Fail;
        r.detail = "generator #" + std::to_string(g + 1) + " is not a power partial isometry";
        r.witness = file.generators[g];
        return;
      }
    r.verdict = Verdict::Pass;
    r.detail = "all " + std::to_string(file.generators.size()) +
               " generators are power partial isometries";
  });

  run_check("halmos-wallen", [&](CheckResult& r) {
    std::size_t decomposed = 0, skipped = 0;
    std::ostringstream os;
    for (std::size_t g = 0; g < file.generators.size(); ++g) {
      if (!is_power_partial_isometry(file.generators[g], st.tol)) {
        ++skipped;
        continue;
      }
      const HWDecomposition dec = halmos_wallen(file.generators[g], st.tol);
      CMatrix blocks = dec.basis.adjoint() * file.generators[g] * dec.basis;
      // reconstruction against the canonical block pattern
      CMatrix canon = CMatrix::Zero(file.dim, file.dim);
      canon.topLeftCorner(dec.unitary_dim, dec.unitary_dim) =
          blocks.topLeftCorner(dec.unitary_dim, dec.unitary_dim);
      int off = dec.unitary_dim;
      for (int ssize : dec.shift_sizes) {
        for (int i = 0; i + 1 < ssize; ++i) canon(off + i + 1, off + i) = 1.0;
        off += ssize;
      }
      const double err = (dec.basis * canon * dec.basis.adjoint() - file.generators[g]).norm();
      if (err > static_cast<double>(file.dim) * 10.0 * st.tol.eps)
        throw TheoremViolation("halmos-wallen reconstruction error " + fmt(err) +
                               " for generator #" + std::to_string(g + 1));
      os << "generator #" << (g + 1) << ": unitary_dim=" << dec.unitary_dim << " shifts=[";
      for (std::size_t i = 0; i < dec.shift_sizes.size(); ++i)
        os << (i ? "," : "") << dec.shift_sizes[i];
      os << "]; ";
      report.hw_decompositions.emplace_back(g, dec);
      ++decomposed;
    }
    if (decomposed == 0) {
      r.verdict = Verdict::Skipped;
      r.detail = "no generator is a power partial isometry";
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = os.str() + (skipped ? std::to_string(skipped) + " generator(s) skipped" : "");
  });

  run_check("ppi-semigroup", [&](CheckResult& r) {
    std::size_t inconclusive = 0;
    for (std::size_t g = 0; g < file.generators.size(); ++g) {
      const bool direct = is_power_partial_isometry(file.generators[g], st.tol);
      try {
        const bool via_closure = ppi_semigroup_check(file.generators[g], st.tol,
                                                     st.budget.max_word_length,
                                                     st.budget.max_elements);
        if (via_closure != direct) {
          r.verdict = Verdict::Violation;
          r.detail = "generator #" + std::to_string(g + 1) +
                     ": power test and semigroup closure test disagree";
          r.witness = file.generators[g];
          return;
        }
      } catch (const BudgetExhausted&) {
        ++inconclusive;
      }
    }
    if (inconclusive) {
      r.verdict = Verdict::Inconclusive;
      r.detail = std::to_string(inconclusive) + " generator closure(s) exhausted the budget";
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = "power test agrees with the semigroup closure test on all generators";
  });

  run_check("band", [&](CheckResult& r) {
    try {
      ensure_band(st);
    } catch (const CommutativityViolation& e) {
      // projections of a self-adjoint PI semigroup must commute
      r.verdict = Verdict::Violation;
      r.detail = e.what();
      return;
    }
    if (!st.band) {
      r.verdict = Verdict::Skipped;
      r.detail = st.band_reason;
      return;
    }
    report.band = st.band;
    std::ostringstream os;
    os << st.band->atom_count() << " atom(s), ranks [";
    for (std::size_t i = 0; i < st.band->atom_ranks.size(); ++i)
      os << (i ? "," : "") << st.band->atom_ranks[i];
    os << "]";
    r.verdict = Verdict::Pass;
    r.detail = os.str();
  });

  run_check("conjugate-projection", [&](CheckResult& r) {
    if (const std::string* why = band_prerequisites(st)) {
      r.verdict = Verdict::Skipped;
      r.detail = *why;
      return;
    }
    const std::vector<CMatrix> projs = projections_of(st.s, Tol(st.check_eps));
    const std::size_t cap = 200000;
    std::size_t pairs = 0;
    bool capped = false;
    const Tol claim_tol(std::min(0.5, 100.0 * st.check_eps));
    for (const auto& a : st.s.elements) {
      if (capped) break;
      for (const auto& e : projs) {
        if (pairs >= cap) {
          capped = true;
          break;
        }
        conjugate_projection(a, e, claim_tol);  // raises TheoremViolation on failure
        ++pairs;
      }
    }
    r.verdict = Verdict::Pass;
    r.detail = "EA = A(A*EA) verified over " + std::to_string(pairs) + " pairs" +
               (capped ? " (capped)" : "");
  });

  run_check("enrich", [&](CheckResult& r) {
    ensure_enrich(st);
    if (!st.enriched) {
      r.verdict = Verdict::Skipped;
      r.detail = st.enrich_reason;
      return;
    }
    const EnrichResult& er = *st.enriched;
    if (!report.band) report.band = er.band;
    if (!er.conclusive) {
      r.verdict = Verdict::Inconclusive;
      r.detail = er.s1.status != ClosureStatus::Closed
                     ? "enrichment closure exhausted its budget"
                     : "band too large for full Boolean injection";
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = "enriched closure has " + std::to_string(er.s1.size()) +
               " elements; projections match the " +
               std::to_string(std::size_t{1} << er.band.atom_count()) + " Boolean members";
  });

  run_check("irreducibility", [&](CheckResult& r) {
    ensure_irreducibility(st);
    report.irreducibility_report = st.irr;
    std::ostringstream os;
    os << (st.irr->irreducible ? "irreducible" : "reducible") << " (algebra dim "
       << st.irr->algebra_dim << " of " << file.dim * file.dim << ")";
    if (st.irr->witness_subspace)
      os << "; invariant subspace of rank "
         << static_cast<int>(st.irr->witness_subspace->trace().real() + 0.5) << " attached";
    if (st.irr->irreducible) {
      // seeded cross-check: no orbit of a random vector may stay proper
      std::mt19937_64 rng(st.seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      for (int probe = 0; probe < 20; ++probe) {
        CVector v(file.dim);
        for (int i = 0; i < file.dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
        const int od = orbit_dimension(st.s.generators, v, 1e-7);
        if (od != file.dim)
          throw TheoremViolation(
              "irreducibility: Burnside span test says irreducible but a random orbit "
              "has dimension " + std::to_string(od));
      }
      os << "; 20 seeded orbit probes agree";
    }
    if (st.s.status != ClosureStatus::Closed) {
      r.verdict = Verdict::Inconclusive;
      r.detail = os.str() + "; advisory only: closure budget was exhausted";
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = os.str();
  });

  run_check("min-rank", [&](CheckResult& r) {
    const int rank = minimal_nonzero_rank(st.s, st.tol);  // raises on the zero semigroup
    r.verdict = Verdict::Pass;
    r.detail = "minimal nonzero rank " + std::to_string(rank);
  });

  run_check("unitary-powers", [&](CheckResult& r) {
    const std::size_t cap = 64;
    std::size_t tested = 0, skipped_cap = 0;
    long max_power = 0;
    for (const auto& e : st.s.elements) {
      if (!is_unitary(e, Tol(st.check_eps))) continue;
      if (tested >= cap) {
        ++skipped_cap;
        continue;
      }
      const long m = approximate_identity_power(e, 1e-6, 100000);
      if ((binary_power(e, m - 1) - e.adjoint()).norm() > 2e-6)
        throw TheoremViolation("unitary-powers: U^(n-1) does not approximate U*");
      max_power = std::max(max_power, m);
      ++tested;
    }
    r.verdict = Verdict::Pass;
    std::ostringstream os;
    if (tested == 0) {
      os << "no unitary elements in the closure";
    } else {
      os << tested << " unitary element(s) return to the identity; largest power "
         << max_power;
      if (skipped_cap) os << " (" << skipped_cap << " beyond the per-run cap)";
    }
    r.detail = os.str();
  });

  run_check("zero-unitary", [&](CheckResult& r) {
    if (st.s.status != ClosureStatus::Closed) {
      r.verdict = Verdict::Inconclusive;
      r.detail = "closure budget exhausted; extraction is inconclusive";
      return;
    }
    ensure_irreducibility(st);
    if (!st.irr->irreducible) {
      r.verdict = Verdict::Skipped;
      r.detail = "semigroup is reducible";
      return;
    }
    report.zero_unitary = extract_zero_unitary(st.s, st.tol);
    r.verdict = Verdict::Pass;
    r.detail = "k=" + std::to_string(report.zero_unitary->k) +
               ", r0=" + std::to_string(report.zero_unitary->r0) + ", group order " +
               std::to_string(report.zero_unitary->unitary_group.size());
  });

  run_check("sandwich", [&](CheckResult& r) {
    if (!report.zero_unitary) {
      r.verdict = Verdict::Skipped;
      r.detail = "no zero-unitary structure extracted";
      return;
    }
    const SandwichReport sr = verify_sandwich(st.s, *report.zero_unitary, st.tol);
    if (!sr.ok()) {
      std::ostringstream os;
      os << "lower=" << (sr.lower ? "ok" : "violated") << " upper="
         << (sr.upper ? "ok" : "violated");
      for (std::size_t i = 0; i < sr.diffs.size() && i < 5; ++i) os << "; " << sr.diffs[i];
      throw TheoremViolation("sandwich inclusions failed: " + os.str());
    }
    r.verdict = Verdict::Pass;
    r.detail = "both inclusions hold for all " + std::to_string(st.s.size()) + " elements";
  });

  run_check("atomic-representation", [&](CheckResult& r) {
    if (!st.enrich_reason.empty() || !st.enriched) {
      try {
        ensure_enrich(st);
      } catch (const Error&) {
        // fall through to the reason below
      }
    }
    if (!st.enriched) {
      r.verdict = Verdict::Skipped;
      r.detail = "enrichment unavailable: " + st.enrich_reason;
      return;
    }
    if (st.enriched->s1.status != ClosureStatus::Closed) {
      r.verdict = Verdict::Inconclusive;
      r.detail = "enrichment closure exhausted its budget";
      return;
    }
    report.atomic = atomic_representation(st.enriched->s1, st.enriched->band, st.tol);
    r.verdict = Verdict::Pass;
    r.detail = "block dimension " + std::to_string(report.atomic->block_dim) + " over " +
               std::to_string(report.atomic->band.atom_count()) + " atom(s)";
  });

  run_check("reducible-split", [&](CheckResult& r) {
    if (!st.enriched) {
      try {
        ensure_enrich(st);
      } catch (const Error&) {
      }
    }
    if (!st.enriched) {
      r.verdict = Verdict::Skipped;
      r.detail = "enrichment unavailable: " + st.enrich_reason;
      return;
    }
    if (st.enriched->s1.status != ClosureStatus::Closed) {
      r.verdict = Verdict::Inconclusive;
      r.detail = "enrichment closure exhausted its budget";
      return;
    }
    const auto classes = reducible_split(st.enriched->s1, st.enriched->band, st.tol);
    std::ostringstream os;
    for (const auto& [proj, sub] : classes) {
      SplitSummary summary;
      summary.dimension = static_cast<int>(proj.trace().real() + 0.5);
      summary.size = sub.size();
      summary.rank = 0;
      for (std::size_t a = 0; a < st.enriched->band.atom_count(); ++a)
        if ((proj * st.enriched->band.atoms[a] - st.enriched->band.atoms[a]).norm() < 0.5) {
          summary.rank = st.enriched->band.atom_ranks[a];
          break;
        }
      report.split.push_back(summary);
      os << "rank-" << summary.rank << " class: dimension " << summary.dimension
         << ", compressed size " << summary.size << "; ";
    }
    r.verdict = Verdict::Pass;
    r.detail = std::to_string(classes.size()) + " class(es): " + os.str();
  });

  run_check("masa", [&](CheckResult& r) {
    try {
      ensure_band(st);
    } catch (const CommutativityViolation& e) {
      r.verdict = Verdict::Violation;
      r.detail = e.what();
      return;
    }
    if (!st.band) {
      r.verdict = Verdict::Skipped;
      r.detail = st.band_reason;
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = masa_criterion(*st.band)
                   ? "masa-generating: every atom has rank one"
                   : "not masa-generating: some atom has rank above one";
  });

  run_check("finitely-generated", [&](CheckResult& r) {
    const AtomicityReport ar =
        check_finitely_generated_atomicity(file.generators, st.tol, st.budget);
    if (!ar.generators_are_pi) {
      r.verdict = Verdict::Skipped;
      r.detail = "generators are not partial isometries: " + ar.detail;
      return;
    }
    if (!ar.hypotheses_hold()) {
      r.verdict = Verdict::Pass;
      r.detail = "hypotheses do not hold (nothing to conclude): " + ar.detail;
      return;
    }
    if (!ar.power_lattices_equal || (!ar.atoms_agree && ar.conclusive))
      throw TheoremViolation("finitely-generated: hypotheses hold but the lattice/atom "
                             "conclusion failed: " + ar.detail);
    if (!ar.conclusive) {
      r.verdict = Verdict::Inconclusive;
      r.detail = "singly generated closures exhausted the budget: " + ar.detail;
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = "hypotheses hold; power lattices and band atoms coincide";
  });

  run_check("prime-size", [&](CheckResult& r) {
    check_prime_size(st.s, st.tol);  // PreconditionError -> skipped; violation -> exit 4
    r.verdict = Verdict::Pass;
    r.detail = "irreducible closed semigroup at prime dimension is a group of unitaries";
  });

  run_check("automatic-selfadjoint", [&](CheckResult& r) {
    const bool ok = check_automatic_selfadjoint(st.s, st.tol, st.budget);
    if (!ok) {
      ensure_irreducibility(st);
      r.verdict = Verdict::Fail;
      r.detail = std::string("self-adjoint closure contains a non-partial-isometry (input was ") +
                 (st.irr->irreducible ? "irreducible" : "reducible, outside the corollary") + ")";
      return;
    }
    r.verdict = Verdict::Pass;
    r.detail = "self-adjoint closure still consists of partial isometries";
  });

  // severity: violation > fail > inconclusive; an exhausted closure with
  // otherwise clean checks is still inconclusive
  bool any_viol = false, any_fail = false, any_inc = false;
  for (const auto& c : report.checks) {
    any_viol |= c.verdict == Verdict::Violation;
    any_fail |= c.verdict == Verdict::Fail;
    any_inc |= c.verdict == Verdict::Inconclusive;
  }
  if (report.closure_status != ClosureStatus::Closed) any_inc = true;
  report.exit_code = any_viol ? 4 : any_fail ? 1 : any_inc ? 2 : 0;
  return report;
}

std::string emit_json(const AnalysisReport& report) {
  ordered_json j;
  j["schema"] = report.schema;
  j["input"] = {{"name", report.input_name},
                {"digest", report.input_digest},
                {"dim", report.dim},
                {"generators", report.generator_count}};
  j["settings"] = {{"tol", report.tol},
                   {"max_elements", report.budget.max_elements},
                   {"max_word_length", report.budget.max_word_length},
                   {"seed", report.seed},
                   {"checks", report.requested}};
  j["closure"] = {
      {"status", report.closure_status == ClosureStatus::Closed ? "closed" : "budget_exhausted"},
      {"size", report.closure_size},
      {"max_word_length_reached", report.max_word_length_reached},
      {"completed_word_length", report.completed_word_length},
      {"self_adjoint", report.self_adjoint},
      {"contains_identity", report.contains_identity},
      {"contains_zero", report.contains_zero}};

  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json entry;
    entry["name"] = c.name;
    entry["verdict"] = verdict_name(c.verdict);
    entry["detail"] = c.detail;
    if (c.witness) entry["witness"] = matrix_json(*c.witness);
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);

  ordered_json structures;
  if (!report.hw_decompositions.empty()) {
    ordered_json hw = ordered_json::array();
    for (const auto& [gen, dec] : report.hw_decompositions) {
      ordered_json entry;
      entry["generator"] = gen + 1;
      entry["unitary_dim"] = dec.unitary_dim;
      entry["shift_sizes"] = dec.shift_sizes;
      entry["basis"] = matrix_json(dec.basis);
      hw.push_back(std::move(entry));
    }
    structures["halmos_wallen"] = std::move(hw);
  }
  if (report.band) {
    ordered_json band;
    band["atom_count"] = report.band->atom_count();
    band["atom_ranks"] = report.band->atom_ranks;
    ordered_json atoms = ordered_json::array();
    for (const auto& a : report.band->atoms) atoms.push_back(matrix_json(a));
    band["atoms"] = std::move(atoms);
    structures["band"] = std::move(band);
  }
  if (report.irreducibility_report) {
    ordered_json irr;
    irr["irreducible"] = report.irreducibility_report->irreducible;
    irr["algebra_dim"] = report.irreducibility_report->algebra_dim;
    if (report.irreducibility_report->witness_subspace)
      irr["witness"] = matrix_json(*report.irreducibility_report->witness_subspace);
    structures["irreducibility"] = std::move(irr);
  }
  if (report.zero_unitary) {
    const auto& z = *report.zero_unitary;
    ordered_json zu;
    zu["k"] = z.k;
    zu["r0"] = z.r0;
    zu["group_order"] = z.unitary_group.size();
    zu["basis"] = matrix_json(z.basis);
    ordered_json group = ordered_json::array();
    for (const auto& g : z.unitary_group) group.push_back(matrix_json(g));
    zu["unitary_group"] = std::move(group);
    ordered_json patterns = ordered_json::array();
    for (std::size_t i = 0; i < z.patterns.size(); ++i) {
      ordered_json p;
      p["element"] = i;
      p["map"] = z.patterns[i].perm.image;
      p["labels"] = z.patterns[i].labels;
      patterns.push_back(std::move(p));
    }
    zu["patterns"] = std::move(patterns);
    structures["zero_unitary"] = std::move(zu);
  }
  if (report.atomic) {
    const auto& a = *report.atomic;
    ordered_json at;
    at["block_dim"] = a.block_dim;
    at["atom_count"] = a.band.atom_count();
    at["basis"] = matrix_json(a.basis);
    ordered_json elems = ordered_json::array();
    for (std::size_t i = 0; i < a.per_element.size(); ++i) {
      ordered_json e;
      e["element"] = i;
      e["map"] = a.per_element[i].perm.image;
      ordered_json fibers = ordered_json::array();
      for (const auto& f : a.per_element[i].fiber_unitaries) fibers.push_back(matrix_json(f));
      e["fibers"] = std::move(fibers);
      e["weights"] = a.per_element[i].weights;
      elems.push_back(std::move(e));
    }
    at["elements"] = std::move(elems);
    structures["atomic_representation"] = std::move(at);
  }
  if (!report.split.empty()) {
    ordered_json split = ordered_json::array();
    for (const auto& cls : report.split)
      split.push_back({{"rank", cls.rank}, {"dimension", cls.dimension}, {"size", cls.size}});
    structures["split"] = std::move(split);
  }
  j["structures"] = std::move(structures);

  ordered_json summary;
  std::size_t npass = 0, nfail = 0, ninc = 0, nskip = 0, nviol = 0;
  for (const auto& c : report.checks) {
    switch (c.verdict) {
      case Verdict::Pass: ++npass; break;
      case Verdict::Fail: ++nfail; break;
      case Verdict::Inconclusive: ++ninc; break;
      case Verdict::Skipped: ++nskip; break;
      case Verdict::Violation: ++nviol; break;
    }
  }
  summary["pass"] = npass;
  summary["fail"] = nfail;
  summary["inconclusive"] = ninc;
  summary["skipped"] = nskip;
  summary["violation"] = nviol;
  j["summary"] = std::move(summary);
  j["exit_code"] = report.exit_code;
  return j.dump(2) + "\n";
}

std::string emit_text(const AnalysisReport& report) {
  std::ostringstream os;
  os << "pisem report (" << report.schema << ")\n";
  os << "input: " << report.input_name << " (dim " << report.dim << ", "
     << report.generator_count << " generators, digest " << report.input_digest << ")\n";
  os << "closure: "
     << (report.closure_status == ClosureStatus::Closed ? "closed" : "budget exhausted") << ", "
     << report.closure_size << " elements, max word length " << report.max_word_length_reached
     << (report.self_adjoint ? ", self-adjoint" : ", not self-adjoint")
     << (report.contains_zero ? ", contains zero" : "")
     << (report.contains_identity ? ", contains identity" : "") << "\n";
  for (const auto& c : report.checks) {
    std::string v = verdict_name(c.verdict);
    std::transform(v.begin(), v.end(), v.begin(), ::toupper);
    os << "check " << c.name << ": " << v << " : " << c.detail << "\n";
  }
  std::size_t npass = 0, nfail = 0, ninc = 0, nskip = 0, nviol = 0;
  for (const auto& c : report.checks) {
    switch (c.verdict) {
      case Verdict::Pass: ++npass; break;
      case Verdict::Fail: ++nfail; break;
      case Verdict::Inconclusive: ++ninc; break;
      case Verdict::Skipped: ++nskip; break;
      case Verdict::Violation: ++nviol; break;
    }
  }
  os << "summary: " << npass << " pass, " << nfail << " fail, " << ninc << " inconclusive, "
     << nskip << " skipped, " << nviol << " violation(s)\n";
  os << "exit: " << report.exit_code << "\n";
  return os.str();
}

}  // namespace pisem
