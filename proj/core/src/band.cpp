#include "pisem/band.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace pisem {

ProjectionBand enveloping_band(const std::vector<CMatrix>& projections, int dim, Tol tol) {
  if (dim < 1) throw DimensionError("enveloping_band: dim must be positive");
  const double commute_eps = 10.0 * tol.eps;
  for (std::size_t i = 0; i < projections.size(); ++i) {
    require_square(projections[i], "enveloping_band");
    if (projections[i].rows() != dim)
      throw DimensionError("enveloping_band: projection dimension mismatch");
    if (!is_projection(projections[i], Tol(commute_eps)))
      throw PreconditionError("enveloping_band: input " + std::to_string(i) +
                              " is not a projection");
    for (std::size_t j = 0; j < i; ++j) {
      const double defect =
          (projections[i] * projections[j] - projections[j] * projections[i]).norm();
      if (defect > commute_eps)
        throw CommutativityViolation(
            "enveloping_band: projections " + std::to_string(j) + " and " +
                std::to_string(i) + " do not commute (||PQ-QP|| = " +
                std::to_string(defect) + ")",
            static_cast<int>(j), static_cast<int>(i), defect);
    }
  }

  // refine the full space by each projection in turn
  std::vector<CMatrix> subspaces{CMatrix::Identity(dim, dim)};
  for (const auto& p : projections) {
    std::vector<CMatrix> next;
    next.reserve(subspaces.size() * 2);
    for (const auto& v : subspaces) {
      const CMatrix compressed = hermitize(v.adjoint() * p * v);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(compressed);
      const auto& vals = es.eigenvalues();
      int keep = 0;
      for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) > 0.25 && vals(i) < 0.75)
          throw CommutativityViolation(
              "enveloping_band: refinement produced an ambiguous eigenvalue " +
                  std::to_string(vals(i)) + "; inputs are not a commuting projection family",
              -1, -1, vals(i));
        if (vals(i) > 0.5) ++keep;
      }
      if (keep > 0) next.push_back(v * es.eigenvectors().rightCols(keep));
      if (keep < vals.size())
        next.push_back(v * es.eigenvectors().leftCols(vals.size() - keep));
    }
    subspaces = std::move(next);
  }

  ProjectionBand band;
  band.dim = dim;
  for (const auto& v : subspaces) {
    band.atoms.push_back(hermitize(v * v.adjoint()));
    band.atom_ranks.push_back(static_cast<int>(v.cols()));
  }
  return band;
}

CMatrix boolean_member(const ProjectionBand& band, BooleanElement e) {
  CMatrix m = CMatrix::Zero(band.dim, band.dim);
  for (std::size_t a = 0; a < band.atoms.size(); ++a)
    if (e.atom_mask & (std::uint32_t{1} << a)) m += band.atoms[a];
  return m;
}

std::vector<std::pair<BooleanElement, CMatrix>> boolean_members(const ProjectionBand& band) {
  const std::size_t m = band.atom_count();
  if (m > kBooleanEnumerationCap)
    throw EnumerationCapError("boolean_members: " + std::to_string(m) +
                              " atoms exceed the enumeration cap of " +
                              std::to_string(kBooleanEnumerationCap));
  std::vector<std::pair<BooleanElement, CMatrix>> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    BooleanElement e{mask};
    out.emplace_back(e, boolean_member(band, e));
  }
  return out;
}

CMatrix conjugate_projection(const CMatrix& a, const CMatrix& e, Tol tol) {
  require_square(a, "conjugate_projection");
  require_same_shape(a, e, "conjugate_projection");
  if (!is_partial_isometry(a, Tol(10.0 * tol.eps)))
    throw PreconditionError("conjugate_projection: A is not a partial isometry");
  if (!is_projection(e, Tol(10.0 * tol.eps)))
    throw PreconditionError("conjugate_projection: E is not a projection");
  const CMatrix final_proj = a * a.adjoint();
  if ((e * final_proj - final_proj * e).norm() > 10.0 * tol.eps)
    throw PreconditionError("conjugate_projection: E does not commute with AA*");

  const CMatrix f = hermitize(a.adjoint() * e * a);
  if (!is_projection(f, tol))
    throw TheoremViolation("conjugate_projection: A*EA failed the projection test");
  if ((e * a - a * f).norm() > tol.eps)
    throw TheoremViolation("conjugate_projection: EA != AF at the working tolerance");
  return f;
}

EnrichResult enrich(const ClosedSemigroup& s0, Tol tol, ClosureBudget budget) {
  if (s0.status != ClosureStatus::Closed)
    throw PreconditionError("enrich: input semigroup is not closed");
  if (!s0.is_self_adjoint())
    throw PreconditionError("enrich: input semigroup is not self-adjoint");
  const Tol elem_tol(std::max(tol.eps, s0.work_tol.eps));
  if (!all_partial_isometries(s0, elem_tol))
    throw PreconditionError("enrich: input semigroup contains non-partial-isometries");

  const std::vector<CMatrix> projs = projections_of(s0, elem_tol);
  ProjectionBand band = enveloping_band(projs, s0.dim, elem_tol);

  const bool full_injection = band.atom_count() <= kEnrichInjectionCap;
  std::vector<CMatrix> gens = s0.elements;
  if (full_injection) {
    for (auto& [mask, member] : boolean_members(band)) gens.push_back(member);
  } else {
    for (const auto& atom : band.atoms) gens.push_back(atom);
  }

  EnrichResult result;
  result.s1 = close(gens, tol, budget);
  result.band = band;
  result.conclusive = false;
  if (result.s1.status != ClosureStatus::Closed || !full_injection) return result;

  const Tol check_tol(std::max(
      elem_tol.eps, result.s1.work_tol.eps * (1.0 + static_cast<double>(band.atom_count()))));
  if (!all_partial_isometries(result.s1, check_tol))
    throw TheoremViolation("enrich: enriched semigroup contains a non-partial-isometry");

  // P(S1) must coincide with the Boolean algebra of the original band ...
  const std::vector<CMatrix> projs1 = projections_of(result.s1, check_tol);
  const auto members = boolean_members(band);
  for (const auto& p : projs1) {
    bool matched = false;
    for (const auto& [mask, member] : members)
      if (matrices_equal(p, member, check_tol)) {
        matched = true;
        break;
      }
    if (!matched)
      throw TheoremViolation(
          "enrich: a projection of the enriched semigroup is not a Boolean member");
  }
  for (const auto& [mask, member] : members) {
    bool matched = false;
    for (const auto& p : projs1)
      if (matrices_equal(p, member, check_tol)) {
        matched = true;
        break;
      }
    if (!matched)
      throw TheoremViolation("enrich: Boolean member missing from the enriched projections");
  }

  // ... and the band itself must be stable under enrichment.
  ProjectionBand band1 = enveloping_band(projs1, s0.dim, check_tol);
  if (band1.atom_count() != band.atom_count())
    throw TheoremViolation("enrich: enveloping band changed under enrichment");
  for (const auto& atom : band1.atoms) {
    bool matched = false;
    for (const auto& orig : band.atoms)
      if (matrices_equal(atom, orig, check_tol)) {
        matched = true;
        break;
      }
    if (!matched)
      throw TheoremViolation("enrich: band atoms changed under enrichment");
  }

  result.conclusive = true;
  return result;
}

}  // namespace pisem
