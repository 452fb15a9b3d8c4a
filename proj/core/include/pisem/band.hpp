#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pisem/closure.hpp"
#include "pisem/types.hpp"

namespace pisem {

/// Finite commuting family of orthogonal projections, resolved into its atoms
/// (minimal nonzero projections of the generated Boolean algebra). Atoms are
/// pairwise orthogonal and sum to the identity; every member of the algebra
/// is a sum of a subset of atoms.
struct ProjectionBand {
  int dim = 0;
  std::vector<CMatrix> atoms;
  std::vector<int> atom_ranks;

  std::size_t atom_count() const { return atoms.size(); }
};

/// Member of the generated Boolean algebra, as a subset of atom indices.
struct BooleanElement {
  std::uint32_t atom_mask = 0;

  bool operator==(const BooleanElement&) const = default;
};

inline constexpr std::size_t kBooleanEnumerationCap = 20;  // atoms
inline constexpr std::size_t kEnrichInjectionCap = 12;     // atoms

/// Atoms of the Boolean algebra generated by a commuting family of
/// projections in dimension `dim`, by recursive subspace refinement: every
/// current subspace is split into its intersections with ran P and
/// ran (I - P). The region outside the join of all inputs appears as its own
/// atom when nonzero. Inputs must pairwise commute within 10*tol (products of
/// near-commuting projections accumulate error before refinement cleans it);
/// a violation reports the offending pair.
ProjectionBand enveloping_band(const std::vector<CMatrix>& projections, int dim, Tol tol);

/// The member of the generated algebra selected by an atom mask.
CMatrix boolean_member(const ProjectionBand& band, BooleanElement e);

/// All 2^(#atoms) members. Throws EnumerationCapError above
/// kBooleanEnumerationCap atoms; boolean_member remains usable lazily.
std::vector<std::pair<BooleanElement, CMatrix>> boolean_members(const ProjectionBand& band);

/// F = A*EA for a partial isometry A and a projection E commuting with AA*.
/// Verified to be a projection with EA = AF within tol; a verification
/// failure raises TheoremViolation (used by tests to detect bad inputs).
CMatrix conjugate_projection(const CMatrix& a, const CMatrix& e, Tol tol);

struct EnrichResult {
  ClosedSemigroup s1;
  ProjectionBand band;
  /// False when the closure exhausted its budget or the band was too large to
  /// enumerate, in which case the structural conclusions were not asserted.
  bool conclusive = false;
};

/// Close S0 together with the Boolean algebra generated by its projections,
/// and assert the conclusions: the result consists of partial isometries and
/// its projection set equals the Boolean algebra (which is stable under the
/// enrichment). Requires S0 closed, self-adjoint, all partial isometries.
/// Boolean members are injected in full up to kEnrichInjectionCap atoms;
/// beyond that only atoms are injected and the result is inconclusive.
EnrichResult enrich(const ClosedSemigroup& s0, Tol tol, ClosureBudget budget);

}  // namespace pisem
