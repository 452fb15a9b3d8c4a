#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pisem/band.hpp"
#include "pisem/closure.hpp"
#include "pisem/types.hpp"

namespace pisem {

/// Injective partial self-map of {0..points-1}; image[i] is the image of i or
/// -1 outside the domain. Records which block/atom an element carries where.
struct PartialPermutation {
  int points = 0;
  std::vector<int> image;

  PartialPermutation() = default;
  explicit PartialPermutation(int n) : points(n), image(static_cast<std::size_t>(n), -1) {}

  static PartialPermutation identity(int n);

  bool defined(int i) const { return image[static_cast<std::size_t>(i)] >= 0; }
  int operator[](int i) const { return image[static_cast<std::size_t>(i)]; }
  void set(int i, int j);

  std::vector<int> domain() const;
  std::vector<int> range() const;
  bool is_injective() const;

  PartialPermutation inverse() const;

  bool operator==(const PartialPermutation&) const = default;
};

/// (a o b)(x) = a(b(x)), defined where both legs are.
PartialPermutation compose(const PartialPermutation& a, const PartialPermutation& b);

struct IrreducibilityReport {
  bool irreducible = false;
  /// Dimension of the linear span of the unital semigroup inside the n x n
  /// matrices; equals n^2 exactly when the semigroup is irreducible
  /// (Burnside, valid at full closure).
  int algebra_dim = 0;
  /// Projection onto a common invariant subspace, when one was found.
  std::optional<CMatrix> witness_subspace;
};

/// Block-monomial normal form of an irreducible closed semigroup of partial
/// isometries: k blocks of size r0, a basis aligning them, the r0 x r0
/// unitary group living on a single block, and for every element its partial
/// permutation of blocks with a group label per edge.
struct ZeroUnitaryStructure {
  int k = 0;
  int r0 = 0;
  CMatrix basis;  // n x n, columns grouped by block
  std::vector<CMatrix> unitary_group;

  struct ElementPattern {
    PartialPermutation perm;
    /// For each domain block (ascending), the unitary_group index of the
    /// block carried onto perm[j].
    std::vector<int> labels;
  };
  std::vector<ElementPattern> patterns;  // one per semigroup element
};

struct SandwichReport {
  bool lower = false;  // every E_ij (x) G matches a semigroup element
  bool upper = false;  // every element is block-monomial over the group
  std::vector<std::string> diffs;

  bool ok() const { return lower && upper; }
  explicit operator bool() const { return ok(); }
};

/// Finite composition-operator form of an enriched irreducible semigroup:
/// every element permutes the band atoms partially and acts by a unitary on
/// each fiber, with all weights 1 under the uniform atom measure.
struct AtomicRepresentation {
  ProjectionBand band;
  int block_dim = 0;
  CMatrix basis;  // n x n, columns grouped by atom in band order

  struct ElementAction {
    PartialPermutation perm;
    std::vector<CMatrix> fiber_unitaries;  // per domain atom, ascending
    std::vector<double> weights;           // identically 1
  };
  std::vector<ElementAction> per_element;
};

struct AtomicityReport {
  bool generators_are_pi = false;
  bool ranges_equal = false;
  bool kernels_equal = false;
  bool generators_commute = false;
  bool power_lattices_equal = false;
  bool atoms_agree = false;
  bool conclusive = false;  // false when some singly generated closure exhausted
  std::string detail;

  bool hypotheses_hold() const { return ranges_equal && kernels_equal && generators_commute; }
};

/// Burnside span test: the unital span of a closed semigroup is an algebra,
/// and it acts irreducibly iff its dimension is n^2. For budget-exhausted
/// input the verdict is advisory only. When reducible, a witness projection
/// is sought from the orbit of a vector inside the invariant structure
/// (commutant spectral subspaces first, then deterministic orbit probes).
IrreducibilityReport irreducibility(const ClosedSemigroup& s, Tol tol);

/// Least n in [1, n_max] with ||U^n - I||_F <= eps_target. Eigenphase
/// screening keeps the scan cheap; every candidate is verified by direct
/// powering. Throws SearchExhaustedError when no index qualifies.
long approximate_identity_power(const CMatrix& u, double eps_target, long n_max);

/// Minimal SVD-rank among nonzero elements.
int minimal_nonzero_rank(const ClosedSemigroup& s, Tol tol);

/// Recover the zero-unitary block structure of an irreducible closed
/// semigroup of partial isometries: minimal rank r0, a normal element of that
/// rank whose restriction is unitary, the block group U = PSP minus zero, a
/// block basis propagated breadth-first from block 1 along shortest words,
/// and the partial permutation pattern of every element.
ZeroUnitaryStructure extract_zero_unitary(const ClosedSemigroup& s, Tol tol);

/// Lower inclusion: every single-block matrix over the group matches an
/// element. Upper inclusion: every element is block-monomial with blocks in
/// the group. Mismatches are listed, not thrown.
SandwichReport verify_sandwich(const ClosedSemigroup& s, const ZeroUnitaryStructure& z, Tol tol);

/// Atom-level composition-operator form of an enriched irreducible semigroup.
/// All atoms must share one rank (TheoremViolation otherwise).
AtomicRepresentation atomic_representation(const ClosedSemigroup& s1, const ProjectionBand& band,
                                           Tol tol);

/// Group atoms by rank; each rank class yields a reducing projection and the
/// compressed semigroup. Requires the band inside S; a class projection
/// failing to commute with some element raises TheoremViolation.
std::vector<std::pair<CMatrix, ClosedSemigroup>> reducible_split(const ClosedSemigroup& s,
                                                                 const ProjectionBand& band,
                                                                 Tol tol);

/// Check the commuting-generator hypotheses (equal ranges, equal kernels,
/// commutation); when they hold, verify that all power range/kernel lattices
/// coincide and that the singly generated semigroups produce identical band
/// atoms.
AtomicityReport check_finitely_generated_atomicity(const std::vector<CMatrix>& generators,
                                                   Tol tol, ClosureBudget budget);

/// For prime ambient dimension and an irreducible closed semigroup of partial
/// isometries without rank-one members, assert that the semigroup is a group
/// of unitaries. Returns true on success; a failure with valid preconditions
/// is a TheoremViolation, never a false return.
bool check_prime_size(const ClosedSemigroup& s, Tol tol);

/// Close S together with its adjoints and test whether everything stays a
/// partial isometry. A negative answer is conclusive; budget exhaustion with
/// no counterexample throws BudgetExhausted.
bool check_automatic_selfadjoint(const ClosedSemigroup& s, Tol tol, ClosureBudget budget);

/// All atoms rank one: the band generates a masa, forcing one-dimensional
/// fibers in the atomic representation.
bool masa_criterion(const ProjectionBand& band);

}  // namespace pisem
