#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pisem/linalg.hpp"
#include "pisem/types.hpp"

namespace pisem {

struct ClosureBudget {
  std::size_t max_elements = 5000;
  std::size_t max_word_length = 16;
};

enum class ClosureStatus { Closed, BudgetExhausted };

/// A finite matrix semigroup produced by breadth-first word enumeration.
///
/// Elements are pairwise distinct representatives under matrices_equal at
/// work_tol; words[i] is one shortest generator word (indices into
/// `generators`) evaluating to elements[i]. Element order is breadth-first by
/// word length, ties broken lexicographically by generator indices, so the
/// whole structure is deterministic given the input order.
struct ClosedSemigroup {
  int dim = 0;
  std::vector<CMatrix> elements;
  std::vector<std::vector<int>> words;
  std::vector<CMatrix> generators;
  ClosureStatus status = ClosureStatus::BudgetExhausted;
  Tol work_tol;
  ClosureBudget budget;
  /// Largest word length L such that every word of length <= L was enumerated.
  std::size_t completed_word_length = 0;
  /// Length of the longest word actually stored.
  std::size_t max_word_length_reached = 0;

  std::size_t size() const { return elements.size(); }

  /// Index of the representative nearest to `a` within `eps` (defaults to
  /// work_tol). Nearest-match policy: among all representatives within the
  /// tolerance the closest one wins, ties broken by lowest index.
  std::optional<std::size_t> find(const CMatrix& a, double eps = -1.0) const;

  bool contains(const CMatrix& a, double eps = -1.0) const { return find(a, eps).has_value(); }
  bool contains_identity() const;
  bool contains_zero() const;
  bool is_self_adjoint() const;

  /// Rebuild the dedup acceleration index (needed after manual edits of
  /// `elements`; close() does this automatically).
  void rebuild_index();

  // fingerprint index: elements sorted by Re<A, A0> for a fixed probe A0
  std::vector<std::pair<double, std::size_t>> index_;
  std::vector<double> norms_;
  std::vector<double> probe_im_;
  CMatrix probe_;
};

/// Breadth-first closure of a generator set under multiplication. New
/// products are compared against all representatives; status is Closed iff a
/// full pass adds nothing. The zero matrix appears only if some word reaches
/// it. Working tolerance is eps * (1 + max_word_length): each extra factor of
/// a contraction adds O(eps) Frobenius error.
ClosedSemigroup close(const std::vector<CMatrix>& generators, Tol tol, ClosureBudget budget);

/// close(generators together with their adjoints).
ClosedSemigroup close_selfadjoint(const std::vector<CMatrix>& generators, Tol tol,
                                  ClosureBudget budget);

/// Every element passes is_partial_isometry at the given tolerance.
bool all_partial_isometries(const ClosedSemigroup& s, Tol tol);

/// Elements passing is_projection, each snapped to an exact Hermitian
/// idempotent, in element order.
std::vector<CMatrix> projections_of(const ClosedSemigroup& s, Tol tol);

/// Thrown when a closure-backed check ran out of budget before reaching a
/// conclusive verdict; carries whatever was enumerated.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& msg, ClosedSemigroup partial_result)
      : Error(msg), partial(std::move(partial_result)) {}

  ClosedSemigroup partial;
};

}  // namespace pisem
