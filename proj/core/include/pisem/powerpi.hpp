#pragma once

#include <vector>

#include "pisem/closure.hpp"
#include "pisem/types.hpp"

namespace pisem {

/// Orthogonal decomposition of a power partial isometry into a unitary part
/// and truncated shifts. In the returned basis (unitary columns first, then
/// shift chains in decreasing size), basis* T basis is block-diagonal with a
/// unitary block of size unitary_dim followed by lower truncated shifts J_s
/// (ones on the first subdiagonal). Pure isometries and co-isometries cannot
/// occur in finite dimension.
struct HWDecomposition {
  int unitary_dim = 0;
  std::vector<int> shift_sizes;  // descending
  CMatrix basis;
};

/// T^k is a partial isometry for k = 1..n. Checking up to the ambient
/// dimension suffices: nilpotent parts have index <= n and the unitary part
/// contributes nothing new beyond k = 1.
bool is_power_partial_isometry(const CMatrix& t, Tol tol);

/// Decompose a power partial isometry. The unitary part is the meet of
/// ran T^n and ran (T*)^n; on its complement T is nilpotent and orthonormal
/// Jordan chains (longest first) realize the truncated shifts.
HWDecomposition halmos_wallen(const CMatrix& t, Tol tol);

/// Closes the self-adjoint semigroup generated by T and reports whether every
/// element found is a partial isometry. A negative verdict is conclusive. A
/// positive verdict is conclusive when the closure either completed or
/// enumerated all words up to the ambient dimension (which covers every power
/// of T); otherwise a BudgetExhausted carrying the partial closure is thrown.
bool ppi_semigroup_check(const CMatrix& t, Tol tol, std::size_t max_words,
                         std::size_t max_elements = 5000);

}  // namespace pisem
