#pragma once

#include <utility>

#include "pisem/types.hpp"

namespace pisem {

/// True iff every entry is finite (no NaN/Inf).
bool is_finite(const CMatrix& a);

void require_square(const CMatrix& a, const char* where);
void require_same_shape(const CMatrix& a, const CMatrix& b, const char* where);
void require_finite(const CMatrix& a, const char* where);

/// Hermitian part (M + M*)/2.
CMatrix hermitize(const CMatrix& m);

/// ||A - B||_F <= eps. Reflexive and symmetric; transitive only up to 2*eps,
/// which callers must not rely on.
bool matrices_equal(const CMatrix& a, const CMatrix& b, Tol tol);

/// ||A - A*|| <= eps and ||A^2 - A|| <= eps.
bool is_projection(const CMatrix& a, Tol tol);

/// A*A is a projection; cross-checked against ||A A* A - A|| <= eps. The two
/// characterizations are equivalent, so a disagreement (possible only for
/// inputs sitting exactly on the tolerance boundary) raises an Error.
bool is_partial_isometry(const CMatrix& a, Tol tol);

/// (A*A, A A*) for a partial isometry A, re-symmetrized and snapped to exact
/// Hermitian idempotents. Throws PreconditionError if A is not a partial
/// isometry at the given tolerance.
std::pair<CMatrix, CMatrix> initial_and_final_projections(const CMatrix& a,
                                                          Tol tol);

/// Number of singular values above the relative cutoff
/// eps * max(rows, cols) * sigma_max.
int svd_rank(const CMatrix& a, Tol tol);

/// Orthonormal basis of the column space (n x rank), singular vectors for
/// singular values above the relative cutoff.
CMatrix orthonormal_range_basis(const CMatrix& a, Tol tol);

/// Orthogonal projection onto the column space of A.
CMatrix range_projection(const CMatrix& a, Tol tol);

/// Spectral snap of a near-projection: Hermitian part, then the spectral
/// projection onto eigenvalues > 1/2. Output is Hermitian idempotent to
/// machine precision.
CMatrix clean_projection(const CMatrix& m);

/// Meet of two commuting (up to tol) orthogonal projections, computed as the
/// spectral projection of herm(PQP) at eigenvalues > 1/2.
CMatrix projection_meet(const CMatrix& p, const CMatrix& q);

/// Unitary polar factor (nearest unitary in Frobenius norm) of a square
/// matrix; rank deficiency is resolved by the SVD convention, so the result
/// is always exactly unitary.
CMatrix polar_unitary(const CMatrix& m);

bool is_unitary(const CMatrix& u, Tol tol);

}  // namespace pisem
