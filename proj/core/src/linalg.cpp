#include "pisem/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace pisem {

bool is_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex& z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

void require_square(const CMatrix& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw DimensionError(std::string(where) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(where) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

void require_finite(const CMatrix& a, const char* where) {
  if (!is_finite(a))
    throw DimensionError(std::string(where) + ": matrix has non-finite entries");
}

CMatrix hermitize(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

bool matrices_equal(const CMatrix& a, const CMatrix& b, Tol tol) {
  require_same_shape(a, b, "matrices_equal");
  return (a - b).norm() <= tol.eps;
}

bool is_projection(const CMatrix& a, Tol tol) {
  require_square(a, "is_projection");
  if ((a - a.adjoint()).norm() > tol.eps) return false;
  return (a * a - a).norm() <= tol.eps;
}

bool is_partial_isometry(const CMatrix& a, Tol tol) {
  require_square(a, "is_partial_isometry");
  const CMatrix gram = a.adjoint() * a;
  const bool via_projection = is_projection(gram, tol);
  const bool via_identity = (a * gram - a).norm() <= tol.eps;
  if (via_projection != via_identity)
    throw Error("is_partial_isometry: the A*A-projection test and the AA*A=A test "
                "disagree; the input sits on the tolerance boundary");
  return via_projection;
}

std::pair<CMatrix, CMatrix> initial_and_final_projections(const CMatrix& a, Tol tol) {
  require_square(a, "initial_and_final_projections");
  if (!is_partial_isometry(a, tol))
    throw PreconditionError("initial_and_final_projections: input is not a partial isometry");
  CMatrix initial = hermitize(a.adjoint() * a);
  CMatrix final_p = hermitize(a * a.adjoint());
  if (!is_projection(initial, tol) || !is_projection(final_p, tol))
    throw PreconditionError("initial_and_final_projections: A*A or AA* failed the projection test");
  return {clean_projection(initial), clean_projection(final_p)};
}

namespace {

// Relative cutoff with an absolute floor: everything in this library is a
// contraction, so singular values at or below eps are noise even when the
// whole matrix is numerically zero (where a purely relative cutoff would
// admit rounding residue as rank).
double rank_cutoff(const CMatrix& a, Tol tol, double sigma_max) {
  return std::max(tol.eps * static_cast<double>(std::max(a.rows(), a.cols())) * sigma_max,
                  tol.eps);
}

}  // namespace

int svd_rank(const CMatrix& a, Tol tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rank_cutoff(a, tol, sv(0));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

CMatrix orthonormal_range_basis(const CMatrix& a, Tol tol) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return CMatrix::Zero(a.rows(), 0);
  const double cutoff = rank_cutoff(a, tol, sv(0));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

CMatrix range_projection(const CMatrix& a, Tol tol) {
  require_square(a, "range_projection");
  const CMatrix u = orthonormal_range_basis(a, tol);
  return hermitize(u * u.adjoint());
}

CMatrix clean_projection(const CMatrix& m) {
  require_square(m, "clean_projection");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(m));
  const auto& vals = es.eigenvalues();
  int keep = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals(i) > 0.5) ++keep;
  if (keep == 0) return CMatrix::Zero(m.rows(), m.cols());
  // eigenvalues are sorted ascending, so the kept block is the tail
  const CMatrix v = es.eigenvectors().rightCols(keep);
  return hermitize(v * v.adjoint());
}

CMatrix projection_meet(const CMatrix& p, const CMatrix& q) {
  require_same_shape(p, q, "projection_meet");
  return clean_projection(p * q * p);
}

CMatrix polar_unitary(const CMatrix& m) {
  require_square(m, "polar_unitary");
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

bool is_unitary(const CMatrix& u, Tol tol) {
  require_square(u, "is_unitary");
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).norm() <= tol.eps;
}

}  // namespace pisem
