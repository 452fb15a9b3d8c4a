#include "pisem/powerpi.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace pisem {

bool is_power_partial_isometry(const CMatrix& t, Tol tol) {
  require_square(t, "is_power_partial_isometry");
  const int n = static_cast<int>(t.rows());
  CMatrix power = CMatrix::Identity(n, n);
  for (int k = 1; k <= n; ++k) {
    power = power * t;
    if (!is_partial_isometry(power, tol)) return false;
  }
  return true;
}

namespace {

// Projection onto ker M within the ambient space: complement of ran M*.
CMatrix kernel_projection(const CMatrix& m, Tol tol) {
  const int n = static_cast<int>(m.rows());
  return hermitize(CMatrix::Identity(n, n) - range_projection(CMatrix(m.adjoint()), tol));
}

}  // namespace

HWDecomposition halmos_wallen(const CMatrix& t, Tol tol) {
  require_square(t, "halmos_wallen");
  if (!is_power_partial_isometry(t, tol))
    throw PreconditionError("halmos_wallen: input is not a power partial isometry");
  const int n = static_cast<int>(t.rows());

  // Unitary part: where the ranges of T^n and (T*)^n meet. Power ranges are
  // decreasing and stabilize by dimension count, so the n-th power suffices.
  CMatrix tn = CMatrix::Identity(n, n);
  for (int k = 0; k < n; ++k) tn = tn * t;
  const CMatrix ran_fwd = range_projection(tn, tol);
  const CMatrix ran_bwd = range_projection(CMatrix(tn.adjoint()), tol);
  const CMatrix p_unitary = projection_meet(ran_fwd, ran_bwd);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(p_unitary);
  int u_dim = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) ++u_dim;
  const CMatrix v_unitary = es.eigenvectors().rightCols(u_dim);
  const CMatrix v_comp = es.eigenvectors().leftCols(n - u_dim);

  HWDecomposition dec;
  dec.unitary_dim = u_dim;

  std::vector<CMatrix> chains;  // one n-column-block per chain, longest first
  if (u_dim < n) {
    const int nc = n - u_dim;
    const CMatrix nil = v_comp.adjoint() * t * v_comp;

    // nilpotency index
    int p = 1;
    {
      CMatrix np = nil;
      while (np.norm() > tol.eps * std::sqrt(static_cast<double>(nc)) && p <= nc) {
        np = np * nil;
        ++p;
      }
    }

    // Chain seeds live in ker N* (complement of ran N), filtered by death
    // time: a seed of a length-s chain is killed by N^s but not by N^{s-1}.
    const CMatrix id_c = CMatrix::Identity(nc, nc);
    const CMatrix coker = hermitize(id_c - range_projection(nil, tol));
    std::vector<CMatrix> ker_meet(static_cast<std::size_t>(p) + 1);
    ker_meet[0] = CMatrix::Zero(nc, nc);
    {
      CMatrix np = id_c;
      for (int s = 1; s <= p; ++s) {
        np = np * nil;
        ker_meet[static_cast<std::size_t>(s)] =
            projection_meet(coker, kernel_projection(np, tol));
      }
    }

    for (int s = p; s >= 1; --s) {
      const CMatrix seed_proj =
          ker_meet[static_cast<std::size_t>(s)] - ker_meet[static_cast<std::size_t>(s - 1)];
      Eigen::SelfAdjointEigenSolver<CMatrix> seeds(hermitize(seed_proj));
      // eigenvalues ascending; seeds are the ~1 eigenvectors, taken in
      // descending eigenvalue order for determinism
      for (Eigen::Index i = seeds.eigenvalues().size() - 1; i >= 0; --i) {
        if (seeds.eigenvalues()(i) <= 0.5) break;
        CVector v = seeds.eigenvectors().col(i);
        CMatrix chain(nc, s);
        for (int step = 0; step < s; ++step) {
          const double len = v.norm();
          if (len < 0.5)
            throw Error("halmos_wallen: Jordan chain collapsed; input is not a "
                        "power partial isometry at this tolerance");
          v /= len;
          chain.col(step) = v;
          if (step + 1 < s) v = nil * v;
        }
        chains.push_back(v_comp * chain);
        dec.shift_sizes.push_back(s);
      }
    }
  }

  CMatrix basis(n, n);
  basis.leftCols(u_dim) = v_unitary;
  int col = u_dim;
  for (const auto& chain : chains) {
    basis.middleCols(col, chain.cols()) = chain;
    col += static_cast<int>(chain.cols());
  }

  // Chains of a power partial isometry are orthonormal in exact arithmetic;
  // a QR pass mops up any drift without moving the columns materially.
  const CMatrix gram_defect = basis.adjoint() * basis - CMatrix::Identity(n, n);
  if (gram_defect.norm() > tol.eps) {
    Eigen::HouseholderQR<CMatrix> qr(basis);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      const Complex d = r(j, j);
      if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    basis = q;
  }
  dec.basis = basis;
  return dec;
}

bool ppi_semigroup_check(const CMatrix& t, Tol tol, std::size_t max_words,
                         std::size_t max_elements) {
  require_square(t, "ppi_semigroup_check");
  ClosedSemigroup s =
      close_selfadjoint({t}, tol, ClosureBudget{max_elements, max_words});
  for (const auto& e : s.elements)
    if (!is_partial_isometry(e, tol)) return false;  // conclusive either way
  if (s.status == ClosureStatus::Closed) return true;
  if (s.completed_word_length >= static_cast<std::size_t>(t.rows()))
    return true;  // all powers up to the dimension were among the words
  throw BudgetExhausted(
      "ppi_semigroup_check: closure budget exhausted before covering all powers",
      std::move(s));
}

}  // namespace pisem
