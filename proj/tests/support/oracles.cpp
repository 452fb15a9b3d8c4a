#include "oracles.hpp"

#include <Eigen/Eigenvalues>

namespace pisem::testing {

std::vector<CMatrix> enumerate_words(const std::vector<CMatrix>& generators, int max_len,
                                     double eps) {
  std::vector<CMatrix> values;
  auto try_add = [&](const CMatrix& m) {
    for (const auto& v : values)
      if ((v - m).norm() <= eps) return;
    values.push_back(m);
  };
  std::vector<CMatrix> current = generators;
  for (const auto& g : generators) try_add(g);
  for (int len = 2; len <= max_len; ++len) {
    std::vector<CMatrix> next;
    for (const auto& w : current)
      for (const auto& g : generators) {
        CMatrix prod = w * g;
        try_add(prod);
        next.push_back(std::move(prod));
      }
    current = std::move(next);
  }
  return values;
}

CMatrix gram_schmidt_range_projection(const CMatrix& a, double eps) {
  std::vector<CVector> basis;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    CVector v = a.col(j);
    for (const auto& b : basis) v -= (b.dot(v)) * b;
    for (const auto& b : basis) v -= (b.dot(v)) * b;
    const double len = v.norm();
    if (len > eps * std::max(1.0, a.norm())) basis.push_back(v / len);
  }
  CMatrix p = CMatrix::Zero(a.rows(), a.rows());
  for (const auto& b : basis) p += b * b.adjoint();
  return hermitize(p);
}

std::vector<CMatrix> subset_product_atoms(const std::vector<CMatrix>& projections, int dim,
                                          double eps) {
  const std::size_t count = projections.size();
  const CMatrix id = CMatrix::Identity(dim, dim);
  std::vector<CMatrix> atoms;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    CMatrix prod = id;
    for (std::size_t i = 0; i < count; ++i)
      prod = prod * ((mask >> i) & 1 ? projections[i] : CMatrix(id - projections[i]));
    if (prod.norm() > eps) atoms.push_back(clean_projection(prod));
  }
  return atoms;
}

int orbit_dimension(const std::vector<CMatrix>& generators, const CVector& v, double eps) {
  std::vector<CVector> basis;
  const int n = static_cast<int>(v.size());
  auto absorb = [&](CVector w) {
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    const double len = w.norm();
    if (len > eps) basis.push_back(w / len);
  };
  absorb(v);
  for (std::size_t i = 0; i < basis.size() && static_cast<int>(basis.size()) < n; ++i) {
    const CVector current = basis[i];
    for (const auto& g : generators) absorb(g * current);
  }
  return static_cast<int>(basis.size());
}

bool orbit_search_reducible(const std::vector<CMatrix>& generators, int dim,
                            const std::vector<CVector>& probes, double eps) {
  std::vector<CVector> all = probes;
  for (int i = 0; i < dim; ++i) all.push_back(CVector::Unit(dim, i));
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& g : generators) sum += g;
  Eigen::ComplexEigenSolver<CMatrix> es(sum);
  for (Eigen::Index c = 0; c < es.eigenvectors().cols(); ++c) {
    const CVector v = es.eigenvectors().col(c);
    if (v.norm() > 0.5) all.push_back(v);
  }
  for (const auto& v : all) {
    const int d = orbit_dimension(generators, v, eps);
    if (d > 0 && d < dim) return true;
  }
  return false;
}

}  // namespace pisem::testing
