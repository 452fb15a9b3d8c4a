#include "pisem/families.hpp"

#include <cmath>
#include <string>

#include "pisem/linalg.hpp"

namespace pisem {

CMatrix basic_matrix(int n, int i, int j) {
  if (n < 1 || i < 0 || j < 0 || i >= n || j >= n)
    throw DimensionError("basic_matrix: index out of range");
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

CMatrix truncated_shift(int s) {
  if (s < 1) throw DimensionError("truncated_shift: size must be positive");
  CMatrix j = CMatrix::Zero(s, s);
  for (int i = 0; i + 1 < s; ++i) j(i + 1, i) = 1.0;
  return j;
}

Complex root_of_unity(int order, int numerator) {
  if (order < 1) throw DimensionError("root_of_unity: order must be positive");
  const double angle = 2.0 * M_PI * static_cast<double>(numerator) / static_cast<double>(order);
  return Complex(std::cos(angle), std::sin(angle));
}

std::vector<CMatrix> tensor_semigroup_generators(int blocks, int block_size,
                                                 const std::vector<CMatrix>& unitary_generators) {
  if (blocks < 1 || block_size < 1)
    throw DimensionError("tensor_semigroup_generators: blocks and block_size must be positive");
  for (const auto& u : unitary_generators)
    if (u.rows() != block_size || u.cols() != block_size)
      throw DimensionError("tensor_semigroup_generators: unitary generator size mismatch");

  const CMatrix id = CMatrix::Identity(block_size, block_size);
  std::vector<CMatrix> gens;
  for (int i = 0; i + 1 < blocks; ++i) {
    gens.push_back(tensor(basic_matrix(blocks, i, i + 1), id));
    gens.push_back(tensor(basic_matrix(blocks, i + 1, i), id));
  }
  for (const auto& u : unitary_generators)
    gens.push_back(tensor(basic_matrix(blocks, 0, 0), u));
  if (gens.empty()) gens.push_back(id);  // blocks == 1 with a trivial group
  return gens;
}

std::vector<CMatrix> weyl_heisenberg_generators(int n) {
  if (n < 1) throw DimensionError("weyl_heisenberg_generators: n must be positive");
  CMatrix shift = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) shift((i + 1) % n, i) = 1.0;
  CMatrix clock = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) clock(i, i) = root_of_unity(n, i);
  return {shift, clock};
}

std::vector<CMatrix> pauli_generators() { return weyl_heisenberg_generators(2); }

std::vector<CMatrix> s3_generators() {
  const double c = -0.5;                    // cos(2*pi/3)
  const double s = std::sqrt(3.0) / 2.0;    // sin(2*pi/3)
  CMatrix rotation(2, 2), flip(2, 2);
  rotation << Complex(c), Complex(-s), Complex(s), Complex(c);
  flip << Complex(1), Complex(0), Complex(0), Complex(-1);
  return {rotation, flip};
}

std::vector<CMatrix> dihedral8_generators() { return pauli_generators(); }

std::vector<CMatrix> quaternion_generators() {
  CMatrix i_unit(2, 2), j_unit(2, 2);
  i_unit << Complex(0, 1), Complex(0), Complex(0), Complex(0, -1);
  j_unit << Complex(0), Complex(1), Complex(-1), Complex(0);
  return {i_unit, j_unit};
}

std::vector<CMatrix> a4_generators() {
  CMatrix sign_flip = CMatrix::Zero(3, 3);
  sign_flip(0, 0) = 1.0;
  sign_flip(1, 1) = -1.0;
  sign_flip(2, 2) = -1.0;
  CMatrix cycle = CMatrix::Zero(3, 3);
  cycle(0, 2) = 1.0;
  cycle(1, 0) = 1.0;
  cycle(2, 1) = 1.0;
  return {sign_flip, cycle};
}

CMatrix direct_sum(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace pisem
