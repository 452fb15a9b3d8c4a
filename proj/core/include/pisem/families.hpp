#pragma once

#include <vector>

#include "pisem/types.hpp"

namespace pisem {

/// n x n matrix with a single 1 at (i, j), 0-based.
CMatrix basic_matrix(int n, int i, int j);

/// Lower truncated shift J_s: ones on the first subdiagonal. J_1 = [0].
CMatrix truncated_shift(int s);

/// Root of unity exp(2*pi*i * numerator / order).
Complex root_of_unity(int order, int numerator = 1);

/// Generators of the block-monomial semigroup on `blocks` blocks of size
/// `block_size`: the elementary up/down shifts between adjacent blocks
/// (carrying the identity) plus each unitary generator planted on block 1.
/// Closing them yields every single-block matrix over the generated group,
/// together with the zero matrix once blocks >= 2.
std::vector<CMatrix> tensor_semigroup_generators(int blocks, int block_size,
                                                 const std::vector<CMatrix>& unitary_generators);

/// Cyclic shift and clock at dimension n; they generate a group of n^3
/// monomial unitaries (n phases times n^2 shift-clock patterns).
std::vector<CMatrix> weyl_heisenberg_generators(int n);

/// Pauli X and Z; same as weyl_heisenberg_generators(2).
std::vector<CMatrix> pauli_generators();

/// 2x2 irreducible representations of small groups: S3 (order 6), the
/// dihedral group of order 8 and the quaternion group (order 8); and the
/// 3-dimensional irreducible representation of A4 (order 12) - the smallest
/// finite group acting irreducibly on C^3.
std::vector<CMatrix> s3_generators();
std::vector<CMatrix> dihedral8_generators();
std::vector<CMatrix> quaternion_generators();
std::vector<CMatrix> a4_generators();

/// Direct sum stacking a on the top-left and b on the bottom-right.
CMatrix direct_sum(const CMatrix& a, const CMatrix& b);

/// Kronecker product a (x) b.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

}  // namespace pisem
