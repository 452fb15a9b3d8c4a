#pragma once

#include <random>
#include <string>
#include <vector>

#include "pisem/types.hpp"

namespace pisem {

using Rng = std::mt19937_64;

/// Haar-distributed unitary via QR of a Ginibre matrix with the standard
/// phase fix on the R diagonal.
CMatrix haar_unitary(int n, Rng& rng);

/// Unitary with eigenphases 2*pi*a/o for random a and orders o <= max_order,
/// conjugated into a Haar-random eigenbasis. Its exact identity power is
/// lcm of the drawn orders.
struct FiniteOrderUnitary {
  CMatrix u;
  long order = 1;
};
FiniteOrderUnitary random_finite_order_unitary(int n, int max_order, Rng& rng);

struct PpiSample {
  CMatrix t;
  int unitary_dim = 0;
  std::vector<int> shift_sizes;  // descending
};

/// Unitary part (+) truncated shifts, conjugated by a Haar unitary. With
/// finite_order set the unitary part has finite order so the generated
/// self-adjoint semigroup is finite.
PpiSample random_power_partial_isometry(int n, Rng& rng, bool finite_order = false,
                                        int max_order = 6);

/// Partial isometry of the given rank with Haar-random initial and final
/// spaces.
CMatrix random_partial_isometry(int n, int rank, Rng& rng);

struct FiniteGroupSample {
  std::vector<CMatrix> generators;
  long order = 0;
  std::string name;
};

/// A finite group of r0 x r0 unitaries acting irreducibly on C^{r0},
/// conjugated by a Haar-random unitary. r0 = 1 draws a cyclic group of order
/// <= 8; r0 = 2 draws among S3, the order-8 dihedral group and the quaternion
/// group; r0 = 3 uses the 3-dimensional representation of A4 (order 12), the
/// smallest group acting irreducibly on C^3.
FiniteGroupSample random_irreducible_unitary_group(int r0, Rng& rng);

}  // namespace pisem
