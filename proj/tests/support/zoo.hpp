// A deterministic corpus of closed self-adjoint semigroups of partial
// isometries, spanning monomial families, tensor constructions, block
// unitary groups, power-partial-isometry closures and reducible composites.

#pragma once

#include <string>
#include <vector>

#include "pisem/closure.hpp"
#include "pisem/types.hpp"

namespace pisem::testing {

struct ZooInstance {
  std::string name;
  ClosedSemigroup s;
  Tol tol{1e-9};
  bool expect_irreducible = false;
};

/// Zero-unitary construction bookkeeping for the sandwich criteria.
struct ZeroUnitaryInstance {
  std::string name;
  ClosedSemigroup s;
  int k = 0;
  int r0 = 0;
  long group_order = 0;
  Tol tol{1e-9};
};

/// The full corpus (>= 50 instances), seeded deterministically.
std::vector<ZooInstance> build_zoo(std::uint64_t seed);

/// Thirty constructed zero-unitary semigroups: k in 2..6, r0 in {1,2,3},
/// a random irreducible unitary group per block size, random conjugation,
/// and random deletion of non-generating elements before re-closing.
std::vector<ZeroUnitaryInstance> build_zero_unitary_instances(std::uint64_t seed);

}  // namespace pisem::testing
