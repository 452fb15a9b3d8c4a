#include <doctest.h>

#include <algorithm>

#include "pisem/families.hpp"
#include "pisem/powerpi.hpp"
#include "pisem/random.hpp"
#include "support/oracles.hpp"

using namespace pisem;

namespace {
const Tol kTol{1e-9};

// canonical form check: basis* T basis must be a unitary block followed by
// exact lower truncated shifts
double block_form_defect(const CMatrix& t, const HWDecomposition& dec) {
  const int n = static_cast<int>(t.rows());
  const CMatrix d = dec.basis.adjoint() * t * dec.basis;
  CMatrix canon = CMatrix::Zero(n, n);
  canon.topLeftCorner(dec.unitary_dim, dec.unitary_dim) =
      d.topLeftCorner(dec.unitary_dim, dec.unitary_dim);
  int off = dec.unitary_dim;
  for (int s : dec.shift_sizes) {
    for (int i = 0; i + 1 < s; ++i) canon(off + i + 1, off + i) = 1.0;
    off += s;
  }
  return (d - canon).norm();
}
}  // namespace

TEST_SUITE_BEGIN("powerpi");

TEST_CASE("power partial isometry predicate") {
  CHECK(is_power_partial_isometry(truncated_shift(3), kTol));
  Rng rng(51);
  CHECK(is_power_partial_isometry(haar_unitary(4, rng), kTol));
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 2.0;
  CHECK_FALSE(is_power_partial_isometry(bad, kTol));

  // a partial isometry whose square is not one
  CMatrix v = CMatrix::Zero(3, 3);
  v(0, 1) = std::sqrt(0.5);
  v(2, 1) = std::sqrt(0.5);
  v(1, 0) = 1.0;
  REQUIRE(is_partial_isometry(v, kTol));
  CHECK_FALSE(is_power_partial_isometry(v, kTol));
}

TEST_CASE("halmos_wallen canonical cases") {
  const HWDecomposition shift = halmos_wallen(truncated_shift(3), kTol);
  CHECK(shift.unitary_dim == 0);
  CHECK(shift.shift_sizes == std::vector<int>{3});
  CHECK(block_form_defect(truncated_shift(3), shift) < 3e-9);

  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = Complex(0, 1);
  diag(1, 1) = -1.0;
  const HWDecomposition unit = halmos_wallen(diag, kTol);
  CHECK(unit.unitary_dim == 2);
  CHECK(unit.shift_sizes.empty());

  const HWDecomposition zero = halmos_wallen(CMatrix::Zero(3, 3), kTol);
  CHECK(zero.unitary_dim == 0);
  CHECK(zero.shift_sizes == std::vector<int>{1, 1, 1});

  CMatrix notppi = CMatrix::Zero(2, 2);
  notppi(0, 1) = 2.0;
  CHECK_THROWS_AS(halmos_wallen(notppi, kTol), PreconditionError);
}

TEST_CASE("halmos_wallen recovers a conjugated direct sum") {
  Rng rng(53);
  const CMatrix u2 = haar_unitary(2, rng);
  CMatrix block = CMatrix::Zero(7, 7);
  block.topLeftCorner(2, 2) = u2;
  block.block(2, 2, 2, 2) = truncated_shift(2);
  block.block(4, 4, 3, 3) = truncated_shift(3);
  const CMatrix conj = haar_unitary(7, rng);
  const CMatrix t = conj * block * conj.adjoint();

  const HWDecomposition dec = halmos_wallen(t, kTol);
  CHECK(dec.unitary_dim == 2);
  CHECK(dec.shift_sizes == std::vector<int>{3, 2});
  CHECK((dec.basis.adjoint() * dec.basis - CMatrix::Identity(7, 7)).norm() < 1e-9);
  CHECK(block_form_defect(t, dec) < 7e-9);
}

TEST_CASE("halmos_wallen summands are invariant under conjugation") {
  Rng rng(57);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    PpiSample sample = random_power_partial_isometry(n, rng);
    const HWDecomposition dec = halmos_wallen(sample.t, kTol);
    CHECK(dec.unitary_dim == sample.unitary_dim);
    CHECK(dec.shift_sizes == sample.shift_sizes);
    CHECK(block_form_defect(sample.t, dec) < static_cast<double>(n) * 1e-9);
  }
}

TEST_CASE("ppi_semigroup_check matches the direct test") {
  CHECK(ppi_semigroup_check(basic_matrix(2, 0, 1), kTol, 8));
  CHECK(ppi_semigroup_check(truncated_shift(3), kTol, 8));
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 2.0;
  CHECK_FALSE(ppi_semigroup_check(bad, kTol, 8));

  // enumerate words of {E12, E21} to length 3: all five values are PIs
  const auto words =
      testing::enumerate_words({basic_matrix(2, 0, 1), basic_matrix(2, 1, 0)}, 3, 1e-9);
  for (const auto& w : words) CHECK(is_partial_isometry(w, kTol));

  // enumerate words of {J3, J3*} to length 6: all partial isometries
  const auto jwords =
      testing::enumerate_words({truncated_shift(3), truncated_shift(3).adjoint()}, 6, 1e-9);
  for (const auto& w : jwords) CHECK(is_partial_isometry(w, kTol));
}

TEST_CASE("ppi_semigroup_check throws with a useless budget") {
  CHECK_THROWS_AS(ppi_semigroup_check(truncated_shift(4), kTol, 2, 3), BudgetExhausted);
  try {
    ppi_semigroup_check(truncated_shift(4), kTol, 2, 3);
  } catch (const BudgetExhausted& e) {
    CHECK(e.partial.size() == 3);
  }
}

TEST_CASE("random agreement between the power test and the closure test") {
  Rng rng(61);
  int ppi_checked = 0, non_ppi_checked = 0;
  while (ppi_checked < 60 || non_ppi_checked < 60) {
    const int n = 2 + static_cast<int>(rng() % 7);
    if (ppi_checked < 60) {
      PpiSample sample = random_power_partial_isometry(n, rng);
      CHECK(ppi_semigroup_check(sample.t, Tol{1e-8}, static_cast<std::size_t>(n)));
      ++ppi_checked;
    }
    if (non_ppi_checked < 60) {
      const CMatrix v = random_partial_isometry(n, 1 + static_cast<int>(rng() % (n - 1)), rng);
      if (is_power_partial_isometry(v, Tol{1e-8})) continue;
      CHECK_FALSE(ppi_semigroup_check(v, Tol{1e-8}, static_cast<std::size_t>(n)));
      ++non_ppi_checked;
    }
  }
}

TEST_SUITE_END();
