#include <doctest.h>

#include "pisem/closure.hpp"
#include "pisem/families.hpp"
#include "pisem/random.hpp"
#include "support/oracles.hpp"
#include "support/zoo.hpp"

using namespace pisem;

namespace {
const Tol kTol{1e-9};
const ClosureBudget kBudget{5000, 16};
}

TEST_SUITE_BEGIN("closure");

TEST_CASE("basic matrix pair closes to five elements") {
  // oracle: exhaustive words to length 3 stabilize at {E12, E21, E11, E22, 0}
  const std::vector<CMatrix> gens{basic_matrix(2, 0, 1), basic_matrix(2, 1, 0)};
  const auto oracle = testing::enumerate_words(gens, 3, 1e-9);
  CHECK(oracle.size() == 5);

  const ClosedSemigroup s = close(gens, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  CHECK(s.size() == 5);
  for (const auto& v : oracle) CHECK(s.contains(v));
  CHECK(s.contains(basic_matrix(2, 0, 0)));
  CHECK(s.contains(basic_matrix(2, 1, 1)));
  CHECK(s.contains_zero());
  CHECK_FALSE(s.contains_identity());
}

TEST_CASE("sign matrix closes to a two-element group") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  const ClosedSemigroup s = close({d}, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  CHECK(s.size() == 2);
  CHECK(s.contains_identity());
}

TEST_CASE("identity closes to itself") {
  const ClosedSemigroup s = close({CMatrix::Identity(3, 3)}, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  CHECK(s.size() == 1);
}

TEST_CASE("close_selfadjoint of a single basic matrix") {
  const ClosedSemigroup s = close_selfadjoint({basic_matrix(2, 0, 1)}, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  CHECK(s.size() == 5);

  // matches close of the pair
  const ClosedSemigroup pair = close({basic_matrix(2, 0, 1), basic_matrix(2, 1, 0)}, kTol, kBudget);
  for (const auto& e : pair.elements) CHECK(s.contains(e));
}

TEST_CASE("close_selfadjoint of a cyclic unitary") {
  Rng rng(41);
  const CMatrix v = haar_unitary(2, rng);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = Complex(0, 1);  // order 4
  d(1, 1) = Complex(0, -1);
  const ClosedSemigroup s = close_selfadjoint({v * d * v.adjoint()}, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  CHECK(s.size() == 4);
}

TEST_CASE("embedded shift closes to five elements in dimension three") {
  const CMatrix g = direct_sum(truncated_shift(2), CMatrix::Zero(1, 1));
  const auto oracle = testing::enumerate_words({g, g.adjoint()}, 3, 1e-9);
  CHECK(oracle.size() == 5);
  const ClosedSemigroup s = close_selfadjoint({g}, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  CHECK(s.size() == 5);
}

TEST_CASE("closure is idempotent") {
  const ClosedSemigroup s =
      close_selfadjoint({basic_matrix(3, 0, 1), basic_matrix(3, 1, 2)}, kTol, kBudget);
  CHECK(s.status == ClosureStatus::Closed);
  const ClosedSemigroup again = close(s.elements, kTol, kBudget);
  CHECK(again.status == ClosureStatus::Closed);
  CHECK(again.size() == s.size());
  for (const auto& e : s.elements) CHECK(again.contains(e));
}

TEST_CASE("closed status certifies products stay inside") {
  const ClosedSemigroup s = close_selfadjoint({truncated_shift(3)}, kTol, kBudget);
  REQUIRE(s.status == ClosureStatus::Closed);
  for (const auto& a : s.elements)
    for (const auto& b : s.elements) CHECK(s.contains(a * b));
}

TEST_CASE("word provenance evaluates to the element") {
  const ClosedSemigroup s =
      close_selfadjoint({basic_matrix(2, 0, 1)}, kTol, kBudget);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CMatrix value = CMatrix::Identity(s.dim, s.dim);
    for (int g : s.words[i]) value = value * s.generators[static_cast<std::size_t>(g)];
    CHECK((value - s.elements[i]).norm() <=
          s.work_tol.eps * static_cast<double>(s.words[i].size()));
  }
}

TEST_CASE("budget exhaustion is reported, not thrown") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 0.5;  // diag(1, 1/2): powers never repeat
  const ClosedSemigroup s = close({d}, kTol, ClosureBudget{8, 30});
  CHECK(s.status == ClosureStatus::BudgetExhausted);
  CHECK(s.size() == 8);
  CHECK_FALSE(all_partial_isometries(s, kTol));
}

TEST_CASE("deterministic element order") {
  const std::vector<CMatrix> gens{basic_matrix(2, 0, 1), basic_matrix(2, 1, 0)};
  const ClosedSemigroup a = close(gens, kTol, kBudget);
  const ClosedSemigroup b = close(gens, kTol, kBudget);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a.elements[i] - b.elements[i]).norm() == 0.0);
    CHECK(a.words[i] == b.words[i]);
  }
}

TEST_CASE("all_partial_isometries and projections_of") {
  const ClosedSemigroup s = close_selfadjoint({basic_matrix(2, 0, 1)}, kTol, kBudget);
  CHECK(all_partial_isometries(s, kTol));
  const auto projs = projections_of(s, kTol);
  REQUIRE(projs.size() == 3);  // E11, E22, 0
  const ClosedSemigroup simple = close({CMatrix::Identity(2, 2)}, kTol, kBudget);
  CHECK(projections_of(simple, kTol).size() == 1);
  const ClosedSemigroup zero = close({CMatrix::Zero(2, 2)}, kTol, kBudget);
  const auto zero_projs = projections_of(zero, kTol);
  REQUIRE(zero_projs.size() == 1);
  CHECK(zero_projs[0].norm() == 0.0);
}

TEST_CASE("self-adjoint closure contains all adjoints") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    PpiSample sample = random_power_partial_isometry(n, rng, true, 4);
    const ClosedSemigroup s = close_selfadjoint({sample.t}, kTol, ClosureBudget{5000, 24});
    if (s.status != ClosureStatus::Closed) continue;
    CHECK(s.is_self_adjoint());
  }
}

TEST_CASE("idempotents in closed self-adjoint PI semigroups are self-adjoint and commute") {
  // quantified forms of the projection-band facts, over the whole zoo
  const auto zoo = testing::build_zoo(2024);
  REQUIRE(zoo.size() >= 50);
  for (const auto& inst : zoo) {
    REQUIRE_MESSAGE(inst.s.status == ClosureStatus::Closed, inst.name);
    const double eps = std::max(1e-8, inst.s.work_tol.eps);
    REQUIRE_MESSAGE(all_partial_isometries(inst.s, Tol{eps}), inst.name);
    for (const auto& e : inst.s.elements) {
      if ((e * e - e).norm() <= eps) CHECK((e - e.adjoint()).norm() <= eps);
    }
    const auto projs = projections_of(inst.s, Tol{eps});
    for (std::size_t i = 0; i < projs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK((projs[i] * projs[j] - projs[j] * projs[i]).norm() <= eps);
  }
}

TEST_SUITE_END();
