#include "pisem/random.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "pisem/families.hpp"
#include "pisem/linalg.hpp"

namespace pisem {

CMatrix haar_unitary(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

FiniteOrderUnitary random_finite_order_unitary(int n, int max_order, Rng& rng) {
  std::uniform_int_distribution<int> order_dist(1, max_order);
  FiniteOrderUnitary out;
  CMatrix diag = CMatrix::Zero(n, n);
  long order = 1;
  for (int i = 0; i < n; ++i) {
    const int o = order_dist(rng);
    std::uniform_int_distribution<int> num_dist(0, o - 1);
    int a = num_dist(rng);
    if (std::gcd(a, o) != 1) a = 1;  // keep the eigenphase order exactly o
    diag(i, i) = root_of_unity(o, a);
    order = std::lcm(order, static_cast<long>(a == 0 ? 1 : o));
  }
  const CMatrix v = haar_unitary(n, rng);
  out.u = v * diag * v.adjoint();
  out.order = order;
  return out;
}

PpiSample random_power_partial_isometry(int n, Rng& rng, bool finite_order, int max_order) {
  PpiSample sample;
  std::uniform_int_distribution<int> u_dist(0, n);
  sample.unitary_dim = u_dist(rng);
  int remaining = n - sample.unitary_dim;
  while (remaining > 0) {
    std::uniform_int_distribution<int> part(1, remaining);
    const int s = part(rng);
    sample.shift_sizes.push_back(s);
    remaining -= s;
  }
  std::sort(sample.shift_sizes.rbegin(), sample.shift_sizes.rend());

  CMatrix block = CMatrix::Zero(n, n);
  int offset = 0;
  if (sample.unitary_dim > 0) {
    const CMatrix u = finite_order
                          ? random_finite_order_unitary(sample.unitary_dim, max_order, rng).u
                          : haar_unitary(sample.unitary_dim, rng);
    block.topLeftCorner(sample.unitary_dim, sample.unitary_dim) = u;
    offset = sample.unitary_dim;
  }
  for (int s : sample.shift_sizes) {
    block.block(offset, offset, s, s) = truncated_shift(s);
    offset += s;
  }
  const CMatrix v = haar_unitary(n, rng);
  sample.t = v * block * v.adjoint();
  return sample;
}

CMatrix random_partial_isometry(int n, int rank, Rng& rng) {
  if (rank < 0 || rank > n) throw DimensionError("random_partial_isometry: bad rank");
  CMatrix core = CMatrix::Zero(n, n);
  for (int i = 0; i < rank; ++i) core(i, i) = 1.0;
  const CMatrix left = haar_unitary(n, rng);
  const CMatrix right = haar_unitary(n, rng);
  return left * core * right;
}

FiniteGroupSample random_irreducible_unitary_group(int r0, Rng& rng) {
  FiniteGroupSample sample;
  if (r0 == 1) {
    std::uniform_int_distribution<int> order_dist(1, 8);
    const int m = order_dist(rng);
    CMatrix g(1, 1);
    g(0, 0) = root_of_unity(m);
    sample.generators = {g};
    sample.order = m;
    sample.name = "cyclic-" + std::to_string(m);
    return sample;  // nothing to conjugate in dimension 1
  }
  if (r0 == 2) {
    std::uniform_int_distribution<int> pick(0, 2);
    switch (pick(rng)) {
      case 0:
        sample.generators = s3_generators();
        sample.order = 6;
        sample.name = "S3";
        break;
      case 1:
        sample.generators = dihedral8_generators();
        sample.order = 8;
        sample.name = "D4";
        break;
      default:
        sample.generators = quaternion_generators();
        sample.order = 8;
        sample.name = "Q8";
        break;
    }
  } else if (r0 == 3) {
    sample.generators = a4_generators();
    sample.order = 12;
    sample.name = "A4";
  } else {
    throw DimensionError("random_irreducible_unitary_group: supported block sizes are 1..3");
  }
  const CMatrix v = haar_unitary(r0, rng);
  for (auto& g : sample.generators) g = v * g * v.adjoint();
  return sample;
}

}  // namespace pisem
