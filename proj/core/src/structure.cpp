#include "pisem/structure.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace pisem {

PartialPermutation PartialPermutation::identity(int n) {
  PartialPermutation p(n);
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

void PartialPermutation::set(int i, int j) {
  for (int x = 0; x < points; ++x)
    if (x != i && image[static_cast<std::size_t>(x)] == j)
      throw Error("PartialPermutation: image " + std::to_string(j) + " already taken");
  image[static_cast<std::size_t>(i)] = j;
}

std::vector<int> PartialPermutation::domain() const {
  std::vector<int> d;
  for (int i = 0; i < points; ++i)
    if (defined(i)) d.push_back(i);
  return d;
}

std::vector<int> PartialPermutation::range() const {
  std::vector<int> r;
  for (int i = 0; i < points; ++i)
    if (defined(i)) r.push_back(image[static_cast<std::size_t>(i)]);
  std::sort(r.begin(), r.end());
  return r;
}

bool PartialPermutation::is_injective() const {
  std::vector<bool> seen(static_cast<std::size_t>(points), false);
  for (int i = 0; i < points; ++i) {
    if (!defined(i)) continue;
    const int j = image[static_cast<std::size_t>(i)];
    if (j < 0 || j >= points || seen[static_cast<std::size_t>(j)]) return false;
    seen[static_cast<std::size_t>(j)] = true;
  }
  return true;
}

PartialPermutation PartialPermutation::inverse() const {
  PartialPermutation inv(points);
  for (int i = 0; i < points; ++i)
    if (defined(i)) inv.image[static_cast<std::size_t>(image[static_cast<std::size_t>(i)])] = i;
  return inv;
}

PartialPermutation compose(const PartialPermutation& a, const PartialPermutation& b) {
  if (a.points != b.points)
    throw DimensionError("compose: partial permutations on different point sets");
  PartialPermutation c(a.points);
  for (int i = 0; i < b.points; ++i) {
    if (!b.defined(i)) continue;
    const int mid = b[i];
    if (a.defined(mid)) c.image[static_cast<std::size_t>(i)] = a[mid];
  }
  return c;
}

namespace {

// Incremental modified Gram-Schmidt span tracker over vectorized matrices.
class SpanBasis {
 public:
  explicit SpanBasis(double threshold) : threshold_(threshold) {}

  bool absorb(const CVector& v) {
    CVector r = v;
    for (const auto& b : basis_) r -= (b.dot(r)) * b;
    for (const auto& b : basis_) r -= (b.dot(r)) * b;  // second pass for stability
    const double len = r.norm();
    if (len <= threshold_ * std::max(1.0, v.norm())) return false;
    basis_.push_back(r / len);
    return true;
  }

  int dimension() const { return static_cast<int>(basis_.size()); }

 private:
  double threshold_;
  std::vector<CVector> basis_;
};

CVector vectorize(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

// Orthogonal projection onto the smallest subspace containing v0 and
// invariant under all generators.
CMatrix orbit_projection(const std::vector<CMatrix>& generators, const CVector& v0,
                         double threshold) {
  const int n = static_cast<int>(v0.size());
  std::vector<CVector> basis;
  auto absorb = [&](CVector w) -> bool {
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    for (const auto& b : basis) w -= (b.dot(w)) * b;
    const double len = w.norm();
    if (len <= threshold) return false;
    basis.push_back(w / len);
    return true;
  };
  absorb(v0);
  for (std::size_t i = 0; i < basis.size() && static_cast<int>(basis.size()) < n; ++i) {
    const CVector current = basis[i];
    for (const auto& g : generators) {
      absorb(g * current);
      if (static_cast<int>(basis.size()) == n) break;
    }
  }
  CMatrix p = CMatrix::Zero(n, n);
  for (const auto& b : basis) p += b * b.adjoint();
  return hermitize(p);
}

bool is_nontrivial_projection(const CMatrix& p, int n) {
  const double r = p.trace().real();
  return r > 0.5 && r < static_cast<double>(n) - 0.5;
}

bool witness_valid(const CMatrix& p, const std::vector<CMatrix>& elements, double eps) {
  const CMatrix comp = CMatrix::Identity(p.rows(), p.cols()) - p;
  for (const auto& e : elements)
    if ((comp * e * p).norm() > eps) return false;
  return true;
}

CMatrix binary_power(const CMatrix& u, long n) {
  CMatrix result = CMatrix::Identity(u.rows(), u.cols());
  CMatrix base = u;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

IrreducibilityReport irreducibility(const ClosedSemigroup& s, Tol tol) {
  const int n = s.dim;
  const double span_thr = std::max({1e-7, 10.0 * s.work_tol.eps, 10.0 * tol.eps});

  IrreducibilityReport report;
  SpanBasis span(span_thr);
  span.absorb(vectorize(CMatrix::Identity(n, n)));  // Burnside needs the unital span
  for (const auto& e : s.elements) {
    if (span.dimension() == n * n) break;
    span.absorb(vectorize(e));
  }
  report.algebra_dim = span.dimension();
  report.irreducible = report.algebra_dim == n * n;
  if (report.irreducible) return report;

  // Witness: a vector inside the invariant structure whose orbit stays proper.
  const double orbit_thr = span_thr;
  const double validate_eps = std::max({1e-6, 100.0 * s.work_tol.eps, 100.0 * tol.eps});
  std::vector<CVector> probes;

  // Commutant route (always conclusive for self-adjoint semigroups): a
  // non-scalar Hermitian element of the commutant has spectral subspaces
  // invariant under everything, and its eigenvectors seed proper orbits.
  {
    const std::vector<CMatrix>& gens = s.generators;
    CMatrix gram = CMatrix::Zero(n * n, n * n);
    for (const auto& g : gens) {
      // vec(GX - XG) = (I (x) G - G^T (x) I) vec(X), column-major vec
      CMatrix k = CMatrix::Zero(n * n, n * n);
      for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c)
          for (int a = 0; a < n; ++a) k(a + n * d, c + n * d) += g(a, c);
      for (int jp = 0; jp < n; ++jp)
        for (int j = 0; j < n; ++j)
          for (int i = 0; i < n; ++i) k(i + n * j, i + n * jp) -= g(jp, j);
      gram += k.adjoint() * k;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(gram));
    const double lam_max = es.eigenvalues().size() > 0
                               ? std::abs(es.eigenvalues()(es.eigenvalues().size() - 1))
                               : 0.0;
    const double null_thr = std::max(1e-18, 1e-14 * std::max(1.0, lam_max));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (es.eigenvalues()(i) > null_thr) break;
      const CMatrix x = Eigen::Map<const CMatrix>(es.eigenvectors().col(i).data(), n, n);
      for (const CMatrix& h : {hermitize(x), hermitize(Complex(0, 1) * x)}) {
        const Complex mean = h.trace() / static_cast<double>(n);
        if ((h - mean * CMatrix::Identity(n, n)).norm() <= 1e-8) continue;  // scalar
        Eigen::SelfAdjointEigenSolver<CMatrix> hs(h);
        for (Eigen::Index c = 0; c < n; ++c) probes.push_back(hs.eigenvectors().col(c));
      }
      if (!probes.empty()) break;
    }
  }
  // Deterministic fallback probes for semigroups with trivial commutant.
  for (int i = 0; i < n; ++i) probes.push_back(CVector::Unit(n, i));
  {
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& g : s.generators) sum += g;
    Eigen::ComplexEigenSolver<CMatrix> ces(sum);
    for (Eigen::Index c = 0; c < n; ++c) {
      const CVector v = ces.eigenvectors().col(c);
      if (v.norm() > 0.5) probes.push_back(v);
    }
  }

  for (const auto& v : probes) {
    const CMatrix p = orbit_projection(s.generators, v, orbit_thr);
    if (!is_nontrivial_projection(p, n)) continue;
    if (witness_valid(p, s.elements, validate_eps)) {
      report.witness_subspace = p;
      break;
    }
  }
  return report;
}

long approximate_identity_power(const CMatrix& u, double eps_target, long n_max) {
  require_square(u, "approximate_identity_power");
  if (eps_target <= 0.0) throw PreconditionError("approximate_identity_power: eps_target <= 0");
  if (n_max < 1) throw PreconditionError("approximate_identity_power: n_max < 1");
  const int n = static_cast<int>(u.rows());
  const CMatrix id = CMatrix::Identity(n, n);
  const double unitary_defect = (u.adjoint() * u - id).norm();
  if (unitary_defect > 1e-6)
    throw PreconditionError("approximate_identity_power: input is not unitary (defect " +
                            std::to_string(unitary_defect) + ")");

  const CMatrix snapped = polar_unitary(u);
  const double snap_dist = (u - snapped).norm();
  Eigen::ComplexEigenSolver<CMatrix> es(snapped);
  std::vector<double> thetas(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) thetas[static_cast<std::size_t>(i)] = std::arg(es.eigenvalues()(i));

  constexpr double two_pi = 6.283185307179586476925286766559;
  for (long m = 1; m <= n_max; ++m) {
    double sq = 0.0;
    for (double th : thetas) {
      const double phase = std::fmod(static_cast<double>(m) * th, two_pi);
      sq += 2.0 - 2.0 * std::cos(phase);
    }
    const double estimate = std::sqrt(std::max(0.0, sq));
    const double slack =
        0.25 * eps_target + static_cast<double>(m) * (snap_dist + 5e-15) + 1e-12;
    if (estimate <= eps_target + slack) {
      if ((binary_power(u, m) - id).norm() <= eps_target) return m;
    }
  }
  throw SearchExhaustedError("approximate_identity_power: no power within " +
                             std::to_string(n_max) + " reaches the target");
}

int minimal_nonzero_rank(const ClosedSemigroup& s, Tol tol) {
  if (s.elements.empty()) throw PreconditionError("minimal_nonzero_rank: empty semigroup");
  int best = 0;
  for (const auto& e : s.elements) {
    const int r = svd_rank(e, tol);
    if (r > 0 && (best == 0 || r < best)) best = r;
  }
  if (best == 0)
    throw DegenerateSemigroupError("minimal_nonzero_rank: all elements are zero");
  return best;
}

ZeroUnitaryStructure extract_zero_unitary(const ClosedSemigroup& s, Tol tol) {
  if (s.status != ClosureStatus::Closed)
    throw PreconditionError("extract_zero_unitary: budget-exhausted closure is inconclusive");
  const int n = s.dim;
  const Tol etol(std::max(tol.eps, s.work_tol.eps));
  const int r0 = minimal_nonzero_rank(s, etol);  // raises on the all-zero semigroup
  if (!all_partial_isometries(s, Tol(std::min(0.5, 10.0 * etol.eps))))
    throw PreconditionError("extract_zero_unitary: semigroup contains non-partial-isometries");
  {
    const IrreducibilityReport irr = irreducibility(s, tol);
    if (!irr.irreducible)
      throw PreconditionError("extract_zero_unitary: semigroup is reducible (algebra dim " +
                              std::to_string(irr.algebra_dim) + " < " + std::to_string(n * n) +
                              ")");
  }

  // Normal element of minimal rank: unitary on its initial space, which
  // equals its final space.
  std::optional<std::size_t> t_idx;
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    const CMatrix& e = s.elements[i];
    if ((e.adjoint() * e - e * e.adjoint()).norm() > 10.0 * etol.eps) continue;
    if (svd_rank(e, etol) != r0) continue;
    t_idx = i;
    break;
  }
  if (!t_idx)
    throw TheoremViolation(
        "extract_zero_unitary: no normal element of minimal rank; the closure cannot "
        "satisfy the block-monomial structure");
  const CMatrix& t = s.elements[*t_idx];
  const CMatrix p = clean_projection(t.adjoint() * t);
  const CMatrix b1 = orthonormal_range_basis(p, etol);
  if (b1.cols() != r0)
    throw TheoremViolation("extract_zero_unitary: initial projection rank mismatch");

  const CMatrix u0 = b1.adjoint() * t * b1;
  if (!is_unitary(u0, Tol(std::min(0.5, 100.0 * etol.eps))))
    throw TheoremViolation("extract_zero_unitary: minimal-rank restriction is not unitary");
  long order = 0;
  try {
    order = approximate_identity_power(u0, 1e-6, 100000);
  } catch (const SearchExhaustedError&) {
    // loose pass; polar snapping of the blocks cleans up the residue
    order = approximate_identity_power(u0, 1e-3, 100000);
  }
  if ((binary_power(t, order) - p).norm() > 0.1)
    throw TheoremViolation("extract_zero_unitary: identity power does not reproduce the "
                           "initial projection");
  if (!s.find(p, std::max(10.0 * etol.eps, 1e-2)))
    throw TheoremViolation("extract_zero_unitary: initial projection is missing from the "
                           "closed semigroup");

  // Block discovery: images of block 1 under all elements, in element order
  // (breadth-first by word length). Every nonzero image of block 1 is an
  // r0-dimensional subspace that either matches a discovered block or is
  // orthogonal to all of them.
  const double block_gate = 0.5;
  std::vector<CMatrix> bases{b1};
  const CMatrix id_r0 = CMatrix::Identity(r0, r0);
  for (const auto& x : s.elements) {
    const CMatrix m = x * b1;
    if (m.norm() <= block_gate) continue;
    if ((m.adjoint() * m - id_r0).norm() > std::max(1e-7, 100.0 * etol.eps))
      throw TheoremViolation(
          "extract_zero_unitary: an element moves block 1 non-isometrically");
    double best_overlap = 0.0;
    for (const auto& b : bases)
      best_overlap = std::max(best_overlap, (b.adjoint() * m).norm());
    const double full = std::sqrt(static_cast<double>(r0));
    if (best_overlap > 0.5 * full) {
      if (std::abs(best_overlap - full) > std::max(1e-6, 100.0 * etol.eps))
        throw TheoremViolation("extract_zero_unitary: image of block 1 straddles blocks");
      continue;
    }
    if (best_overlap > std::max(1e-6, 100.0 * etol.eps))
      throw TheoremViolation("extract_zero_unitary: image of block 1 straddles blocks");
    // orthonormalize via the polar factor, keeping the column space
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    bases.push_back(svd.matrixU() * svd.matrixV().adjoint());
  }
  const int k = static_cast<int>(bases.size());
  if (k * r0 != n)
    throw TheoremViolation("extract_zero_unitary: blocks cover " + std::to_string(k * r0) +
                           " of " + std::to_string(n) +
                           " dimensions; semigroup is not block-transitive");

  ZeroUnitaryStructure z;
  z.k = k;
  z.r0 = r0;
  z.basis = CMatrix(n, n);
  for (int i = 0; i < k; ++i)
    z.basis.middleCols(i * r0, r0) = bases[static_cast<std::size_t>(i)];

  // Unitary group on block 1: compressions P S P restricted to ran P.
  const double snap_tol = std::max(1e-7, 100.0 * etol.eps);
  for (const auto& x : s.elements) {
    const CMatrix c = b1.adjoint() * x * b1;
    if (c.norm() <= block_gate) {
      if (c.norm() > std::max(1e-6, 100.0 * etol.eps))
        throw TheoremViolation("extract_zero_unitary: P S P contains a non-unitary, "
                               "nonzero compression");
      continue;
    }
    const CMatrix snapped = polar_unitary(c);
    if ((c - snapped).norm() > snap_tol)
      throw TheoremViolation("extract_zero_unitary: block compression is not unitary");
    bool known = false;
    for (const auto& g : z.unitary_group)
      if ((g - snapped).norm() <= std::max(2.0 * etol.eps, 1e-9)) {
        known = true;
        break;
      }
    if (!known) z.unitary_group.push_back(snapped);
  }
  // group sanity: identity, adjoints, products
  {
    const double gtol = std::max(1e-6, 100.0 * etol.eps);
    auto in_group = [&](const CMatrix& g) {
      for (const auto& h : z.unitary_group)
        if ((g - h).norm() <= gtol) return true;
      return false;
    };
    if (!in_group(id_r0))
      throw TheoremViolation("extract_zero_unitary: block group lacks the identity");
    for (const auto& g : z.unitary_group) {
      if (!in_group(g.adjoint()))
        throw TheoremViolation("extract_zero_unitary: block group not closed under adjoints");
      for (const auto& h : z.unitary_group)
        if (!in_group(g * h))
          throw TheoremViolation("extract_zero_unitary: block group not closed under products");
    }
  }

  // Per-element partial permutation patterns with group labels.
  const double match_tol = std::max(1e-6, 100.0 * etol.eps);
  for (const auto& x : s.elements) {
    const CMatrix d = z.basis.adjoint() * x * z.basis;
    ZeroUnitaryStructure::ElementPattern pat;
    pat.perm = PartialPermutation(k);
    for (int j = 0; j < k; ++j) {
      int target = -1;
      for (int i = 0; i < k; ++i) {
        const double bn = d.block(i * r0, j * r0, r0, r0).norm();
        if (bn <= block_gate) {
          if (bn > match_tol)
            throw TheoremViolation("extract_zero_unitary: ambiguous block magnitude");
          continue;
        }
        if (target >= 0)
          throw TheoremViolation("extract_zero_unitary: two nonzero blocks in one column");
        target = i;
      }
      if (target < 0) continue;
      pat.perm.set(j, target);  // raises if the row is already taken
      const CMatrix block = polar_unitary(d.block(target * r0, j * r0, r0, r0));
      int label = -1;
      double best = match_tol;
      for (std::size_t gidx = 0; gidx < z.unitary_group.size(); ++gidx) {
        const double dist = (z.unitary_group[gidx] - block).norm();
        if (dist < best) {
          best = dist;
          label = static_cast<int>(gidx);
        }
      }
      if (label < 0)
        throw TheoremViolation("extract_zero_unitary: block outside the extracted group");
      pat.labels.push_back(label);
    }
    z.patterns.push_back(std::move(pat));
  }
  return z;
}

SandwichReport verify_sandwich(const ClosedSemigroup& s, const ZeroUnitaryStructure& z,
                               Tol tol) {
  SandwichReport report;
  const double etol = std::max(tol.eps, s.work_tol.eps);
  const double match_tol = std::max(1e-6, 100.0 * etol);
  const int k = z.k;
  const int r0 = z.r0;

  report.lower = true;
  for (int i = 0; i < k; ++i) {
    const CMatrix bi = z.basis.middleCols(i * r0, r0);
    for (int j = 0; j < k; ++j) {
      const CMatrix bj = z.basis.middleCols(j * r0, r0);
      for (std::size_t g = 0; g < z.unitary_group.size(); ++g) {
        const CMatrix candidate = bi * z.unitary_group[g] * bj.adjoint();
        if (!s.find(candidate, match_tol)) {
          report.lower = false;
          std::ostringstream os;
          os << "missing E_" << (i + 1) << (j + 1) << " (x) U[" << g << "]";
          report.diffs.push_back(os.str());
        }
      }
    }
  }

  report.upper = true;
  const double block_gate = 0.5;
  for (std::size_t idx = 0; idx < s.elements.size(); ++idx) {
    const CMatrix d = z.basis.adjoint() * s.elements[idx] * z.basis;
    std::vector<int> row_used(static_cast<std::size_t>(k), 0);
    bool elem_ok = true;
    for (int j = 0; j < k && elem_ok; ++j) {
      int nonzero = 0;
      for (int i = 0; i < k; ++i) {
        const CMatrix block = d.block(i * r0, j * r0, r0, r0);
        const double bn = block.norm();
        if (bn <= match_tol) continue;
        if (bn <= block_gate) {
          elem_ok = false;  // neither zero nor unitary-sized
          break;
        }
        ++nonzero;
        ++row_used[static_cast<std::size_t>(i)];
        if (nonzero > 1 || row_used[static_cast<std::size_t>(i)] > 1) {
          elem_ok = false;
          break;
        }
        const CMatrix snapped = polar_unitary(block);
        if ((block - snapped).norm() > std::max(1e-7, 100.0 * etol)) {
          elem_ok = false;
          break;
        }
        bool in_group = false;
        for (const auto& g : z.unitary_group)
          if ((g - snapped).norm() <= match_tol) {
            in_group = true;
            break;
          }
        if (!in_group) elem_ok = false;
      }
    }
    if (!elem_ok) {
      report.upper = false;
      report.diffs.push_back("element " + std::to_string(idx) +
                             " is not block-monomial over the group");
    }
  }
  return report;
}

AtomicRepresentation atomic_representation(const ClosedSemigroup& s1, const ProjectionBand& band,
                                           Tol tol) {
  const int n = s1.dim;
  const double etol = std::max(tol.eps, s1.work_tol.eps);
  if (band.dim != n) throw DimensionError("atomic_representation: band dimension mismatch");
  for (std::size_t a = 0; a < band.atoms.size(); ++a)
    if (!s1.find(band.atoms[a], std::max(10.0 * etol, 1e-7)))
      throw PreconditionError("atomic_representation: atom " + std::to_string(a) +
                              " is not in the semigroup; enrich first");
  {
    const IrreducibilityReport irr = irreducibility(s1, tol);
    if (!irr.irreducible)
      throw PreconditionError("atomic_representation: semigroup is reducible");
  }
  if (!all_partial_isometries(s1, Tol(std::min(0.5, 10.0 * etol))))
    throw PreconditionError("atomic_representation: semigroup contains non-partial-isometries");

  const int k = static_cast<int>(band.atom_count());
  if (k == 0) throw PreconditionError("atomic_representation: empty band");
  const int d = band.atom_ranks.front();
  for (int r : band.atom_ranks)
    if (r != d)
      throw TheoremViolation(
          "atomic_representation: atoms of unequal rank in an irreducible semigroup");
  if (k * d != n) throw TheoremViolation("atomic_representation: atoms do not resolve identity");

  AtomicRepresentation rep;
  rep.band = band;
  rep.block_dim = d;
  rep.basis = CMatrix(n, n);
  std::vector<CMatrix> atom_bases;
  for (int a = 0; a < k; ++a) {
    const CMatrix b = orthonormal_range_basis(band.atoms[static_cast<std::size_t>(a)], Tol(etol));
    if (b.cols() != d)
      throw TheoremViolation("atomic_representation: atom rank changed under orthonormalization");
    rep.basis.middleCols(a * d, d) = b;
    atom_bases.push_back(b);
  }

  const double block_gate = 0.5;
  const double snap_tol = std::max(1e-7, 100.0 * etol);
  for (const auto& x : s1.elements) {
    const CMatrix dd = rep.basis.adjoint() * x * rep.basis;
    AtomicRepresentation::ElementAction action;
    action.perm = PartialPermutation(k);
    for (int j = 0; j < k; ++j) {
      int target = -1;
      for (int i = 0; i < k; ++i) {
        const double bn = dd.block(i * d, j * d, d, d).norm();
        if (bn <= block_gate) {
          if (bn > std::max(1e-6, 100.0 * etol))
            throw TheoremViolation("atomic_representation: ambiguous atom-block magnitude");
          continue;
        }
        if (target >= 0)
          throw TheoremViolation("atomic_representation: element maps one atom to two atoms");
        target = i;
      }
      if (target < 0) continue;
      action.perm.set(j, target);
      const CMatrix block = dd.block(target * d, j * d, d, d);
      const CMatrix snapped = polar_unitary(block);
      if ((block - snapped).norm() > snap_tol)
        throw TheoremViolation("atomic_representation: fiber map is not unitary");
      action.fiber_unitaries.push_back(snapped);
      action.weights.push_back(1.0);
    }
    // reconstruction sanity at k*tol scale
    CMatrix rebuilt = CMatrix::Zero(n, n);
    std::size_t slot = 0;
    for (int j = 0; j < k; ++j) {
      if (!action.perm.defined(j)) continue;
      const int i = action.perm[j];
      rebuilt += atom_bases[static_cast<std::size_t>(i)] * action.fiber_unitaries[slot] *
                 atom_bases[static_cast<std::size_t>(j)].adjoint();
      ++slot;
    }
    if ((rebuilt - x).norm() > static_cast<double>(k) * std::max(1e-7, 10.0 * etol))
      throw TheoremViolation("atomic_representation: reconstruction drifted beyond k*tol");
    rep.per_element.push_back(std::move(action));
  }
  return rep;
}

std::vector<std::pair<CMatrix, ClosedSemigroup>> reducible_split(const ClosedSemigroup& s,
                                                                 const ProjectionBand& band,
                                                                 Tol tol) {
  const double etol = std::max(tol.eps, s.work_tol.eps);
  for (std::size_t a = 0; a < band.atoms.size(); ++a)
    if (!s.find(band.atoms[a], std::max(10.0 * etol, 1e-7)))
      throw PreconditionError("reducible_split: atom " + std::to_string(a) +
                              " is not in the semigroup; enrich first");

  std::map<int, std::vector<std::size_t>> by_rank;
  for (std::size_t a = 0; a < band.atoms.size(); ++a)
    by_rank[band.atom_ranks[a]].push_back(a);

  std::vector<std::pair<CMatrix, ClosedSemigroup>> out;
  for (const auto& [rank, atom_indices] : by_rank) {
    CMatrix q = CMatrix::Zero(s.dim, s.dim);
    for (std::size_t a : atom_indices) q += band.atoms[a];
    q = hermitize(q);
    for (std::size_t idx = 0; idx < s.elements.size(); ++idx) {
      const double defect = (q * s.elements[idx] - s.elements[idx] * q).norm();
      if (defect > std::max(1e-6, 100.0 * etol))
        throw TheoremViolation("reducible_split: rank-" + std::to_string(rank) +
                               " class projection fails to commute with element " +
                               std::to_string(idx) + " (defect " + std::to_string(defect) + ")");
    }
    const CMatrix w = orthonormal_range_basis(q, Tol(etol));
    std::vector<CMatrix> compressed;
    for (const auto& g : s.generators) compressed.push_back(w.adjoint() * g * w);
    out.emplace_back(q, close(compressed, tol, s.budget));
  }
  return out;
}

AtomicityReport check_finitely_generated_atomicity(const std::vector<CMatrix>& generators,
                                                   Tol tol, ClosureBudget budget) {
  if (generators.empty())
    throw PreconditionError("check_finitely_generated_atomicity: no generators");
  const int n = static_cast<int>(generators.front().rows());
  for (const auto& g : generators) {
    require_square(g, "check_finitely_generated_atomicity");
    if (g.rows() != n) throw DimensionError("check_finitely_generated_atomicity: mixed dims");
  }

  AtomicityReport report;
  std::ostringstream detail;
  const Tol ctol(std::min(0.5, 10.0 * tol.eps));

  report.generators_are_pi = true;
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (!is_partial_isometry(generators[i], ctol)) {
      report.generators_are_pi = false;
      detail << "generator " << i << " is not a partial isometry; ";
    }
  if (!report.generators_are_pi) {
    report.detail = detail.str();
    return report;
  }

  std::vector<CMatrix> ranges, coranges;
  for (const auto& g : generators) {
    ranges.push_back(range_projection(g, tol));
    coranges.push_back(range_projection(CMatrix(g.adjoint()), tol));
  }
  report.ranges_equal = true;
  report.kernels_equal = true;
  report.generators_commute = true;
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!matrices_equal(ranges[i], ranges[j], ctol)) {
        report.ranges_equal = false;
        detail << "ran T" << j << " != ran T" << i << "; ";
      }
      if (!matrices_equal(coranges[i], coranges[j], ctol)) {
        report.kernels_equal = false;
        detail << "ker T" << j << " != ker T" << i << "; ";
      }
      if ((generators[i] * generators[j] - generators[j] * generators[i]).norm() > ctol.eps) {
        report.generators_commute = false;
        detail << "T" << j << " and T" << i << " do not commute; ";
      }
    }
  if (!report.hypotheses_hold()) {
    report.detail = detail.str();
    return report;
  }

  // power range/kernel lattices coincide up to the ambient dimension
  report.power_lattices_equal = true;
  {
    std::vector<CMatrix> powers(generators.begin(), generators.end());
    for (int k = 2; k <= n && report.power_lattices_equal; ++k) {
      for (std::size_t i = 0; i < powers.size(); ++i) powers[i] = powers[i] * generators[i];
      const CMatrix r0 = range_projection(powers[0], tol);
      const CMatrix c0 = range_projection(CMatrix(powers[0].adjoint()), tol);
      for (std::size_t i = 1; i < powers.size(); ++i) {
        if (!matrices_equal(range_projection(powers[i], tol), r0, ctol) ||
            !matrices_equal(range_projection(CMatrix(powers[i].adjoint()), tol), c0, ctol)) {
          report.power_lattices_equal = false;
          detail << "power-" << k << " lattices differ; ";
          break;
        }
      }
    }
  }

  // band atoms of the singly generated semigroups coincide
  report.conclusive = true;
  report.atoms_agree = true;
  std::vector<ProjectionBand> bands;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    ClosedSemigroup si = close_selfadjoint({generators[i]}, tol, budget);
    if (si.status != ClosureStatus::Closed) {
      report.conclusive = false;
      detail << "closure of generator " << i << " exhausted its budget; ";
      break;
    }
    const Tol wtol(std::max(tol.eps, si.work_tol.eps));
    bands.push_back(enveloping_band(projections_of(si, wtol), n, wtol));
  }
  if (report.conclusive) {
    for (std::size_t i = 1; i < bands.size() && report.atoms_agree; ++i) {
      if (bands[i].atom_count() != bands[0].atom_count()) {
        report.atoms_agree = false;
        detail << "atom counts differ between generators 0 and " << i << "; ";
        break;
      }
      for (const auto& atom : bands[i].atoms) {
        bool matched = false;
        for (const auto& ref : bands[0].atoms)
          if (matrices_equal(atom, ref, Tol(std::min(0.5, 100.0 * tol.eps)))) {
            matched = true;
            break;
          }
        if (!matched) {
          report.atoms_agree = false;
          detail << "atoms differ between generators 0 and " << i << "; ";
          break;
        }
      }
    }
  } else {
    report.atoms_agree = false;
  }
  report.detail = detail.str();
  return report;
}

bool check_prime_size(const ClosedSemigroup& s, Tol tol) {
  const double etol = std::max(tol.eps, s.work_tol.eps);
  std::vector<std::string> failures;
  if (!is_prime(s.dim)) failures.push_back("dimension " + std::to_string(s.dim) + " is not prime");
  if (s.status != ClosureStatus::Closed) failures.push_back("closure incomplete");
  if (!all_partial_isometries(s, Tol(std::min(0.5, 10.0 * etol))))
    failures.push_back("contains non-partial-isometries");
  try {
    const int r = minimal_nonzero_rank(s, Tol(etol));
    if (r == 1) failures.push_back("contains rank-one members");
  } catch (const DegenerateSemigroupError&) {
    failures.push_back("all elements are zero");
  }
  if (failures.size() <= 3) {  // irreducibility is the costly test; skip if already doomed
    const IrreducibilityReport irr = irreducibility(s, tol);
    if (!irr.irreducible) failures.push_back("reducible");
  }
  if (!failures.empty()) {
    std::string msg = "check_prime_size preconditions failed:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw PreconditionError(msg);
  }

  const CMatrix id = CMatrix::Identity(s.dim, s.dim);
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    if (!is_unitary(s.elements[i], Tol(std::min(0.5, 10.0 * etol))))
      throw TheoremViolation("check_prime_size: element " + std::to_string(i) +
                             " is not unitary; contradiction with the prime-size law");
  if (!s.contains(id, 10.0 * etol))
    throw TheoremViolation("check_prime_size: identity missing; contradiction");
  for (std::size_t i = 0; i < s.elements.size(); ++i)
    if (!s.find(s.elements[i].adjoint(), 10.0 * etol))
      throw TheoremViolation("check_prime_size: adjoint of element " + std::to_string(i) +
                             " missing; contradiction");
  return true;
}

bool check_automatic_selfadjoint(const ClosedSemigroup& s, Tol tol, ClosureBudget budget) {
  if (s.status != ClosureStatus::Closed)
    throw PreconditionError("check_automatic_selfadjoint: input closure incomplete");
  const Tol etol(std::max(tol.eps, s.work_tol.eps));
  if (!all_partial_isometries(s, Tol(std::min(0.5, 10.0 * etol.eps))))
    throw PreconditionError("check_automatic_selfadjoint: input contains "
                            "non-partial-isometries");
  ClosedSemigroup sa = close_selfadjoint(s.generators, tol, budget);
  const Tol wtol(std::max(tol.eps, sa.work_tol.eps));
  for (const auto& e : sa.elements)
    if (!is_partial_isometry(e, wtol)) return false;  // conclusive
  if (sa.status == ClosureStatus::Closed) return true;
  throw BudgetExhausted("check_automatic_selfadjoint: budget exhausted with no counterexample",
                        std::move(sa));
}

bool masa_criterion(const ProjectionBand& band) {
  if (band.atoms.empty()) return false;
  for (int r : band.atom_ranks)
    if (r != 1) return false;
  return true;
}

}  // namespace pisem
