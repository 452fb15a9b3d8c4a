#include "pisem/closure.hpp"

#include <algorithm>
#include <cmath>

namespace pisem {

namespace {

// Deterministic probe matrix for dedup fingerprints, depending only on the
// dimension. Entries come from a fixed 64-bit LCG; normalized to unit
// Frobenius norm so that |<A - B, probe>| <= ||A - B||_F.
CMatrix make_probe(int dim) {
  std::uint64_t state = 0x9e3779b97f4a7c15ull ^ (0x100000001b3ull * static_cast<std::uint64_t>(dim));
  auto next = [&state]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<double>(state >> 11) / static_cast<double>(1ull << 53) - 0.5;
  };
  CMatrix p(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) p(i, j) = Complex(next(), next());
  p /= p.norm();
  return p;
}

Complex probe_inner(const CMatrix& probe, const CMatrix& a) {
  return (probe.adjoint() * a).trace();
}

}  // namespace

void ClosedSemigroup::rebuild_index() {
  if (probe_.rows() != dim) probe_ = make_probe(dim);
  index_.clear();
  norms_.clear();
  probe_im_.clear();
  index_.reserve(elements.size());
  norms_.reserve(elements.size());
  probe_im_.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Complex ip = probe_inner(probe_, elements[i]);
    index_.emplace_back(ip.real(), i);
    norms_.push_back(elements[i].norm());
    probe_im_.push_back(ip.imag());
  }
  std::sort(index_.begin(), index_.end());
}

std::optional<std::size_t> ClosedSemigroup::find(const CMatrix& a, double eps) const {
  if (eps < 0.0) eps = work_tol.eps;
  if (index_.size() != elements.size())
    throw Error("ClosedSemigroup::find: index out of date; call rebuild_index()");
  const Complex ip = probe_inner(probe_, a);
  const double nrm = a.norm();
  auto lo = std::lower_bound(index_.begin(), index_.end(),
                             std::make_pair(ip.real() - eps, std::size_t{0}));
  double best_dist = eps;
  std::optional<std::size_t> best;
  for (auto it = lo; it != index_.end() && it->first <= ip.real() + eps; ++it) {
    const std::size_t idx = it->second;
    if (std::abs(norms_[idx] - nrm) > eps) continue;
    if (std::abs(probe_im_[idx] - ip.imag()) > eps) continue;
    const double d = (elements[idx] - a).norm();
    if (d < best_dist || (d == best_dist && (!best || idx < *best))) {
      if (d <= eps) {
        best_dist = d;
        best = idx;
      }
    }
  }
  return best;
}

bool ClosedSemigroup::contains_identity() const {
  return contains(CMatrix::Identity(dim, dim));
}

bool ClosedSemigroup::contains_zero() const { return contains(CMatrix::Zero(dim, dim)); }

bool ClosedSemigroup::is_self_adjoint() const {
  for (const auto& e : elements)
    if (!contains(e.adjoint())) return false;
  return true;
}

ClosedSemigroup close(const std::vector<CMatrix>& generators, Tol tol, ClosureBudget budget) {
  if (generators.empty()) throw PreconditionError("close: empty generator set");
  if (budget.max_elements < 1 || budget.max_word_length < 1)
    throw PreconditionError("close: budget bounds must be >= 1");
  const int dim = static_cast<int>(generators.front().rows());
  for (const auto& g : generators) {
    require_square(g, "close");
    require_finite(g, "close");
    if (g.rows() != dim) throw DimensionError("close: generators of unequal dimension");
  }
  const double work_eps = tol.eps * (1.0 + static_cast<double>(budget.max_word_length));
  if (!(work_eps < 1.0))
    throw PreconditionError("close: tol * (1 + max_word_length) must stay below 1");

  ClosedSemigroup s;
  s.dim = dim;
  s.generators = generators;
  s.work_tol = Tol(work_eps);
  s.budget = budget;
  s.probe_ = make_probe(dim);
  s.rebuild_index();

  auto insert_new = [&s](const CMatrix& m, std::vector<int> word) {
    s.elements.push_back(m);
    s.words.push_back(std::move(word));
    const Complex ip = (s.probe_.adjoint() * m).trace();
    auto pos = std::upper_bound(s.index_.begin(), s.index_.end(),
                                std::make_pair(ip.real(), s.elements.size() - 1));
    s.index_.insert(pos, {ip.real(), s.elements.size() - 1});
    s.norms_.push_back(m.norm());
    s.probe_im_.push_back(ip.imag());
  };

  // distinct generator indices in first-occurrence order; duplicates would
  // only re-derive the same products
  std::vector<int> gen_order;

  bool truncated = false;
  std::size_t level_begin = 0;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (s.find(generators[g])) continue;
    gen_order.push_back(static_cast<int>(g));
    if (s.elements.size() >= budget.max_elements) {
      truncated = true;
      break;
    }
    insert_new(generators[g], {static_cast<int>(g)});
  }
  std::size_t level_end = s.elements.size();
  std::size_t length = 1;
  s.max_word_length_reached = level_end > 0 ? 1 : 0;
  s.completed_word_length = truncated ? 0 : 1;

  while (!truncated && level_begin < level_end && length < budget.max_word_length) {
    ++length;
    for (std::size_t i = level_begin; i < level_end && !truncated; ++i) {
      for (int g : gen_order) {
        const CMatrix cand = s.elements[i] * generators[static_cast<std::size_t>(g)];
        if (s.find(cand)) continue;
        if (s.elements.size() >= budget.max_elements) {
          truncated = true;
          break;
        }
        std::vector<int> word = s.words[i];
        word.push_back(g);
        insert_new(cand, std::move(word));
      }
    }
    if (truncated) break;
    s.completed_word_length = length;
    level_begin = level_end;
    level_end = s.elements.size();
    if (level_end > level_begin) s.max_word_length_reached = length;
  }

  const bool frontier_empty = level_begin == level_end;
  s.status = (!truncated && frontier_empty) ? ClosureStatus::Closed
                                            : ClosureStatus::BudgetExhausted;
  if (s.status == ClosureStatus::Closed)
    s.completed_word_length = budget.max_word_length;
  return s;
}

ClosedSemigroup close_selfadjoint(const std::vector<CMatrix>& generators, Tol tol,
                                  ClosureBudget budget) {
  std::vector<CMatrix> gens = generators;
  const double eps = tol.eps * (1.0 + static_cast<double>(budget.max_word_length));
  for (const auto& g : generators) {
    const CMatrix adj = g.adjoint();
    bool present = false;
    for (const auto& h : gens)
      if (h.rows() == adj.rows() && h.cols() == adj.cols() && (h - adj).norm() <= eps) {
        present = true;
        break;
      }
    if (!present) gens.push_back(adj);
  }
  return close(gens, tol, budget);
}

bool all_partial_isometries(const ClosedSemigroup& s, Tol tol) {
  for (const auto& e : s.elements)
    if (!is_partial_isometry(e, tol)) return false;
  return true;
}

std::vector<CMatrix> projections_of(const ClosedSemigroup& s, Tol tol) {
  std::vector<CMatrix> out;
  for (const auto& e : s.elements)
    if (is_projection(e, tol)) out.push_back(clean_projection(e));
  return out;
}

}  // namespace pisem
