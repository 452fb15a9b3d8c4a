#pragma once

#include <string>
#include <vector>

#include "pisem/closure.hpp"
#include "pisem/types.hpp"

namespace pisem {

/// Parsed generator file. Matrices come in as dim x dim arrays of [re, im]
/// pairs; the shorthand {"E": [i, j]} (1-based) expands to a basic matrix and
/// {"tensor": {"blocks": r, "block_size": s, "unitary_generators": [...]}}
/// expands to the block-monomial generator family.
struct GeneratorFile {
  std::string name;
  int dim = 0;
  Tol tol{1e-9};
  ClosureBudget budget;
  std::vector<CMatrix> generators;
  std::string digest;  // fnv1a-64 over the raw bytes
};

GeneratorFile load_generator_file(const std::string& path);
GeneratorFile parse_generator_text(const std::string& text, const std::string& name_hint);

std::string fnv1a_digest(const std::string& bytes);

}  // namespace pisem
