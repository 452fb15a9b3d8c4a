#include "pisem/input.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pisem/families.hpp"
#include "pisem/linalg.hpp"

namespace pisem {

using nlohmann::json;

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

namespace {

CMatrix parse_matrix(const json& node, int dim, const std::string& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != dim)
    throw InputError(where + ": expected " + std::to_string(dim) + " rows");
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = node[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw InputError(where + ": row " + std::to_string(i + 1) + " must have " +
                       std::to_string(dim) + " entries");
    for (int j = 0; j < dim; ++j) {
      const json& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw InputError(where + ": entry (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") must be an [re, im] pair");
      m(i, j) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  if (!is_finite(m)) throw InputError(where + ": non-finite entry");
  return m;
}

void expand_generator(const json& node, int dim, std::size_t index,
                      std::vector<CMatrix>& out) {
  const std::string where = "generators[" + std::to_string(index + 1) + "]";
  if (node.is_array()) {
    out.push_back(parse_matrix(node, dim, where));
    return;
  }
  if (!node.is_object()) throw InputError(where + ": expected a matrix or a shorthand object");

  if (node.contains("E")) {
    const json& idx = node["E"];
    if (!idx.is_array() || idx.size() != 2 || !idx[0].is_number_integer() ||
        !idx[1].is_number_integer())
      throw InputError(where + ": \"E\" takes a pair of 1-based indices");
    const int i = idx[0].get<int>();
    const int j = idx[1].get<int>();
    if (i < 1 || j < 1 || i > dim || j > dim)
      throw InputError(where + ": E indices out of range 1.." + std::to_string(dim));
    out.push_back(basic_matrix(dim, i - 1, j - 1));
    return;
  }

  if (node.contains("tensor")) {
    const json& t = node["tensor"];
    if (!t.is_object() || !t.contains("blocks") || !t["blocks"].is_number_integer())
      throw InputError(where + ": \"tensor\" requires an integer \"blocks\"");
    const int blocks = t["blocks"].get<int>();
    if (blocks < 1) throw InputError(where + ": tensor blocks must be >= 1");
    int block_size = 0;
    std::vector<CMatrix> ugens;
    if (t.contains("unitary_generators")) {
      const json& list = t["unitary_generators"];
      if (!list.is_array()) throw InputError(where + ": unitary_generators must be an array");
      for (std::size_t g = 0; g < list.size(); ++g) {
        const json& entry = list[g];
        if (!entry.is_array() || entry.empty())
          throw InputError(where + ": unitary generator " + std::to_string(g + 1) +
                           " must be a matrix");
        const int s = static_cast<int>(entry.size());
        if (block_size == 0) block_size = s;
        ugens.push_back(parse_matrix(entry, s, where + ".unitary_generators[" +
                                                   std::to_string(g + 1) + "]"));
        if (s != block_size)
          throw InputError(where + ": unitary generators of mixed sizes");
      }
    }
    if (t.contains("block_size")) {
      if (!t["block_size"].is_number_integer() || t["block_size"].get<int>() < 1)
        throw InputError(where + ": block_size must be a positive integer");
      const int s = t["block_size"].get<int>();
      if (block_size != 0 && s != block_size)
        throw InputError(where + ": block_size contradicts the unitary generators");
      block_size = s;
    }
    if (block_size == 0) block_size = 1;
    if (blocks * block_size != dim)
      throw InputError(where + ": tensor blocks * block_size = " +
                       std::to_string(blocks * block_size) + " does not match dim " +
                       std::to_string(dim));
    for (const auto& u : ugens)
      if (!is_unitary(u, Tol(1e-6)))
        throw InputError(where + ": tensor unitary generator is not unitary");
    for (auto& g : tensor_semigroup_generators(blocks, block_size, ugens))
      out.push_back(std::move(g));
    return;
  }

  throw InputError(where + ": unknown shorthand (expected \"E\" or \"tensor\")");
}

}  // namespace

GeneratorFile parse_generator_text(const std::string& text, const std::string& name_hint) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object()) throw InputError("top level must be a JSON object");
  if (!root.contains("dim") || !root["dim"].is_number_integer())
    throw InputError("missing integer field \"dim\"");

  GeneratorFile file;
  file.digest = fnv1a_digest(text);
  file.dim = root["dim"].get<int>();
  if (file.dim < 1 || file.dim > 64) throw InputError("dim must lie in 1..64");
  file.name = root.value("name", name_hint);

  if (root.contains("tol")) {
    if (!root["tol"].is_number()) throw InputError("tol must be a number");
    const double eps = root["tol"].get<double>();
    if (!(eps > 0.0 && eps < 1.0)) throw InputError("tol must lie in (0, 1)");
    file.tol = Tol(eps);
  }
  if (root.contains("budget")) {
    const json& b = root["budget"];
    if (!b.is_object()) throw InputError("budget must be an object");
    if (b.contains("max_elements")) {
      if (!b["max_elements"].is_number_integer() || b["max_elements"].get<long>() < 1)
        throw InputError("budget.max_elements must be a positive integer");
      file.budget.max_elements = b["max_elements"].get<std::size_t>();
    }
    if (b.contains("max_word_length")) {
      if (!b["max_word_length"].is_number_integer() || b["max_word_length"].get<long>() < 1)
        throw InputError("budget.max_word_length must be a positive integer");
      file.budget.max_word_length = b["max_word_length"].get<std::size_t>();
    }
  }

  if (!root.contains("generators") || !root["generators"].is_array() ||
      root["generators"].empty())
    throw InputError("missing non-empty \"generators\" array");
  for (std::size_t i = 0; i < root["generators"].size(); ++i)
    expand_generator(root["generators"][i], file.dim, i, file.generators);
  return file;
}

GeneratorFile load_generator_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string name_hint = path;
  const auto slash = name_hint.find_last_of('/');
  if (slash != std::string::npos) name_hint = name_hint.substr(slash + 1);
  return parse_generator_text(buffer.str(), name_hint);
}

}  // namespace pisem
