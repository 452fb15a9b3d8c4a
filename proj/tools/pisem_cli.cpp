// Command-line front end: load a generator file, run the requested checks,
// emit a report. Exit codes: 0 all pass, 1 some check failed, 2 inconclusive
// (budget), 3 input error, 4 theorem violation (a reproduction bundle is
// written next to the working directory).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "pisem/pipeline.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pisem: analyze finite semigroups of partial isometries"};
  std::string input_path;
  std::string checks_csv = "all";
  std::string format = "json";
  double tol = -1.0;
  long max_elements = -1;
  long max_words = -1;
  std::uint64_t seed = 0;

  app.add_option("input", input_path, "generator file (JSON)")->required();
  app.add_option("--checks", checks_csv, "comma-separated check names, or 'all'");
  app.add_option("--tol", tol, "Frobenius-norm tolerance in (0, 1)");
  app.add_option("--max-elements", max_elements, "closure element budget");
  app.add_option("--max-words", max_words, "closure word-length budget");
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "seed for randomized cross-checks");
  CLI11_PARSE(app, argc, argv);

  try {
    pisem::GeneratorFile file = pisem::load_generator_file(input_path);

    pisem::PipelineSettings settings;
    settings.seed = seed;
    if (tol >= 0.0) {
      if (!(tol > 0.0 && tol < 1.0)) throw pisem::InputError("--tol must lie in (0, 1)");
      settings.tol_override = tol;
    }
    if (max_elements >= 0) {
      if (max_elements < 1) throw pisem::InputError("--max-elements must be >= 1");
      settings.max_elements_override = static_cast<std::size_t>(max_elements);
    }
    if (max_words >= 0) {
      if (max_words < 1) throw pisem::InputError("--max-words must be >= 1");
      settings.max_words_override = static_cast<std::size_t>(max_words);
    }
    if (checks_csv == "all") {
      for (const auto& name : pisem::all_check_names()) settings.checks.insert(name);
    } else if (!checks_csv.empty()) {
      std::stringstream ss(checks_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) settings.checks.insert(item);
      }
    }

    const pisem::AnalysisReport report = pisem::run_pipeline(file, settings);
    std::cout << (format == "json" ? pisem::emit_json(report) : pisem::emit_text(report));

    if (report.exit_code == 4) {
      // preserve everything needed to reproduce the violation
      nlohmann::ordered_json bundle;
      bundle["input_path"] = input_path;
      bundle["input_text"] = read_file(input_path);
      bundle["checks"] = checks_csv;
      bundle["tol"] = report.tol;
      bundle["max_elements"] = report.budget.max_elements;
      bundle["max_word_length"] = report.budget.max_word_length;
      bundle["seed"] = seed;
      bundle["report"] = nlohmann::ordered_json::parse(pisem::emit_json(report));
      const std::string bundle_path = "pisem-violation-" + file.digest + ".json";
      std::ofstream out(bundle_path, std::ios::binary);
      out << bundle.dump(2) << "\n";
      std::cerr << "theorem violation: reproduction bundle written to " << bundle_path << "\n";
    }
    return report.exit_code;
  } catch (const pisem::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const pisem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
