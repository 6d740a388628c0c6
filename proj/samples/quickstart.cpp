// Minimal library walk-through: load a PAN-format corpus, split it 70/30,
// train the English final system and print the held-out report.
//
//   quickstart <corpus-dir>

#include <iostream>

#include "spreader/spreader.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: quickstart <corpus-dir>\n";
    return 1;
  }
  try {
    const auto corpus = spreader::load_corpus(argv[1], spreader::Language::kEn);
    const auto [train, test] = spreader::split_corpus(corpus, spreader::SplitSpec{});
    const auto config = spreader::final_system(spreader::Language::kEn);
    const auto fitted = spreader::fit_pipeline(train, config);
    const auto report = spreader::evaluate_model(fitted.model, test);
    std::cout << spreader::format_eval_report(report, "SVM", config.describe(),
                                              spreader::Language::kEn);
  } catch (const spreader::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
