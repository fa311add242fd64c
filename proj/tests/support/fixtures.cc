#include "support/fixtures.h"

#include <sstream>

#include "json.hpp"

namespace cxg::testing {

std::string DataPath(const std::string &name) {
  return std::string(CXG_TEST_DATA_DIR) + "/" + name;
}

namespace {

Utterance Single(const std::string &file) {
  std::vector<Utterance> corpus = ReadCorpus(DataPath(file));
  return std::move(corpus.at(0));
}

}  // namespace

Utterance TrainingExample() { return Single("training_example.jsonl"); }
Utterance TargetExample() { return Single("target_example.jsonl"); }
Utterance TargetGold() { return Single("target_example_gold.jsonl"); }

Utterance MakeUtterance(const std::string &id, const std::string &bracketed) {
  // Collect "(label word)" leaves in order.
  nlohmann::json tokens = nlohmann::json::array();
  std::string label, word;
  for (size_t i = 0; i < bracketed.size(); ++i) {
    if (bracketed[i] != '(') continue;
    size_t label_end = bracketed.find_first_of(" ()", i + 1);
    if (label_end == std::string::npos || bracketed[label_end] != ' ') continue;
    size_t word_begin = label_end + 1;
    if (bracketed[word_begin] == '(') continue;
    size_t word_end = bracketed.find(')', word_begin);
    label = bracketed.substr(i + 1, label_end - i - 1);
    word = bracketed.substr(word_begin, word_end - word_begin);
    tokens.push_back(
        {{"form", word}, {"lemma", ToLower(word)}, {"pos", label}});
  }
  nlohmann::json record = {{"id", id},
                           {"tokens", tokens},
                           {"tree", {{"ptb", bracketed}}},
                           {"frames", nlohmann::json::array()}};
  return ParseUtterance(record);
}

}  // namespace cxg::testing
