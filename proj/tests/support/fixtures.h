#ifndef CXG_TESTS_SUPPORT_FIXTURES_H_
#define CXG_TESTS_SUPPORT_FIXTURES_H_

#include <string>
#include <vector>

#include "cxg/corpus.h"

namespace cxg::testing {

// Absolute path of a file under tests/data.
std::string DataPath(const std::string &name);

// The annotated "Old Li Jingtang still tells visitors old war stories."
Utterance TrainingExample();
// "First, Moses told the people every command in the law." without frames.
Utterance TargetExample();
// The same utterance with its tell.01 annotation.
Utterance TargetGold();

// Utterance from a bracketed tree whose leaves carry "form" as word; every
// token gets lemma = lowercased form and pos = its leaf label.
Utterance MakeUtterance(const std::string &id, const std::string &bracketed);

}  // namespace cxg::testing

#endif  // CXG_TESTS_SUPPORT_FIXTURES_H_
