#ifndef CXG_GRAMMAR_IO_H_
#define CXG_GRAMMAR_IO_H_

#include <string>
#include <string_view>

#include "cxg/grammar.h"
#include "json.hpp"

namespace cxg {

inline constexpr int kGrammarVersion = 1;

// Versioned JSON document:
//   {"version": 1, "fe": [...], "argst": [...], "roleset": [...],
//    "links": [...]}
// Category ids are written as integers. Store and link order is preserved,
// so serialize(load(serialize(net))) == serialize(net).
nlohmann::ordered_json GrammarToJson(const ConstructionNetwork &net);

// Rebuilds all indexes and verifies every invariant. Throws VersionMismatch
// or CorruptFile.
ConstructionNetwork GrammarFromJson(const nlohmann::json &document);

std::string SerializeGrammar(const ConstructionNetwork &net);
ConstructionNetwork ParseGrammar(std::string_view text);

void SaveGrammar(const ConstructionNetwork &net, const std::string &path);
ConstructionNetwork LoadGrammar(const std::string &path);

// Writes to a temporary file in the same directory and renames it over
// `path`. Throws IoError.
void WriteFileAtomic(const std::string &path, std::string_view content);
std::string ReadFile(const std::string &path);

}  // namespace cxg

#endif  // CXG_GRAMMAR_IO_H_
