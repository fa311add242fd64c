#ifndef CXG_EVALUATOR_H_
#define CXG_EVALUATOR_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxg/corpus.h"
#include "json.hpp"

namespace cxg {

enum class ScoreLevel { kRoleset, kFrame };

std::string_view ScoreLevelName(ScoreLevel level);
std::optional<ScoreLevel> ParseScoreLevel(std::string_view name);

// "have.03" -> "have". Labels without a numeric sense suffix are returned
// unchanged.
std::string FrameKey(std::string_view roleset);

struct TokenLabel {
  int token = 0;
  std::string role;
  std::string key;

  auto operator<=>(const TokenLabel &) const = default;
};

// One tuple per token covered by a role span, plus the v span under role
// "v". The key is the roleset label, or its frame at frame level.
std::set<TokenLabel> LabelTokens(std::span<const FrameInstance> instances,
                                 ScoreLevel level);

// The frames attached to one utterance.
struct FrameSet {
  std::string utterance_id;
  std::vector<FrameInstance> frames;
};

std::vector<FrameSet> FrameSets(std::span<const Utterance> corpus);

struct ScoreReport {
  ScoreLevel level = ScoreLevel::kRoleset;
  double precision = 0;  // percentages
  double recall = 0;
  double f1 = 0;
  int64_t true_positives = 0;
  int64_t predicted_total = 0;
  int64_t gold_total = 0;

  nlohmann::json ToJson() const;
};

// Word-level scores. Utterances are aligned by id, so order does not
// matter; throws MisalignedCorpora if the id sets differ or repeat.
ScoreReport Score(std::span<const FrameSet> predicted,
                  std::span<const FrameSet> gold, ScoreLevel level);

// Fixed-width table with one row per report.
std::string FormatScoreTable(std::span<const ScoreReport> reports);

}  // namespace cxg

#endif  // CXG_EVALUATOR_H_
