#include "cxg/evaluator.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

#include "cxg/errors.h"

namespace cxg {

std::string_view ScoreLevelName(ScoreLevel level) {
  return level == ScoreLevel::kRoleset ? "roleset" : "frame";
}

std::optional<ScoreLevel> ParseScoreLevel(std::string_view name) {
  if (name == "roleset") return ScoreLevel::kRoleset;
  if (name == "frame") return ScoreLevel::kFrame;
  return std::nullopt;
}

std::string FrameKey(std::string_view roleset) {
  size_t dot = roleset.rfind('.');
  if (dot == std::string_view::npos || dot + 1 == roleset.size()) {
    return std::string(roleset);
  }
  std::string_view sense = roleset.substr(dot + 1);
  bool numeric = std::all_of(sense.begin(), sense.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
  return std::string(numeric ? roleset.substr(0, dot) : roleset);
}

std::set<TokenLabel> LabelTokens(std::span<const FrameInstance> instances,
                                 ScoreLevel level) {
  std::set<TokenLabel> labels;
  for (const FrameInstance &frame : instances) {
    std::string key =
        level == ScoreLevel::kRoleset ? frame.roleset : FrameKey(frame.roleset);
    for (int i = frame.v.start; i < frame.v.end; ++i) {
      labels.insert({i, "v", key});
    }
    for (const auto &[role, span] : frame.roles) {
      for (int i = span.start; i < span.end; ++i) labels.insert({i, role, key});
    }
  }
  return labels;
}

std::vector<FrameSet> FrameSets(std::span<const Utterance> corpus) {
  std::vector<FrameSet> sets;
  sets.reserve(corpus.size());
  for (const Utterance &utterance : corpus) {
    sets.push_back({utterance.id, utterance.frames});
  }
  return sets;
}

nlohmann::json ScoreReport::ToJson() const {
  return {{"level", ScoreLevelName(level)},
          {"precision", precision},
          {"recall", recall},
          {"f1", f1},
          {"truePositives", true_positives},
          {"predictedTotal", predicted_total},
          {"goldTotal", gold_total}};
}

namespace {

std::map<std::string, const FrameSet *> IndexById(
    std::span<const FrameSet> sets, const char *side) {
  std::map<std::string, const FrameSet *> index;
  for (const FrameSet &set : sets) {
    if (!index.emplace(set.utterance_id, &set).second) {
      throw MisalignedCorpora(std::string(side) + " repeats utterance id \"" +
                              set.utterance_id + "\"");
    }
  }
  return index;
}

}  // namespace

ScoreReport Score(std::span<const FrameSet> predicted,
                  std::span<const FrameSet> gold, ScoreLevel level) {
  auto predicted_index = IndexById(predicted, "prediction");
  auto gold_index = IndexById(gold, "gold");
  if (predicted_index.size() != gold_index.size()) {
    throw MisalignedCorpora(
        "prediction has " + std::to_string(predicted_index.size()) +
        " utterances, gold has " + std::to_string(gold_index.size()));
  }

  ScoreReport report;
  report.level = level;
  for (const auto &[id, gold_set] : gold_index) {
    auto it = predicted_index.find(id);
    if (it == predicted_index.end()) {
      throw MisalignedCorpora("utterance \"" + id + "\" has no prediction");
    }
    std::set<TokenLabel> gold_labels = LabelTokens(gold_set->frames, level);
    std::set<TokenLabel> predicted_labels =
        LabelTokens(it->second->frames, level);
    report.gold_total += static_cast<int64_t>(gold_labels.size());
    report.predicted_total += static_cast<int64_t>(predicted_labels.size());
    for (const TokenLabel &label : predicted_labels) {
      if (gold_labels.contains(label)) ++report.true_positives;
    }
  }

  if (report.predicted_total == 0 && report.gold_total == 0) {
    report.precision = report.recall = report.f1 = 100.0;
    return report;
  }
  if (report.predicted_total > 0) {
    report.precision = 100.0 * static_cast<double>(report.true_positives) /
                       static_cast<double>(report.predicted_total);
  }
  if (report.gold_total > 0) {
    report.recall = 100.0 * static_cast<double>(report.true_positives) /
                    static_cast<double>(report.gold_total);
  }
  if (report.precision + report.recall > 0) {
    report.f1 = 2 * report.precision * report.recall /
                (report.precision + report.recall);
  }
  return report;
}

std::string FormatScoreTable(std::span<const ScoreReport> reports) {
  std::string out;
  char line[128];
  const char *rule = "------------------------------------------------\n";
  out += rule;
  std::snprintf(line, sizeof(line), "%-10s %12s %12s %12s\n", "", "Precision",
                "Recall", "F1 score");
  out += line;
  out += rule;
  for (const ScoreReport &report : reports) {
    std::string name(ScoreLevelName(report.level));
    name[0] = static_cast<char>(std::toupper(name[0]));
    std::snprintf(line, sizeof(line), "%-10s %12.2f %12.2f %12.2f\n",
                  name.c_str(), report.precision, report.recall, report.f1);
    out += line;
  }
  out += rule;
  return out;
}

}  // namespace cxg
