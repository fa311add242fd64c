#ifndef CXG_LEARNER_H_
#define CXG_LEARNER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cxg/corpus.h"
#include "cxg/grammar.h"
#include "json.hpp"

namespace cxg {

enum class SkipReason { kNonConstituentRole, kNoCoreRoles, kDegenerateNesting };

std::string_view SkipReasonName(SkipReason reason);

struct LearnStats {
  int64_t instances_seen = 0;
  int64_t instances_learnt = 0;
  int64_t instances_skipped = 0;
  std::map<std::string, int64_t> skip_reasons;

  nlohmann::json ToJson() const;
};

// Path from `role` to `v` through their lowest common ancestor: one up step
// per ancestor of `role` up to and including the LCA, then one down step per
// node strictly between the LCA and `v`. Throws DegenerateNesting if one node
// dominates or equals the other.
Path ExtractPath(const ConstituencyTree &tree, NodeId role, NodeId v);

struct SlotSource {
  RoleSlot slot;
  Span span;
};

// One constraint per pair of slots whose (pos, path) are identical, ordered
// by the linear position of their source constituents.
std::vector<PrecedenceConstraint> DetectPrecedence(
    std::span<const SlotSource> slots);

// The constructional analysis of one roleset instance, before anything is
// added to a network.
struct InstanceAnalysis {
  NodeId v_node = kNoNode;
  std::string lemma;
  std::string pos;
  std::vector<SlotSource> slots;  // in linear order
  std::vector<PrecedenceConstraint> constraints;
  std::string mnemonic_prefix;  // e.g. "arg0(np)-v(v)-arg1(np)"
};

struct AnalysisResult {
  std::optional<InstanceAnalysis> analysis;
  std::optional<SkipReason> skipped;
};

AnalysisResult AnalyzeInstance(const Utterance &utterance,
                               const FrameInstance &frame);

struct LearnOutcome {
  std::optional<SkipReason> skipped;
  CategoryId fe{};
  CategoryId argst{};
  CategoryId roleset{};

  bool learnt() const { return !skipped.has_value(); }
};

// Builds (or reuses) the frame-evoking, argument structure and roleset
// constructions for one instance and bumps the three links between them.
// A skipped instance leaves the network untouched.
LearnOutcome LearnInstance(ConstructionNetwork &net, const Utterance &utterance,
                           const FrameInstance &frame);

// Single pass in corpus order.
LearnStats LearnCorpus(ConstructionNetwork &net,
                       std::span<const Utterance> corpus);

}  // namespace cxg

#endif  // CXG_LEARNER_H_
