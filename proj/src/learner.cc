#include "cxg/learner.h"

#include <algorithm>
#include <tuple>

#include "cxg/errors.h"

namespace cxg {

std::string_view SkipReasonName(SkipReason reason) {
  switch (reason) {
    case SkipReason::kNonConstituentRole:
      return "NonConstituentRole";
    case SkipReason::kNoCoreRoles:
      return "NoCoreRoles";
    case SkipReason::kDegenerateNesting:
      return "DegenerateNesting";
  }
  return "?";
}

nlohmann::json LearnStats::ToJson() const {
  return {{"instancesSeen", instances_seen},
          {"instancesLearnt", instances_learnt},
          {"instancesSkipped", instances_skipped},
          {"skipReasons", skip_reasons}};
}

Path ExtractPath(const ConstituencyTree &tree, NodeId role, NodeId v) {
  if (role == v || tree.Dominates(role, v) || tree.Dominates(v, role)) {
    throw DegenerateNesting("node " + std::to_string(role) + " and node " +
                            std::to_string(v) + " are nested");
  }
  NodeId lca = tree.LowestCommonAncestor(role, v);
  Path path;
  for (NodeId id = tree.node(role).parent;; id = tree.node(id).parent) {
    path.push_back(PathStep::Up(tree.node(id).label));
    if (id == lca) break;
  }
  Path down;
  for (NodeId id = tree.node(v).parent; id != lca; id = tree.node(id).parent) {
    down.push_back(PathStep::Down(tree.node(id).label));
  }
  path.insert(path.end(), down.rbegin(), down.rend());
  return path;
}

std::vector<PrecedenceConstraint> DetectPrecedence(
    std::span<const SlotSource> slots) {
  std::vector<PrecedenceConstraint> constraints;
  for (size_t i = 0; i < slots.size(); ++i) {
    for (size_t j = i + 1; j < slots.size(); ++j) {
      const SlotSource &x = slots[i];
      const SlotSource &y = slots[j];
      if (x.slot.pos != y.slot.pos || x.slot.path != y.slot.path) continue;
      if (x.span.start <= y.span.start) {
        constraints.push_back({x.slot.role, y.slot.role});
      } else {
        constraints.push_back({y.slot.role, x.slot.role});
      }
    }
  }
  std::sort(constraints.begin(), constraints.end());
  return constraints;
}

namespace {

// Frame-evoking key of the v span: the token's (lemma, pos), or for a
// multi-token v the lemmas joined by '_' with the first token's pos.
void FrameEvokingKey(const Utterance &utterance, Span v, std::string *lemma,
                     std::string *pos) {
  lemma->clear();
  for (int i = v.start; i < v.end; ++i) {
    if (i > v.start) *lemma += '_';
    *lemma += utterance.tokens[i].lemma;
  }
  *pos = utterance.tokens[v.start].pos;
}

}  // namespace

AnalysisResult AnalyzeInstance(const Utterance &utterance,
                               const FrameInstance &frame) {
  AnalysisResult result;
  const ConstituencyTree &tree = utterance.tree;

  std::vector<std::pair<std::string, Span>> roles;
  for (const auto &[role, span] : frame.roles) {
    if (IsCoreRole(role)) roles.emplace_back(role, span);
  }
  if (roles.empty()) {
    result.skipped = SkipReason::kNoCoreRoles;
    return result;
  }

  std::optional<NodeId> v_node = tree.NodeForSpan(frame.v);
  if (!v_node) {
    result.skipped = SkipReason::kNonConstituentRole;
    return result;
  }
  std::vector<NodeId> role_nodes;
  for (const auto &[role, span] : roles) {
    std::optional<NodeId> node = tree.NodeForSpan(span);
    if (!node) {
      result.skipped = SkipReason::kNonConstituentRole;
      return result;
    }
    role_nodes.push_back(*node);
  }

  // Role units must be pairwise distinct and must neither dominate nor sit
  // below the v unit.
  for (size_t i = 0; i < role_nodes.size(); ++i) {
    NodeId node = role_nodes[i];
    bool nested = node == *v_node || tree.Dominates(node, *v_node) ||
                  tree.Dominates(*v_node, node);
    for (size_t j = 0; j < i && !nested; ++j) nested = role_nodes[j] == node;
    if (nested) {
      result.skipped = SkipReason::kDegenerateNesting;
      return result;
    }
  }

  InstanceAnalysis analysis;
  analysis.v_node = *v_node;
  FrameEvokingKey(utterance, frame.v, &analysis.lemma, &analysis.pos);
  for (size_t i = 0; i < roles.size(); ++i) {
    const ConstNode &node = tree.node(role_nodes[i]);
    analysis.slots.push_back(
        {{roles[i].first, node.label, ExtractPath(tree, node.id, *v_node)},
         node.span});
  }
  std::sort(analysis.slots.begin(), analysis.slots.end(),
            [](const SlotSource &x, const SlotSource &y) {
              return std::tie(x.span.start, x.slot.role) <
                     std::tie(y.span.start, y.slot.role);
            });
  analysis.constraints = DetectPrecedence(analysis.slots);

  // Mnemonic: role(pos) units and v(v) in linear order.
  std::string prefix;
  bool v_emitted = false;
  auto append = [&prefix](const std::string &unit) {
    if (!prefix.empty()) prefix += '-';
    prefix += unit;
  };
  for (const SlotSource &source : analysis.slots) {
    if (!v_emitted && frame.v.start < source.span.start) {
      append("v(v)");
      v_emitted = true;
    }
    append(source.slot.role + "(" + source.slot.pos + ")");
  }
  if (!v_emitted) append("v(v)");
  analysis.mnemonic_prefix = std::move(prefix);

  result.analysis = std::move(analysis);
  return result;
}

LearnOutcome LearnInstance(ConstructionNetwork &net, const Utterance &utterance,
                           const FrameInstance &frame) {
  LearnOutcome outcome;
  AnalysisResult result = AnalyzeInstance(utterance, frame);
  if (result.skipped) {
    outcome.skipped = result.skipped;
    return outcome;
  }
  const InstanceAnalysis &analysis = *result.analysis;

  std::vector<RoleSlot> slots;
  for (const SlotSource &source : analysis.slots) slots.push_back(source.slot);

  outcome.fe =
      net.FindOrAddFrameEvoking(analysis.lemma, analysis.pos).cxn.category.id;
  outcome.argst = net.FindOrAddArgStruct(std::move(slots), analysis.constraints,
                                         analysis.mnemonic_prefix)
                      .cxn.category.id;
  outcome.roleset = net.FindOrAddRoleset(frame.roleset).cxn.category.id;

  net.AddOrBumpLink(outcome.fe, outcome.argst, LinkKind::kFeArgst);
  net.AddOrBumpLink(outcome.fe, outcome.roleset, LinkKind::kFeRoleset);
  net.AddOrBumpLink(outcome.argst, outcome.roleset, LinkKind::kArgstRoleset);
  return outcome;
}

LearnStats LearnCorpus(ConstructionNetwork &net,
                       std::span<const Utterance> corpus) {
  LearnStats stats;
  for (const Utterance &utterance : corpus) {
    for (const FrameInstance &frame : utterance.frames) {
      ++stats.instances_seen;
      LearnOutcome outcome = LearnInstance(net, utterance, frame);
      if (outcome.learnt()) {
        ++stats.instances_learnt;
      } else {
        ++stats.instances_skipped;
        ++stats.skip_reasons[std::string(SkipReasonName(*outcome.skipped))];
      }
    }
  }
  return stats;
}

}  // namespace cxg
