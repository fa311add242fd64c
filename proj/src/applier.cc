#include "cxg/applier.h"

#include <algorithm>
#include <thread>
#include <tuple>

#include "cxg/errors.h"
#include "cxg/learner.h"

namespace cxg {

std::vector<FrameEvokingMatch> MatchFrameEvoking(const ConstructionNetwork &net,
                                                 const Utterance &utterance) {
  std::vector<FrameEvokingMatch> matches;
  for (NodeId id : utterance.tree.LowestNodesBySpan()) {
    Span span = utterance.tree.node(id).span;
    std::string lemma;
    for (int i = span.start; i < span.end; ++i) {
      if (i > span.start) lemma += '_';
      lemma += utterance.tokens[i].lemma;
    }
    const FrameEvokingCxn *cxn =
        net.FindFrameEvoking(lemma, utterance.tokens[span.start].pos);
    if (cxn != nullptr) matches.push_back({id, cxn});
  }
  return matches;
}

std::vector<NodeId> SlotCandidates(const ConstituencyTree &tree, NodeId v_node,
                                   const RoleSlot &slot) {
  std::vector<const std::string *> ups;
  std::vector<const std::string *> downs;
  for (const PathStep &step : slot.path) {
    if (step.direction == PathStep::Direction::kUp) {
      if (!downs.empty()) return {};
      ups.push_back(&step.label);
    } else {
      downs.push_back(&step.label);
    }
  }
  if (ups.empty()) return {};

  // Ascend from v over the down steps, innermost first.
  NodeId branch = v_node;
  for (auto it = downs.rbegin(); it != downs.rend(); ++it) {
    branch = tree.node(branch).parent;
    if (branch == kNoNode || tree.node(branch).label != **it) return {};
  }
  NodeId lca = tree.node(branch).parent;
  if (lca == kNoNode || tree.node(lca).label != *ups.back()) return {};

  // Descend over the remaining up steps, outermost first, then to the slot.
  std::vector<NodeId> frontier = {lca};
  bool first_level = true;
  auto descend = [&](const std::string &label) {
    std::vector<NodeId> next;
    for (NodeId parent : frontier) {
      for (NodeId child : tree.node(parent).children) {
        if (first_level && child == branch) continue;
        if (tree.node(child).label == label) next.push_back(child);
      }
    }
    first_level = false;
    frontier = std::move(next);
  };
  for (size_t i = ups.size() - 1; i-- > 0;) descend(*ups[i]);
  descend(slot.pos);

  std::sort(frontier.begin(), frontier.end(), [&tree](NodeId x, NodeId y) {
    const Span &a = tree.node(x).span;
    const Span &b = tree.node(y).span;
    return std::tie(a.start, a.end, x) < std::tie(b.start, b.end, y);
  });
  return frontier;
}

namespace {

bool Precedes(const ConstituencyTree &tree, NodeId before, NodeId after) {
  return tree.node(before).span.start < tree.node(after).span.start;
}

class BindingEnumerator {
 public:
  BindingEnumerator(const ConstituencyTree &tree, NodeId v_node,
                    const ArgStructCxn &cxn)
      : tree_(tree), v_node_(v_node), cxn_(cxn) {
    for (const RoleSlot &slot : cxn.slots) {
      candidates_.push_back(SlotCandidates(tree, v_node, slot));
    }
    for (const PrecedenceConstraint &constraint : cxn.constraints) {
      constraints_.push_back(
          {SlotIndex(constraint.before), SlotIndex(constraint.after)});
    }
    assigned_.assign(cxn.slots.size(), kNoNode);
  }

  std::vector<Binding> Run() {
    for (const auto &[before, after] : constraints_) {
      if (before < 0 || after < 0) return {};
    }
    Assign(0);
    return std::move(bindings_);
  }

 private:
  int SlotIndex(const std::string &role) const {
    for (size_t i = 0; i < cxn_.slots.size(); ++i) {
      if (cxn_.slots[i].role == role) return static_cast<int>(i);
    }
    return -1;
  }

  bool Consistent(size_t slot) const {
    NodeId node = assigned_[slot];
    for (size_t i = 0; i < slot; ++i) {
      if (assigned_[i] == node) return false;
    }
    for (const auto &[before, after] : constraints_) {
      size_t b = static_cast<size_t>(before);
      size_t a = static_cast<size_t>(after);
      if (b > slot || a > slot || (b != slot && a != slot)) continue;
      if (!Precedes(tree_, assigned_[b], assigned_[a])) return false;
    }
    return true;
  }

  void Assign(size_t slot) {
    if (slot == cxn_.slots.size()) {
      Binding binding;
      binding.v_node = v_node_;
      binding.argst = &cxn_;
      for (size_t i = 0; i < slot; ++i) {
        binding.role_nodes.emplace(cxn_.slots[i].role, assigned_[i]);
      }
      bindings_.push_back(std::move(binding));
      return;
    }
    for (NodeId node : candidates_[slot]) {
      assigned_[slot] = node;
      if (Consistent(slot)) Assign(slot + 1);
    }
    assigned_[slot] = kNoNode;
  }

  const ConstituencyTree &tree_;
  NodeId v_node_;
  const ArgStructCxn &cxn_;
  std::vector<std::vector<NodeId>> candidates_;
  std::vector<std::pair<int, int>> constraints_;
  std::vector<NodeId> assigned_;
  std::vector<Binding> bindings_;
};

}  // namespace

std::vector<Binding> MatchArgStruct(const ConstituencyTree &tree, NodeId v_node,
                                    const ArgStructCxn &cxn) {
  if (cxn.slots.empty()) return {};
  return BindingEnumerator(tree, v_node, cxn).Run();
}

bool VerifyBinding(const ConstituencyTree &tree, const ArgStructCxn &cxn,
                   const Binding &binding) {
  if (binding.role_nodes.size() != cxn.slots.size()) return false;
  std::vector<NodeId> used = {binding.v_node};
  for (const RoleSlot &slot : cxn.slots) {
    auto it = binding.role_nodes.find(slot.role);
    if (it == binding.role_nodes.end()) return false;
    NodeId node = it->second;
    if (node < 0 || node >= tree.size()) return false;
    if (std::find(used.begin(), used.end(), node) != used.end()) return false;
    used.push_back(node);
    if (tree.node(node).label != slot.pos) return false;
    try {
      if (ExtractPath(tree, node, binding.v_node) != slot.path) return false;
    } catch (const DegenerateNesting &) {
      return false;
    }
  }
  for (const PrecedenceConstraint &constraint : cxn.constraints) {
    auto before = binding.role_nodes.find(constraint.before);
    auto after = binding.role_nodes.find(constraint.after);
    if (before == binding.role_nodes.end() || after == binding.role_nodes.end())
      return false;
    if (!Precedes(tree, before->second, after->second)) return false;
  }
  return true;
}

std::vector<Completion> Completions(const ConstructionNetwork &net,
                                    const Utterance &utterance,
                                    const FrameEvokingMatch &match) {
  std::vector<Completion> completions;
  CategoryId fe = match.cxn->category.id;
  for (size_t fe_link : net.Incident(fe)) {
    const CategorialLink &fe_argst = net.links()[fe_link];
    if (fe_argst.kind != LinkKind::kFeArgst) continue;
    const ArgStructCxn &argst = net.argstruct(fe_argst.Other(fe));
    std::vector<Binding> bindings =
        MatchArgStruct(utterance.tree, match.node, argst);
    if (bindings.empty()) continue;
    bindings.front().fe = match.cxn;
    for (size_t argst_link : net.Incident(argst.category.id)) {
      const CategorialLink &argst_roleset = net.links()[argst_link];
      if (argst_roleset.kind != LinkKind::kArgstRoleset) continue;
      CategoryId roleset = argst_roleset.Other(argst.category.id);
      int64_t fe_roleset = net.LinkWeight(fe, roleset);
      if (fe_roleset == 0) continue;
      completions.push_back(
          {bindings.front(), &net.roleset(roleset),
           fe_roleset + argst_roleset.weight + fe_argst.weight});
    }
  }
  return completions;
}

bool PreferCompletion(const Completion &a, const Completion &b) {
  size_t slots_a = a.binding.argst->slots.size();
  size_t slots_b = b.binding.argst->slots.size();
  if (slots_a != slots_b) return slots_a > slots_b;
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.binding.argst->signature != b.binding.argst->signature) {
    return a.binding.argst->signature < b.binding.argst->signature;
  }
  return a.roleset->roleset < b.roleset->roleset;
}

FrameInstance ToFrameInstance(const ConstituencyTree &tree,
                              const Completion &completion) {
  FrameInstance frame;
  frame.roleset = completion.roleset->roleset;
  frame.v = tree.node(completion.binding.v_node).span;
  for (const auto &[role, node] : completion.binding.role_nodes) {
    frame.roles.emplace(role, tree.node(node).span);
  }
  return frame;
}

std::vector<FrameInstance> Extract(const ConstructionNetwork &net,
                                   const Utterance &utterance) {
  std::vector<FrameInstance> frames;
  for (const FrameEvokingMatch &match : MatchFrameEvoking(net, utterance)) {
    std::vector<Completion> completions = Completions(net, utterance, match);
    if (completions.empty()) continue;
    auto best = std::min_element(completions.begin(), completions.end(),
                                 PreferCompletion);
    frames.push_back(ToFrameInstance(utterance.tree, *best));
  }
  return frames;
}

std::vector<std::vector<FrameInstance>> ExtractCorpus(
    const ConstructionNetwork &net, std::span<const Utterance> corpus,
    int workers) {
  std::vector<std::vector<FrameInstance>> results(corpus.size());
  size_t count = std::max(1, workers);
  count = std::min(count, std::max<size_t>(1, corpus.size()));
  if (count == 1) {
    for (size_t i = 0; i < corpus.size(); ++i) {
      results[i] = Extract(net, corpus[i]);
    }
    return results;
  }
  {
    std::vector<std::jthread> threads;
    for (size_t t = 0; t < count; ++t) {
      threads.emplace_back([&, t] {
        for (size_t i = t; i < corpus.size(); i += count) {
          results[i] = Extract(net, corpus[i]);
        }
      });
    }
  }
  return results;
}

}  // namespace cxg
