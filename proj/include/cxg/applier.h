#ifndef CXG_APPLIER_H_
#define CXG_APPLIER_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "cxg/corpus.h"
#include "cxg/grammar.h"

namespace cxg {

struct FrameEvokingMatch {
  NodeId node = kNoNode;
  const FrameEvokingCxn *cxn = nullptr;
};

// A match of an argument structure construction's units onto tree nodes.
struct Binding {
  NodeId v_node = kNoNode;
  std::map<std::string, NodeId> role_nodes;
  const ArgStructCxn *argst = nullptr;
  const FrameEvokingCxn *fe = nullptr;

  bool operator==(const Binding &other) const {
    return v_node == other.v_node && role_nodes == other.role_nodes;
  }
};

// One entry per constituent whose (lemma, pos) key is indexed in the
// network. For single tokens the node is the token's preterminal. Ordered by
// span.
std::vector<FrameEvokingMatch> MatchFrameEvoking(const ConstructionNetwork &net,
                                                 const Utterance &utterance);

// Nodes reachable from `v_node` by walking `slot`'s path backwards: ascend
// over the down steps and the LCA, then descend over the up steps into a
// branch that does not contain `v_node`, ending on a node labelled with the
// slot's pos. Sorted by (start, end, id).
std::vector<NodeId> SlotCandidates(const ConstituencyTree &tree, NodeId v_node,
                                   const RoleSlot &slot);

// All injective, precedence-respecting assignments of the construction's
// slots to candidate nodes, in lexicographic order over slots sorted by role
// label and candidates sorted leftmost first.
std::vector<Binding> MatchArgStruct(const ConstituencyTree &tree, NodeId v_node,
                                    const ArgStructCxn &cxn);

// Re-checks a binding from scratch: node labels, paths recomputed through
// the LCA, injectivity (including the v node) and precedence.
bool VerifyBinding(const ConstituencyTree &tree, const ArgStructCxn &cxn,
                   const Binding &binding);

// A triangularly linked (frame-evoking, argument structure, roleset) triple
// together with its best binding.
struct Completion {
  Binding binding;
  const RolesetCxn *roleset = nullptr;
  int64_t weight = 0;  // fe-roleset + argst-roleset + fe-argst
};

// All triangular completions at one frame-evoking match, one per
// (argst, roleset) pair, each with the first binding in enumeration order.
std::vector<Completion> Completions(const ConstructionNetwork &net,
                                    const Utterance &utterance,
                                    const FrameEvokingMatch &match);

// True if `a` is preferred over `b`: more role slots, then higher link
// weight sum, then smaller argstruct signature, then smaller roleset label.
bool PreferCompletion(const Completion &a, const Completion &b);

FrameInstance ToFrameInstance(const ConstituencyTree &tree,
                              const Completion &completion);

// At most one frame instance per frame-evoking node.
std::vector<FrameInstance> Extract(const ConstructionNetwork &net,
                                   const Utterance &utterance);

// Extracts over a corpus with `workers` threads; output order matches input.
std::vector<std::vector<FrameInstance>> ExtractCorpus(
    const ConstructionNetwork &net, std::span<const Utterance> corpus,
    int workers = 1);

}  // namespace cxg

#endif  // CXG_APPLIER_H_
