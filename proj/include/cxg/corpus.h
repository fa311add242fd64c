#ifndef CXG_CORPUS_H_
#define CXG_CORPUS_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cxg {

// Half-open token interval [start, end).
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool Contains(const Span &other) const {
    return start <= other.start && other.end <= end;
  }

  auto operator<=>(const Span &) const = default;
};

struct Token {
  int index = 0;
  std::string form;
  std::string lemma;  // lowercased
  std::string pos;    // lowercased
};

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct ConstNode {
  NodeId id = kNoNode;
  std::string label;
  Span span;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;

  bool is_leaf() const { return children.empty(); }
};

// A constituency tree over a token sequence. Nodes are stored in preorder, so
// the root is node 0 and a node's id is smaller than any of its descendants'.
// Every leaf covers exactly one token; leaf order is token order.
class ConstituencyTree {
 public:
  ConstituencyTree() = default;

  // Parses standard parenthesized notation, e.g. "(s (np Moses) (vp ...))".
  // A parenthesized label directly followed by a word is a leaf; the word
  // itself is not a node.
  static ConstituencyTree FromBracketed(std::string_view text);

  // Parses the nested {"label": ..., "children": [...]} form.
  static ConstituencyTree FromJson(const nlohmann::json &node);

  // Builder interface. Nodes must be added in preorder (parents before
  // children, children left to right); Finalize() computes spans, builds the
  // span index and validates the structure.
  NodeId AddNode(std::string label, NodeId parent);
  void Finalize();

  int size() const { return static_cast<int>(nodes_.size()); }
  bool empty() const { return nodes_.empty(); }
  NodeId root() const { return 0; }
  int num_tokens() const { return num_tokens_; }
  const ConstNode &node(NodeId id) const { return nodes_.at(id); }
  const std::vector<ConstNode> &nodes() const { return nodes_; }
  int depth(NodeId id) const { return depth_.at(id); }

  // The node whose span equals `span` exactly. When a unary chain yields
  // several such nodes the lowest one is returned.
  std::optional<NodeId> NodeForSpan(Span span) const;

  // Lowest node covering exactly token `index`.
  std::optional<NodeId> Preterminal(int index) const {
    return NodeForSpan({index, index + 1});
  }

  // True if `ancestor` is a proper ancestor of `node`.
  bool Dominates(NodeId ancestor, NodeId node) const;
  NodeId LowestCommonAncestor(NodeId a, NodeId b) const;

  // Lowest node of every distinct span, ordered by (start, end).
  std::vector<NodeId> LowestNodesBySpan() const;

  nlohmann::json ToJson() const;
  std::string ToBracketed(const std::vector<Token> &tokens) const;

 private:
  nlohmann::json NodeToJson(NodeId id) const;
  void AppendBracketed(NodeId id, const std::vector<Token> &tokens,
                       std::string *out) const;

  std::vector<ConstNode> nodes_;
  std::vector<int> depth_;
  std::map<std::pair<int, int>, NodeId> span_index_;
  int num_tokens_ = 0;
  bool finalized_ = false;
};

// One roleset annotation or prediction. Only core roles are kept.
struct FrameInstance {
  std::string roleset;
  Span v;
  std::map<std::string, Span> roles;

  bool operator==(const FrameInstance &) const = default;
};

struct Utterance {
  std::string id;
  std::vector<Token> tokens;
  ConstituencyTree tree;
  std::vector<FrameInstance> frames;
};

// "arg0" ... "arg5" and "arga".
bool IsCoreRole(std::string_view role);

// Roles that are dropped silently on ingestion: modifiers (argm-*) and
// continuation/reference arguments (c-*, r-*).
bool IsIgnoredRole(std::string_view role);

// Validates a roleset label of the form `lemma.NN`.
bool IsRolesetLabel(std::string_view label);

std::string ToLower(std::string_view text);

// Interchange format.
Utterance ParseUtterance(const nlohmann::json &record);
FrameInstance ParseFrame(const nlohmann::json &record, int num_tokens);
nlohmann::json FrameToJson(const FrameInstance &frame);
nlohmann::json UtteranceToJson(const Utterance &utterance);

// Same record with its frames replaced by `frames`.
nlohmann::json UtteranceToJson(const Utterance &utterance,
                               const std::vector<FrameInstance> &frames);

// Reads a JSON Lines corpus. Errors carry "path:line" context. Blank lines
// are skipped.
std::vector<Utterance> ReadCorpus(const std::string &path);
std::vector<Utterance> ReadCorpus(std::istream &in,
                                  const std::string &source_name);

}  // namespace cxg

#endif  // CXG_CORPUS_H_
