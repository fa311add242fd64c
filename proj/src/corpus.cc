#include "cxg/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <memory>
#include <set>

#include "cxg/errors.h"

namespace cxg {

using nlohmann::json;

namespace {

// Intermediate parse tree, so that a wrapper root like "( (s ...) )" can be
// dropped before nodes are numbered.
struct RawNode {
  std::string label;
  std::vector<std::unique_ptr<RawNode>> children;
};

class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  std::unique_ptr<RawNode> ReadTree() {
    SkipSpace();
    auto node = ReadNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing input after tree");
    return node;
  }

 private:
  std::unique_ptr<RawNode> ReadNode() {
    SkipSpace();
    if (pos_ >= text_.size() || text_[pos_] != '(') Fail("expected '('");
    ++pos_;
    auto node = std::make_unique<RawNode>();
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
      node->label = ToLower(ReadAtom());
    }
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') {
      // (label word) is a leaf.
      ReadAtom();
      SkipSpace();
    } else {
      while (pos_ < text_.size() && text_[pos_] == '(') {
        node->children.push_back(ReadNode());
        SkipSpace();
      }
      if (node->children.empty()) Fail("empty constituent");
    }
    if (pos_ >= text_.size() || text_[pos_] != ')') Fail("expected ')'");
    ++pos_;
    return node;
  }

  std::string ReadAtom() {
    size_t begin = pos_;
    while (pos_ < text_.size() &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(begin, pos_ - begin));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string &what) const {
    throw TreeError("bracketed tree, offset " + std::to_string(pos_) + ": " +
                    what);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void AddRawNode(const RawNode &raw, NodeId parent, ConstituencyTree *tree) {
  NodeId id = tree->AddNode(raw.label, parent);
  for (const auto &child : raw.children) AddRawNode(*child, id, tree);
}

void AddJsonNode(const json &node, NodeId parent, ConstituencyTree *tree) {
  if (!node.is_object() || !node.contains("label") ||
      !node["label"].is_string()) {
    throw SchemaError("tree node must be an object with a string \"label\"");
  }
  NodeId id = tree->AddNode(ToLower(node["label"].get<std::string>()), parent);
  if (node.contains("children")) {
    const json &children = node["children"];
    if (!children.is_array()) {
      throw SchemaError("tree node \"children\" must be an array");
    }
    for (const json &child : children) AddJsonNode(child, id, tree);
  }
}

Span ParseSpan(const json &value, int num_tokens, const std::string &what) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
      !value[1].is_number_integer()) {
    throw SchemaError(what + ": span must be [start, end]");
  }
  Span span{value[0].get<int>(), value[1].get<int>()};
  if (span.start < 0 || span.end <= span.start || span.end > num_tokens) {
    throw SchemaError(what + ": span [" + std::to_string(span.start) + "," +
                      std::to_string(span.end) + ") out of bounds for " +
                      std::to_string(num_tokens) + " tokens");
  }
  return span;
}

const json &RequireField(const json &record, const char *field) {
  if (!record.is_object() || !record.contains(field)) {
    throw SchemaError(std::string("missing field \"") + field + "\"");
  }
  return record[field];
}

std::string RequireString(const json &record, const char *field) {
  const json &value = RequireField(record, field);
  if (!value.is_string()) {
    throw SchemaError(std::string("field \"") + field + "\" must be a string");
  }
  return value.get<std::string>();
}

json SpanToJson(Span span) { return json::array({span.start, span.end}); }

}  // namespace

NodeId ConstituencyTree::AddNode(std::string label, NodeId parent) {
  if (finalized_) throw TreeError("tree is already finalized");
  NodeId id = size();
  if (parent == kNoNode) {
    if (!nodes_.empty()) throw TreeError("tree has more than one root");
  } else if (parent < 0 || parent >= id) {
    throw TreeError("parent must be added before its children");
  }
  ConstNode node;
  node.id = id;
  node.label = std::move(label);
  node.parent = parent;
  nodes_.push_back(std::move(node));
  if (parent != kNoNode) nodes_[parent].children.push_back(id);
  return id;
}

void ConstituencyTree::Finalize() {
  if (nodes_.empty()) throw TreeError("empty tree");
  depth_.assign(nodes_.size(), 0);
  span_index_.clear();

  // Preorder numbering guarantees that visiting ids in order visits parents
  // first, but leaf order must follow the child lists.
  int next_token = 0;
  std::vector<std::pair<NodeId, bool>> stack = {{root(), false}};
  while (!stack.empty()) {
    auto [id, done] = stack.back();
    stack.pop_back();
    ConstNode &node = nodes_[id];
    if (done) {
      node.span = {nodes_[node.children.front()].span.start,
                   nodes_[node.children.back()].span.end};
      continue;
    }
    if (node.parent != kNoNode) depth_[id] = depth_[node.parent] + 1;
    if (node.is_leaf()) {
      node.span = {next_token, next_token + 1};
      ++next_token;
      continue;
    }
    stack.push_back({id, true});
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
      stack.push_back({*it, false});
    }
  }
  num_tokens_ = next_token;

  for (const ConstNode &node : nodes_) {
    if (node.label.empty()) {
      throw TreeError("node " + std::to_string(node.id) + " has no label");
    }
    Span previous{node.span.start, node.span.start};
    for (NodeId child : node.children) {
      const Span &span = nodes_[child].span;
      if (span.start != previous.end) {
        throw TreeError("children of node " + std::to_string(node.id) +
                        " are not contiguous");
      }
      previous = span;
    }
    auto key = std::make_pair(node.span.start, node.span.end);
    auto it = span_index_.find(key);
    if (it == span_index_.end() || depth_[it->second] < depth_[node.id]) {
      span_index_[key] = node.id;
    }
  }
  finalized_ = true;
}

ConstituencyTree ConstituencyTree::FromBracketed(std::string_view text) {
  std::unique_ptr<RawNode> raw = BracketReader(text).ReadTree();
  while (raw->label.empty() && raw->children.size() == 1) {
    raw = std::move(raw->children.front());
  }
  ConstituencyTree tree;
  AddRawNode(*raw, kNoNode, &tree);
  tree.Finalize();
  return tree;
}

ConstituencyTree ConstituencyTree::FromJson(const json &node) {
  ConstituencyTree tree;
  AddJsonNode(node, kNoNode, &tree);
  tree.Finalize();
  return tree;
}

std::optional<NodeId> ConstituencyTree::NodeForSpan(Span span) const {
  auto it = span_index_.find({span.start, span.end});
  if (it == span_index_.end()) return std::nullopt;
  return it->second;
}

bool ConstituencyTree::Dominates(NodeId ancestor, NodeId node) const {
  for (NodeId id = nodes_.at(node).parent; id != kNoNode;
       id = nodes_[id].parent) {
    if (id == ancestor) return true;
  }
  return false;
}

NodeId ConstituencyTree::LowestCommonAncestor(NodeId a, NodeId b) const {
  while (depth_.at(a) > depth_.at(b)) a = nodes_[a].parent;
  while (depth_[b] > depth_[a]) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

std::vector<NodeId> ConstituencyTree::LowestNodesBySpan() const {
  std::vector<NodeId> result;
  result.reserve(span_index_.size());
  for (const auto &[key, id] : span_index_) result.push_back(id);
  return result;
}

json ConstituencyTree::NodeToJson(NodeId id) const {
  const ConstNode &node = nodes_[id];
  json out = {{"label", node.label}};
  if (!node.is_leaf()) {
    json children = json::array();
    for (NodeId child : node.children) children.push_back(NodeToJson(child));
    out["children"] = std::move(children);
  }
  return out;
}

json ConstituencyTree::ToJson() const {
  if (nodes_.empty()) return json::object();
  return NodeToJson(root());
}

void ConstituencyTree::AppendBracketed(NodeId id,
                                       const std::vector<Token> &tokens,
                                       std::string *out) const {
  const ConstNode &node = nodes_[id];
  *out += "(" + node.label;
  if (node.is_leaf()) {
    int index = node.span.start;
    *out += " ";
    *out += index < static_cast<int>(tokens.size()) ? tokens[index].form
                                                    : std::string("_");
  } else {
    for (NodeId child : node.children) {
      *out += " ";
      AppendBracketed(child, tokens, out);
    }
  }
  *out += ")";
}

std::string ConstituencyTree::ToBracketed(
    const std::vector<Token> &tokens) const {
  std::string out;
  if (!nodes_.empty()) AppendBracketed(root(), tokens, &out);
  return out;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsCoreRole(std::string_view role) {
  if (role == "arga") return true;
  return role.size() == 4 && role.substr(0, 3) == "arg" && role[3] >= '0' &&
         role[3] <= '5';
}

bool IsIgnoredRole(std::string_view role) {
  return role.starts_with("argm") || role.starts_with("c-") ||
         role.starts_with("r-");
}

bool IsRolesetLabel(std::string_view label) {
  size_t dot = label.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return false;
  std::string_view sense = label.substr(dot + 1);
  if (sense.size() != 2) return false;
  return std::all_of(sense.begin(), sense.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

FrameInstance ParseFrame(const json &record, int num_tokens) {
  FrameInstance frame;
  frame.roleset = RequireString(record, "roleset");
  if (!IsRolesetLabel(frame.roleset)) {
    throw SchemaError("roleset \"" + frame.roleset +
                      "\" does not match lemma.NN");
  }
  frame.v =
      ParseSpan(RequireField(record, "v"), num_tokens, frame.roleset + " v");
  if (record.contains("roles")) {
    const json &roles = record["roles"];
    if (!roles.is_object()) throw SchemaError("\"roles\" must be an object");
    for (const auto &[key, value] : roles.items()) {
      std::string role = ToLower(key);
      if (IsIgnoredRole(role)) continue;
      if (!IsCoreRole(role)) {
        throw SchemaError("unknown role label \"" + key + "\"");
      }
      Span span = ParseSpan(value, num_tokens, frame.roleset + " " + role);
      if (!frame.roles.emplace(role, span).second) {
        throw SchemaError("duplicate role \"" + role + "\"");
      }
    }
  }
  return frame;
}

Utterance ParseUtterance(const json &record) {
  if (!record.is_object()) throw SchemaError("record must be a JSON object");
  Utterance utterance;
  utterance.id = RequireString(record, "id");

  const json &tokens = RequireField(record, "tokens");
  if (!tokens.is_array()) throw SchemaError("\"tokens\" must be an array");
  for (const json &entry : tokens) {
    Token token;
    token.index = static_cast<int>(utterance.tokens.size());
    token.form = RequireString(entry, "form");
    token.lemma = ToLower(RequireString(entry, "lemma"));
    token.pos = ToLower(RequireString(entry, "pos"));
    if (token.lemma.empty()) {
      throw SchemaError("token " + std::to_string(token.index) +
                        " has an empty lemma");
    }
    utterance.tokens.push_back(std::move(token));
  }

  const json &tree = RequireField(record, "tree");
  if (!tree.is_object()) throw SchemaError("\"tree\" must be an object");
  if (tree.contains("ptb")) {
    if (!tree["ptb"].is_string()) throw SchemaError("\"ptb\" must be a string");
    utterance.tree =
        ConstituencyTree::FromBracketed(tree["ptb"].get<std::string>());
  } else {
    utterance.tree = ConstituencyTree::FromJson(tree);
  }
  if (utterance.tree.num_tokens() !=
      static_cast<int>(utterance.tokens.size())) {
    throw TreeError("tree covers " +
                    std::to_string(utterance.tree.num_tokens()) +
                    " tokens but the record has " +
                    std::to_string(utterance.tokens.size()));
  }

  if (record.contains("frames")) {
    const json &frames = record["frames"];
    if (!frames.is_array()) throw SchemaError("\"frames\" must be an array");
    for (const json &frame : frames) {
      utterance.frames.push_back(
          ParseFrame(frame, static_cast<int>(utterance.tokens.size())));
    }
  }
  return utterance;
}

json FrameToJson(const FrameInstance &frame) {
  json roles = json::object();
  for (const auto &[role, span] : frame.roles) roles[role] = SpanToJson(span);
  return {{"roleset", frame.roleset},
          {"v", SpanToJson(frame.v)},
          {"roles", std::move(roles)}};
}

json UtteranceToJson(const Utterance &utterance,
                     const std::vector<FrameInstance> &frames) {
  json tokens = json::array();
  for (const Token &token : utterance.tokens) {
    tokens.push_back(
        {{"form", token.form}, {"lemma", token.lemma}, {"pos", token.pos}});
  }
  json frame_list = json::array();
  for (const FrameInstance &frame : frames) {
    frame_list.push_back(FrameToJson(frame));
  }
  return {{"id", utterance.id},
          {"tokens", std::move(tokens)},
          {"tree", utterance.tree.ToJson()},
          {"frames", std::move(frame_list)}};
}

json UtteranceToJson(const Utterance &utterance) {
  return UtteranceToJson(utterance, utterance.frames);
}

std::vector<Utterance> ReadCorpus(std::istream &in,
                                  const std::string &source_name) {
  std::vector<Utterance> corpus;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string where = source_name + ":" + std::to_string(line_number);
    try {
      json record;
      try {
        record = json::parse(line);
      } catch (const json::parse_error &e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
      }
      corpus.push_back(ParseUtterance(record));
    } catch (Error &e) {
      e.AddContext(where);
      throw;
    }
  }
  return corpus;
}

std::vector<Utterance> ReadCorpus(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return ReadCorpus(in, path);
}

}  // namespace cxg
