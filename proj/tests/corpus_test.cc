#include "cxg/corpus.h"

#include <random>
#include <sstream>

#include "cxg/errors.h"
#include "doctest.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/synthetic.h"

namespace cxg {
namespace {

using nlohmann::json;
using testing::MakeUtterance;

json Record(const std::string &ptb, int num_tokens) {
  json tokens = json::array();
  for (int i = 0; i < num_tokens; ++i) {
    tokens.push_back({{"form", "W" + std::to_string(i)},
                      {"lemma", "w" + std::to_string(i)},
                      {"pos", "x"}});
  }
  return {{"id", "u"}, {"tokens", tokens}, {"tree", {{"ptb", ptb}}}};
}

TEST_CASE("bracketed trees get token spans") {
  ConstituencyTree tree = ConstituencyTree::FromBracketed(
      "(s (np (det the) (noun dog)) (verb ran))");
  REQUIRE(tree.size() == 5);
  CHECK(tree.num_tokens() == 3);
  CHECK(tree.node(0).label == "s");
  CHECK(tree.node(0).span == Span{0, 3});
  CHECK(tree.node(1).span == Span{0, 2});
  CHECK(tree.node(4).span == Span{2, 3});
  CHECK(tree.node(4).is_leaf());
  CHECK(tree.depth(2) == 2);
}

TEST_CASE("an empty outer bracket is unwrapped") {
  ConstituencyTree tree =
      ConstituencyTree::FromBracketed("( (s (np Moses) (verb ran)) )");
  CHECK(tree.node(0).label == "s");
  CHECK(tree.num_tokens() == 2);
}

TEST_CASE("malformed bracketing is a TreeError") {
  CHECK_THROWS_AS(ConstituencyTree::FromBracketed("(s (np Moses)"), TreeError);
  CHECK_THROWS_AS(ConstituencyTree::FromBracketed("(s (np Moses)))"),
                  TreeError);
  CHECK_THROWS_AS(ConstituencyTree::FromBracketed(""), TreeError);
}

TEST_CASE("node for span") {
  ConstituencyTree tree =
      ConstituencyTree::FromBracketed("(s (x (a A) (b B)) (y (c C) (d D)))");
  CHECK(tree.NodeForSpan({0, 2}) == 1);
  CHECK(tree.NodeForSpan({0, 4}) == 0);
  CHECK_FALSE(tree.NodeForSpan({1, 3}).has_value());
  CHECK_FALSE(tree.NodeForSpan({0, 5}).has_value());
}

TEST_CASE("unary chains resolve to the lowest node") {
  ConstituencyTree tree =
      ConstituencyTree::FromBracketed("(s (np (np (noun Moses))) (verb ran))");
  std::optional<NodeId> node = tree.NodeForSpan({0, 1});
  REQUIRE(node.has_value());
  CHECK(tree.node(*node).label == "noun");
  CHECK(tree.Preterminal(1) == 4);
}

TEST_CASE("dominance and lowest common ancestor") {
  ConstituencyTree tree = ConstituencyTree::FromBracketed(
      "(s (np Moses) (vp (verb told) (np (det the) (noun people))))");
  // 0 s, 1 np, 2 vp, 3 verb, 4 np, 5 det, 6 noun
  CHECK(tree.Dominates(0, 6));
  CHECK(tree.Dominates(2, 5));
  CHECK_FALSE(tree.Dominates(1, 3));
  CHECK_FALSE(tree.Dominates(3, 3));
  CHECK(tree.LowestCommonAncestor(3, 5) == 2);
  CHECK(tree.LowestCommonAncestor(1, 6) == 0);
  CHECK(tree.LowestCommonAncestor(4, 6) == 4);
}

TEST_CASE("lowest nodes by span are ordered") {
  ConstituencyTree tree =
      ConstituencyTree::FromBracketed("(s (np (noun Moses)) (verb ran))");
  std::vector<NodeId> nodes = tree.LowestNodesBySpan();
  std::vector<NodeId> expected = {2, 0, 3};
  CHECK(nodes == expected);
}

TEST_CASE("json and bracketed forms round trip") {
  Utterance u = testing::TargetExample();
  ConstituencyTree again = ConstituencyTree::FromJson(u.tree.ToJson());
  CHECK(again.ToJson() == u.tree.ToJson());
  ConstituencyTree reparsed =
      ConstituencyTree::FromBracketed(u.tree.ToBracketed(u.tokens));
  CHECK(reparsed.ToJson() == u.tree.ToJson());
}

TEST_CASE("node for span agrees with a full scan on random trees") {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    ConstituencyTree tree = testing::RandomTree(rng, 10);
    for (int s = 0; s < tree.num_tokens(); ++s) {
      for (int e = s + 1; e <= tree.num_tokens(); ++e) {
        CHECK(tree.NodeForSpan({s, e}) ==
              testing::OracleNodeForSpan(tree, {s, e}));
      }
    }
  }
}

TEST_CASE("role labels") {
  CHECK(IsCoreRole("arg0"));
  CHECK(IsCoreRole("arg5"));
  CHECK(IsCoreRole("arga"));
  CHECK_FALSE(IsCoreRole("arg6"));
  CHECK_FALSE(IsCoreRole("argm-tmp"));
  CHECK(IsIgnoredRole("argm-tmp"));
  CHECK(IsIgnoredRole("c-arg1"));
  CHECK(IsIgnoredRole("r-arg0"));
  CHECK_FALSE(IsIgnoredRole("arg1"));
  CHECK(IsRolesetLabel("tell.01"));
  CHECK(IsRolesetLabel("take_off.02"));
  CHECK_FALSE(IsRolesetLabel("tell"));
  CHECK_FALSE(IsRolesetLabel("tell.x1"));
}

TEST_CASE("ingestion lowercases and keeps core roles") {
  Utterance u = testing::TrainingExample();
  CHECK(u.tokens.size() == 10);
  CHECK(u.tokens[4].lemma == "tell");
  REQUIRE(u.frames.size() == 1);
  const FrameInstance &f = u.frames[0];
  CHECK(f.roleset == "tell.01");
  CHECK(f.v == Span{4, 5});
  CHECK(f.roles.size() == 3);
  CHECK_FALSE(f.roles.contains("argm-tmp"));
  CHECK(f.roles.at("arg2") == Span{5, 6});
}

TEST_CASE("a span past the end is a SchemaError") {
  json record = Record("(s (a A) (b B))", 2);
  record["frames"] = {
      {{"roleset", "x.01"}, {"v", {0, 1}}, {"roles", {{"arg0", {0, 3}}}}}};
  CHECK_THROWS_AS(ParseUtterance(record), SchemaError);
}

TEST_CASE("schema violations") {
  json good = Record("(s (a A) (b B))", 2);
  CHECK_NOTHROW(ParseUtterance(good));

  json missing_id = good;
  missing_id.erase("id");
  CHECK_THROWS_AS(ParseUtterance(missing_id), SchemaError);

  json empty_lemma = good;
  empty_lemma["tokens"][0]["lemma"] = "";
  CHECK_THROWS_AS(ParseUtterance(empty_lemma), SchemaError);

  json bad_roleset = good;
  bad_roleset["frames"] = {{{"roleset", "x"}, {"v", {0, 1}}, {"roles", {}}}};
  CHECK_THROWS_AS(ParseUtterance(bad_roleset), SchemaError);

  json empty_span = good;
  empty_span["frames"] = {
      {{"roleset", "x.01"}, {"v", {1, 1}}, {"roles", json::object()}}};
  CHECK_THROWS_AS(ParseUtterance(empty_span), SchemaError);

  json unknown_role = good;
  unknown_role["frames"] = {
      {{"roleset", "x.01"}, {"v", {0, 1}}, {"roles", {{"agent", {1, 2}}}}}};
  CHECK_THROWS_AS(ParseUtterance(unknown_role), SchemaError);
}

TEST_CASE("token and leaf counts must agree") {
  CHECK_THROWS_AS(ParseUtterance(Record("(s (a A) (b B))", 3)), TreeError);
}

TEST_CASE("utterance json round trip") {
  Utterance u = testing::TrainingExample();
  Utterance again = ParseUtterance(UtteranceToJson(u));
  CHECK(again.id == u.id);
  CHECK(again.frames == u.frames);
  CHECK(again.tree.ToJson() == u.tree.ToJson());
  json no_frames = UtteranceToJson(u, {});
  CHECK(no_frames["frames"].empty());
}

TEST_CASE("corpus errors carry the line number") {
  std::istringstream in(Record("(s (a A) (b B))", 2).dump() +
                        "\n\n{\"id\": \"bad\"}\n");
  try {
    ReadCorpus(in, "mem.jsonl");
    FAIL("expected SchemaError");
  } catch (const SchemaError &e) {
    CHECK(e.context().find("mem.jsonl:3") != std::string::npos);
  }
  std::istringstream junk("{not json\n");
  CHECK_THROWS_AS(ReadCorpus(junk, "junk"), SchemaError);
}

TEST_CASE("test utterance helper") {
  Utterance u = MakeUtterance("h", "(s (np Mary) (vp (verb sleeps)))");
  CHECK(u.tokens.size() == 2);
  CHECK(u.tokens[1].lemma == "sleeps");
  CHECK(u.tokens[1].pos == "verb");
}

}  // namespace
}  // namespace cxg
