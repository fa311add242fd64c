#include "cxg/learner.h"

#include "cxg/errors.h"
#include "doctest.h"
#include "support/fixtures.h"

namespace cxg {
namespace {

using testing::MakeUtterance;

FrameInstance Frame(std::string roleset, Span v,
                    std::map<std::string, Span> roles) {
  return {std::move(roleset), v, std::move(roles)};
}

TEST_CASE("worked example analysis") {
  Utterance u = testing::TrainingExample();
  AnalysisResult result = AnalyzeInstance(u, u.frames[0]);
  REQUIRE(result.analysis.has_value());
  const InstanceAnalysis &a = *result.analysis;
  CHECK(a.lemma == "tell");
  CHECK(a.pos == "verb");
  CHECK(a.mnemonic_prefix == "arg0(np)-v(v)-arg2(np)-arg1(np)");
  REQUIRE(a.slots.size() == 3);
  CHECK(a.slots[0].slot.role == "arg0");
  CHECK(a.slots[1].slot.role == "arg2");
  CHECK(a.slots[2].slot.role == "arg1");
  CHECK(PathToString(a.slots[0].slot.path) == "[up sentence, down vp]");
  CHECK(PathToString(a.slots[1].slot.path) == "[up vp]");
  std::vector<PrecedenceConstraint> expected = {{"arg2", "arg1"}};
  CHECK(a.constraints == expected);
}

TEST_CASE("learning the worked example") {
  Utterance u = testing::TrainingExample();
  ConstructionNetwork net;
  LearnOutcome outcome = LearnInstance(net, u, u.frames[0]);
  REQUIRE(outcome.learnt());
  CHECK(net.num_constructions() == 3);
  CHECK(net.links().size() == 3);
  CHECK(net.MnemonicOf(outcome.argst) == "arg0(np)-v(v)-arg2(np)-arg1(np)-1");
  CHECK(net.MnemonicOf(outcome.fe) == "tell(verb)");
  CHECK(net.MnemonicOf(outcome.roleset) == "tell.01");
  CHECK(net.LinkWeight(outcome.fe, outcome.argst) == 1);
  CHECK(net.LinkWeight(outcome.fe, outcome.roleset) == 1);
  CHECK(net.LinkWeight(outcome.argst, outcome.roleset) == 1);
}

TEST_CASE("ten copies accumulate") {
  std::vector<Utterance> corpus(10, testing::TrainingExample());
  ConstructionNetwork net;
  LearnStats stats = LearnCorpus(net, corpus);
  CHECK(stats.instances_seen == 10);
  CHECK(stats.instances_learnt == 10);
  CHECK(net.num_constructions() == 3);
  for (const auto &c : net.argstruct_cxns()) CHECK(c.freq == 10);
  for (const auto &l : net.links()) CHECK(l.weight == 10);
}

TEST_CASE("indistinguishable slots are ordered pairwise") {
  Utterance u = MakeUtterance(
      "three", "(s (np Kim) (vp (verb gave) (np A) (np B) (np C)))");
  FrameInstance f =
      Frame("give.01", {1, 2},
            {{"arg0", {2, 3}}, {"arg1", {3, 4}}, {"arg2", {4, 5}}});
  AnalysisResult result = AnalyzeInstance(u, f);
  REQUIRE(result.analysis.has_value());
  std::vector<PrecedenceConstraint> expected = {
      {"arg0", "arg1"}, {"arg0", "arg2"}, {"arg1", "arg2"}};
  CHECK(result.analysis->constraints == expected);
}

TEST_CASE("distinguishable slots get no constraint") {
  Utterance u = MakeUtterance("two", "(s (np Kim) (vp (verb saw) (np Lee)))");
  FrameInstance f =
      Frame("see.01", {1, 2}, {{"arg0", {0, 1}}, {"arg1", {2, 3}}});
  AnalysisResult result = AnalyzeInstance(u, f);
  REQUIRE(result.analysis.has_value());
  CHECK(result.analysis->constraints.empty());
  CHECK(result.analysis->mnemonic_prefix == "arg0(np)-v(v)-arg1(np)");
}

TEST_CASE("skip reasons") {
  Utterance u = MakeUtterance(
      "skip",
      "(s (np Kim) (vp (verb gave) (np (det the) (noun dog)) (np Lee)))");
  ConstructionNetwork net;

  SUBCASE("a role that is not a constituent") {
    FrameInstance f = Frame("give.01", {1, 2}, {{"arg1", {3, 5}}});
    CHECK(AnalyzeInstance(u, f).skipped == SkipReason::kNonConstituentRole);
    CHECK(LearnInstance(net, u, f).skipped == SkipReason::kNonConstituentRole);
  }
  SUBCASE("no core roles") {
    FrameInstance f = Frame("give.01", {1, 2}, {});
    CHECK(AnalyzeInstance(u, f).skipped == SkipReason::kNoCoreRoles);
  }
  SUBCASE("a role containing the predicate") {
    FrameInstance f = Frame("give.01", {1, 2}, {{"arg0", {1, 5}}});
    CHECK(AnalyzeInstance(u, f).skipped == SkipReason::kDegenerateNesting);
  }
  SUBCASE("a role on the predicate itself") {
    FrameInstance f = Frame("give.01", {1, 2}, {{"arg0", {1, 2}}});
    CHECK(AnalyzeInstance(u, f).skipped == SkipReason::kDegenerateNesting);
  }
  SUBCASE("two roles on one constituent") {
    FrameInstance f =
        Frame("give.01", {1, 2}, {{"arg1", {4, 5}}, {"arg2", {4, 5}}});
    CHECK(AnalyzeInstance(u, f).skipped == SkipReason::kDegenerateNesting);
  }
  CHECK(net.num_constructions() == 0);
}

TEST_CASE("stats count skips by reason") {
  Utterance u = testing::TrainingExample();
  Utterance bad = u;
  bad.frames[0].roles = {{"arg1", {5, 7}}};
  std::vector<Utterance> corpus = {u, bad, bad};
  ConstructionNetwork net;
  LearnStats stats = LearnCorpus(net, corpus);
  CHECK(stats.instances_seen == 3);
  CHECK(stats.instances_learnt == 1);
  CHECK(stats.instances_skipped == 2);
  nlohmann::json json = stats.ToJson();
  CHECK(json["skipReasons"]["NonConstituentRole"] == 2);
  CHECK(json["instancesLearnt"] == 1);
}

TEST_CASE("paths through the lowest common ancestor") {
  ConstituencyTree tree = ConstituencyTree::FromBracketed(
      "(s (np Moses) (vp (aux is) (vp (verb told) (pp (adp by) (np Kim)))))");
  // 0 s, 1 np, 2 vp, 3 aux, 4 vp, 5 verb, 6 pp, 7 adp, 8 np
  CHECK(ExtractPath(tree, 1, 5) ==
        Path{PathStep::Up("s"), PathStep::Down("vp"), PathStep::Down("vp")});
  CHECK(ExtractPath(tree, 8, 5) ==
        Path{PathStep::Up("pp"), PathStep::Up("vp")});
  CHECK(ExtractPath(tree, 3, 5) ==
        Path{PathStep::Up("vp"), PathStep::Down("vp")});
  CHECK_THROWS_AS(ExtractPath(tree, 4, 5), DegenerateNesting);
  CHECK_THROWS_AS(ExtractPath(tree, 5, 5), DegenerateNesting);
}

TEST_CASE("multi-token predicates key on joined lemmas") {
  Utterance u = MakeUtterance(
      "phrasal",
      "(s (np Kim) (vp (v (verb took) (prt off)) (np (det the) (noun hat))))");
  FrameInstance f =
      Frame("take_off.01", {1, 3}, {{"arg0", {0, 1}}, {"arg1", {3, 5}}});
  AnalysisResult result = AnalyzeInstance(u, f);
  REQUIRE(result.analysis.has_value());
  CHECK(result.analysis->lemma == "took_off");
  CHECK(result.analysis->pos == "verb");
  CHECK(result.analysis->slots.size() == 2);
}

}  // namespace
}  // namespace cxg
