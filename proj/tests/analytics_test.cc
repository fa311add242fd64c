#include "cxg/analytics.h"

#include <cmath>
#include <random>

#include "cxg/errors.h"
#include "cxg/learner.h"
#include "doctest.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/synthetic.h"

namespace cxg {
namespace {

// Rolesets r0..r3 with frequencies 5, 3, 3, 1.
ConstructionNetwork FourRolesets() {
  ConstructionNetwork net;
  int freqs[] = {5, 3, 3, 1};
  for (int i = 0; i < 4; ++i) {
    for (int n = 0; n < freqs[i]; ++n) {
      net.FindOrAddRoleset("r" + std::to_string(i) + ".01");
    }
  }
  return net;
}

ConstructionNetwork LearnTrainingExample() {
  ConstructionNetwork net;
  Utterance training = testing::TrainingExample();
  LearnInstance(net, training, training.frames[0]);
  return net;
}

TEST_CASE("rank frequency with ties by id") {
  ConstructionNetwork net = FourRolesets();
  RankFrequencyTable table = RankFrequency(net, CxnGroup::kRoleset);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].mnemonic == "r0.01");
  CHECK(table.rows[1].mnemonic == "r1.01");
  CHECK(table.rows[2].mnemonic == "r2.01");
  CHECK(table.rows[3].mnemonic == "r3.01");
  CHECK(table.rows[2].rank == 3);
  CHECK(table.rows[2].freq == 3);
  auto points = table.LogLogPoints();
  CHECK(points[0].first == 0.0);
  CHECK(points[0].second == doctest::Approx(std::log10(5.0)));
  std::string csv = table.ToCsv();
  CHECK(csv.rfind("rank,id,mnemonic,freq,log10_rank,log10_freq\n", 0) == 0);
  CHECK(csv.find("\n1,0,r0.01,5,") != std::string::npos);
  CHECK(RankFrequency(net, CxnGroup::kArgStruct).rows.empty());
}

TEST_CASE("hapax ratio and group statistics") {
  ConstructionNetwork net = FourRolesets();
  CHECK(HapaxRatio(net, CxnGroup::kRoleset) == 0.25);
  CHECK_THROWS_AS(HapaxRatio(net, CxnGroup::kFrameEvoking), EmptyGroup);
  GroupStats stats = ComputeGroupStats(net, CxnGroup::kRoleset);
  CHECK(stats.count == 4);
  CHECK(stats.absolute_frequency == 12);
  CHECK(stats.mean_frequency == 3.0);
  CHECK(stats.median_frequency == 3);
  CHECK(stats.non_hapax == 3);
  GroupStats empty = ComputeGroupStats(net, CxnGroup::kArgStruct);
  CHECK(empty.count == 0);
  CHECK(empty.mean_frequency == 0);
}

TEST_CASE("the median of an even group is the lower middle") {
  ConstructionNetwork net;
  for (int n = 0; n < 4; ++n) net.FindOrAddRoleset("a.01");
  net.FindOrAddRoleset("b.01");
  CHECK(ComputeGroupStats(net, CxnGroup::kRoleset).median_frequency == 1);
}

TEST_CASE("associated rolesets") {
  ConstructionNetwork net = LearnTrainingExample();
  CategoryId argst = net.argstruct_cxns()[0].category.id;
  CategoryId fe = net.frame_evoking_cxns()[0].category.id;
  CategoryId other = net.FindOrAddRoleset("say.01").cxn.category.id;
  CategoryId third = net.FindOrAddRoleset("ask.01").cxn.category.id;
  net.AddOrBumpLink(argst, other, LinkKind::kArgstRoleset);
  net.AddOrBumpLink(argst, other, LinkKind::kArgstRoleset);
  net.AddOrBumpLink(argst, third, LinkKind::kArgstRoleset);
  auto list = AssociatedRolesets(net, argst);
  REQUIRE(list.size() == 3);
  CHECK(list[0].roleset == "say.01");
  CHECK(list[0].weight == 2);
  CHECK(list[1].roleset == "ask.01");
  CHECK(list[2].roleset == "tell.01");
  CHECK_THROWS_AS(AssociatedRolesets(net, fe), UnknownCategory);
  CHECK_THROWS_AS(AssociatedRolesets(net, CategoryId{77}), UnknownCategory);
}

TEST_CASE("cosine similarity") {
  ConstructionNetwork net;
  CategoryId a = net.FindOrAddFrameEvoking("tell", "verb").cxn.category.id;
  CategoryId b = net.FindOrAddFrameEvoking("say", "verb").cxn.category.id;
  CategoryId c = net.FindOrAddFrameEvoking("sleep", "verb").cxn.category.id;
  CategoryId lonely = net.FindOrAddFrameEvoking("be", "verb").cxn.category.id;
  std::vector<RoleSlot> s1 = {{"arg0", "np", {PathStep::Up("s")}}};
  std::vector<RoleSlot> s2 = {{"arg1", "np", {PathStep::Up("vp")}}};
  CategoryId x = net.FindOrAddArgStruct(s1, {}, "x").cxn.category.id;
  CategoryId y = net.FindOrAddArgStruct(s2, {}, "y").cxn.category.id;
  net.AddOrBumpLink(a, x, LinkKind::kFeArgst);
  net.AddOrBumpLink(b, x, LinkKind::kFeArgst);
  net.AddOrBumpLink(b, x, LinkKind::kFeArgst);
  net.AddOrBumpLink(c, y, LinkKind::kFeArgst);
  net.AddOrBumpLink(b, y, LinkKind::kFeArgst);
  CHECK(CosineSimilarity(net, a, a) == doctest::Approx(1.0));
  CHECK(CosineSimilarity(net, a, c) == 0.0);
  CHECK(CosineSimilarity(net, a, lonely) == 0.0);
  CHECK(CosineSimilarity(net, a, b) == doctest::Approx(2 / std::sqrt(5.0)));
  CHECK(CosineSimilarity(net, a, b) == CosineSimilarity(net, b, a));
  CHECK_THROWS_AS(CosineSimilarity(net, a, x), UnknownCategory);

  auto nearest = NearestFrameEvoking(net, b, 2);
  REQUIRE(nearest.size() == 2);
  CHECK(nearest[0].id == a);
  CHECK(nearest[1].id == c);
  CHECK(NearestFrameEvoking(net, b, 10).size() == 3);
}

TEST_CASE("worked example report") {
  ConstructionNetwork net = LearnTrainingExample();
  GrammarReport report = ComputeGrammarReport(net);
  CHECK(report.all.count == 3);
  CHECK(report.frame_evoking.count == 1);
  CHECK(report.argstruct.count == 1);
  CHECK(report.roleset.count == 1);
  CHECK(report.degree_argst_roleset == 1.0);
  CHECK(report.degree_fe_roleset == 1.0);
  CHECK(report.degree_fe_argst == 1.0);
  std::string text = FormatGrammarReport(report, "example");
  CHECK(text.find("GRAMMAR REPORT FOR EXAMPLE") != std::string::npos);
  CHECK(text.find("(<construction-network: 3 cxns>)") != std::string::npos);
  CHECK(text.find("Frame-evoking cxns: 1") != std::string::npos);
  CHECK(text.find("Number of non-hapax cxns: 0 of 3") != std::string::npos);
  CHECK(text.find("Average degree (fe-argst): 1.00") != std::string::npos);
}

TEST_CASE("average degree counts participating constructions") {
  ConstructionNetwork net;
  CategoryId fe = net.FindOrAddFrameEvoking("tell", "verb").cxn.category.id;
  CategoryId r1 = net.FindOrAddRoleset("tell.01").cxn.category.id;
  CategoryId r2 = net.FindOrAddRoleset("tell.02").cxn.category.id;
  net.FindOrAddRoleset("idle.01");
  net.AddOrBumpLink(fe, r1, LinkKind::kFeRoleset);
  net.AddOrBumpLink(fe, r2, LinkKind::kFeRoleset);
  CHECK(AverageDegree(net, LinkKind::kFeRoleset) == doctest::Approx(4.0 / 3));
  CHECK(AverageDegree(net, LinkKind::kFeArgst) == 0.0);
}

TEST_CASE("thousands separators") {
  CHECK(GroupThousands(0) == "0");
  CHECK(GroupThousands(999) == "999");
  CHECK(GroupThousands(40688) == "40,688");
  CHECK(GroupThousands(1234567) == "1,234,567");
  CHECK(GroupThousands(-1234) == "-1,234");
}

TEST_CASE("groups") {
  CHECK(ParseCxnGroup("argst") == CxnGroup::kArgStruct);
  CHECK(CxnGroupName(CxnGroup::kFrameEvoking) == "fe");
  CHECK_FALSE(ParseCxnGroup("links").has_value());
  ConstructionNetwork net = LearnTrainingExample();
  CHECK(GroupMembers(net, CxnGroup::kAll).size() == 3);
}

TEST_CASE("analytics agree with recomputation on random grammars") {
  std::mt19937 rng(123);
  for (int g = 0; g < 20; ++g) {
    ConstructionNetwork net = testing::RandomGrammar(rng);
    auto ranks = testing::OracleRanks(net, CxnGroup::kAll);
    for (const auto &row : RankFrequency(net, CxnGroup::kAll).rows) {
      CHECK(ranks.at(row.id) == row.rank);
    }
    CHECK(HapaxRatio(net, CxnGroup::kArgStruct) ==
          testing::OracleHapaxRatio(net, CxnGroup::kArgStruct));
    for (const auto &x : net.frame_evoking_cxns()) {
      for (const auto &y : net.frame_evoking_cxns()) {
        CHECK(CosineSimilarity(net, x.category.id, y.category.id) ==
              doctest::Approx(
                  testing::OracleCosine(net, x.category.id, y.category.id))
                  .epsilon(1e-9));
      }
    }
  }
}

}  // namespace
}  // namespace cxg
