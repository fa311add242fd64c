#ifndef CXG_ANALYTICS_H_
#define CXG_ANALYTICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cxg/grammar.h"

namespace cxg {

enum class CxnGroup { kAll, kFrameEvoking, kArgStruct, kRoleset };

std::string_view CxnGroupName(CxnGroup group);
// Accepts "all", "fe", "argst" and "roleset".
std::optional<CxnGroup> ParseCxnGroup(std::string_view name);

struct CxnFrequency {
  CategoryId id{};
  std::string mnemonic;
  int64_t freq = 0;
};

// All constructions of a group, in store order (fe, argst, roleset).
std::vector<CxnFrequency> GroupMembers(const ConstructionNetwork &net,
                                       CxnGroup group);

struct RankFrequencyRow {
  int rank = 0;  // 1-based
  CategoryId id{};
  std::string mnemonic;
  int64_t freq = 0;
};

struct RankFrequencyTable {
  std::vector<RankFrequencyRow> rows;

  // (log10 rank, log10 freq) per row.
  std::vector<std::pair<double, double>> LogLogPoints() const;
  std::string ToCsv() const;
};

// Sorted by frequency descending, ties by category id.
RankFrequencyTable RankFrequency(const ConstructionNetwork &net,
                                 CxnGroup group);

// Fraction of the group's constructions seen exactly once. Throws EmptyGroup.
double HapaxRatio(const ConstructionNetwork &net, CxnGroup group);

struct RolesetAssociation {
  CategoryId id{};
  std::string roleset;
  int64_t weight = 0;
};

// Rolesets linked to an argument structure category, by weight descending
// (ties by label). Throws UnknownCategory.
std::vector<RolesetAssociation> AssociatedRolesets(
    const ConstructionNetwork &net, CategoryId argst);

// Cosine of the two frame-evoking categories' vectors of fe-argst link
// weights; 0 when either vector is zero. Throws UnknownCategory.
double CosineSimilarity(const ConstructionNetwork &net, CategoryId fe_a,
                        CategoryId fe_b);

struct Neighbor {
  CategoryId id{};
  std::string mnemonic;
  double similarity = 0;
};

// Top-k other frame-evoking categories by cosine similarity, ties by id.
std::vector<Neighbor> NearestFrameEvoking(const ConstructionNetwork &net,
                                          CategoryId fe, size_t k);

struct GroupStats {
  int64_t count = 0;
  int64_t absolute_frequency = 0;
  double mean_frequency = 0;
  int64_t median_frequency = 0;  // lower middle for even counts
  int64_t non_hapax = 0;
};

struct GrammarReport {
  GroupStats all;
  GroupStats frame_evoking;
  GroupStats argstruct;
  GroupStats roleset;
  // 2 * |links of kind| / |constructions with at least one link of kind|.
  double degree_argst_roleset = 0;
  double degree_fe_roleset = 0;
  double degree_fe_argst = 0;
};

GroupStats ComputeGroupStats(const ConstructionNetwork &net, CxnGroup group);
double AverageDegree(const ConstructionNetwork &net, LinkKind kind);
GrammarReport ComputeGrammarReport(const ConstructionNetwork &net);

// Plain-text report in the usual grammar report layout.
std::string FormatGrammarReport(const GrammarReport &report,
                                std::string_view name);

// 40688 -> "40,688".
std::string GroupThousands(int64_t value);

}  // namespace cxg

#endif  // CXG_ANALYTICS_H_
