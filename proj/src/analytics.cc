#include "cxg/analytics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

#include "cxg/errors.h"

namespace cxg {

std::string_view CxnGroupName(CxnGroup group) {
  switch (group) {
    case CxnGroup::kAll:
      return "all";
    case CxnGroup::kFrameEvoking:
      return "fe";
    case CxnGroup::kArgStruct:
      return "argst";
    case CxnGroup::kRoleset:
      return "roleset";
  }
  return "?";
}

std::optional<CxnGroup> ParseCxnGroup(std::string_view name) {
  for (CxnGroup group : {CxnGroup::kAll, CxnGroup::kFrameEvoking,
                         CxnGroup::kArgStruct, CxnGroup::kRoleset}) {
    if (CxnGroupName(group) == name) return group;
  }
  return std::nullopt;
}

std::vector<CxnFrequency> GroupMembers(const ConstructionNetwork &net,
                                       CxnGroup group) {
  std::vector<CxnFrequency> members;
  auto add = [&members](const Category &category, int64_t freq) {
    members.push_back({category.id, category.mnemonic, freq});
  };
  if (group == CxnGroup::kAll || group == CxnGroup::kFrameEvoking) {
    for (const auto &cxn : net.frame_evoking_cxns())
      add(cxn.category, cxn.freq);
  }
  if (group == CxnGroup::kAll || group == CxnGroup::kArgStruct) {
    for (const auto &cxn : net.argstruct_cxns()) add(cxn.category, cxn.freq);
  }
  if (group == CxnGroup::kAll || group == CxnGroup::kRoleset) {
    for (const auto &cxn : net.roleset_cxns()) add(cxn.category, cxn.freq);
  }
  return members;
}

std::vector<std::pair<double, double>> RankFrequencyTable::LogLogPoints()
    const {
  std::vector<std::pair<double, double>> points;
  points.reserve(rows.size());
  for (const RankFrequencyRow &row : rows) {
    points.emplace_back(std::log10(static_cast<double>(row.rank)),
                        std::log10(static_cast<double>(row.freq)));
  }
  return points;
}

std::string RankFrequencyTable::ToCsv() const {
  std::string out = "rank,id,mnemonic,freq,log10_rank,log10_freq\n";
  char numbers[64];
  for (const RankFrequencyRow &row : rows) {
    std::string mnemonic = row.mnemonic;
    if (mnemonic.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : mnemonic) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      mnemonic = quoted + "\"";
    }
    std::snprintf(numbers, sizeof(numbers), "%.6f,%.6f",
                  std::log10(static_cast<double>(row.rank)),
                  std::log10(static_cast<double>(row.freq)));
    out += std::to_string(row.rank) + "," + std::to_string(ToInt(row.id)) +
           "," + mnemonic + "," + std::to_string(row.freq) + "," + numbers +
           "\n";
  }
  return out;
}

RankFrequencyTable RankFrequency(const ConstructionNetwork &net,
                                 CxnGroup group) {
  std::vector<CxnFrequency> members = GroupMembers(net, group);
  std::sort(members.begin(), members.end(),
            [](const CxnFrequency &x, const CxnFrequency &y) {
              return std::make_tuple(-x.freq, ToInt(x.id)) <
                     std::make_tuple(-y.freq, ToInt(y.id));
            });
  RankFrequencyTable table;
  table.rows.reserve(members.size());
  int rank = 0;
  for (CxnFrequency &member : members) {
    table.rows.push_back(
        {++rank, member.id, std::move(member.mnemonic), member.freq});
  }
  return table;
}

double HapaxRatio(const ConstructionNetwork &net, CxnGroup group) {
  std::vector<CxnFrequency> members = GroupMembers(net, group);
  if (members.empty()) {
    throw EmptyGroup(std::string("group ") + std::string(CxnGroupName(group)) +
                     " is empty");
  }
  auto hapaxes =
      std::count_if(members.begin(), members.end(),
                    [](const CxnFrequency &m) { return m.freq == 1; });
  return static_cast<double>(hapaxes) / static_cast<double>(members.size());
}

std::vector<RolesetAssociation> AssociatedRolesets(
    const ConstructionNetwork &net, CategoryId argst) {
  net.argstruct(argst);
  std::vector<RolesetAssociation> associations;
  for (size_t index : net.Incident(argst)) {
    const CategorialLink &link = net.links()[index];
    if (link.kind != LinkKind::kArgstRoleset) continue;
    const RolesetCxn &roleset = net.roleset(link.Other(argst));
    associations.push_back({roleset.category.id, roleset.roleset, link.weight});
  }
  std::sort(associations.begin(), associations.end(),
            [](const RolesetAssociation &x, const RolesetAssociation &y) {
              if (x.weight != y.weight) return x.weight > y.weight;
              return x.roleset < y.roleset;
            });
  return associations;
}

namespace {

// Sparse vector of fe-argst link weights, sorted by argst category id.
using WeightVector = std::vector<std::pair<CategoryId, double>>;

WeightVector ArgstWeights(const ConstructionNetwork &net, CategoryId fe) {
  net.frame_evoking(fe);
  WeightVector weights;
  for (size_t index : net.Incident(fe)) {
    const CategorialLink &link = net.links()[index];
    if (link.kind == LinkKind::kFeArgst) {
      weights.emplace_back(link.Other(fe), static_cast<double>(link.weight));
    }
  }
  std::sort(weights.begin(), weights.end());
  return weights;
}

double SquaredNorm(const WeightVector &v) {
  double sum = 0;
  for (const auto &[id, weight] : v) sum += weight * weight;
  return sum;
}

double Cosine(const WeightVector &a, const WeightVector &b) {
  double norm_a = SquaredNorm(a);
  double norm_b = SquaredNorm(b);
  if (norm_a == 0 || norm_b == 0) return 0;
  double dot = 0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (x->first < y->first) {
      ++x;
    } else if (y->first < x->first) {
      ++y;
    } else {
      dot += x->second * y->second;
      ++x;
      ++y;
    }
  }
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), 0.0, 1.0);
}

}  // namespace

double CosineSimilarity(const ConstructionNetwork &net, CategoryId fe_a,
                        CategoryId fe_b) {
  return Cosine(ArgstWeights(net, fe_a), ArgstWeights(net, fe_b));
}

std::vector<Neighbor> NearestFrameEvoking(const ConstructionNetwork &net,
                                          CategoryId fe, size_t k) {
  auto target = ArgstWeights(net, fe);
  std::vector<Neighbor> neighbors;
  for (const FrameEvokingCxn &cxn : net.frame_evoking_cxns()) {
    if (cxn.category.id == fe) continue;
    neighbors.push_back({cxn.category.id, cxn.category.mnemonic,
                         Cosine(target, ArgstWeights(net, cxn.category.id))});
  }
  std::sort(neighbors.begin(), neighbors.end(),
            [](const Neighbor &x, const Neighbor &y) {
              if (x.similarity != y.similarity) {
                return x.similarity > y.similarity;
              }
              return x.id < y.id;
            });
  if (neighbors.size() > k) neighbors.resize(k);
  return neighbors;
}

GroupStats ComputeGroupStats(const ConstructionNetwork &net, CxnGroup group) {
  std::vector<CxnFrequency> members = GroupMembers(net, group);
  GroupStats stats;
  stats.count = static_cast<int64_t>(members.size());
  if (members.empty()) return stats;
  std::vector<int64_t> freqs;
  freqs.reserve(members.size());
  for (const CxnFrequency &member : members) {
    stats.absolute_frequency += member.freq;
    if (member.freq != 1) ++stats.non_hapax;
    freqs.push_back(member.freq);
  }
  stats.mean_frequency = static_cast<double>(stats.absolute_frequency) /
                         static_cast<double>(stats.count);
  size_t middle = (freqs.size() - 1) / 2;
  std::nth_element(freqs.begin(), freqs.begin() + static_cast<long>(middle),
                   freqs.end());
  stats.median_frequency = freqs[middle];
  return stats;
}

double AverageDegree(const ConstructionNetwork &net, LinkKind kind) {
  int64_t links = 0;
  std::set<CategoryId> participants;
  for (const CategorialLink &link : net.links()) {
    if (link.kind != kind) continue;
    ++links;
    participants.insert(link.a);
    participants.insert(link.b);
  }
  if (participants.empty()) return 0;
  return 2.0 * static_cast<double>(links) /
         static_cast<double>(participants.size());
}

GrammarReport ComputeGrammarReport(const ConstructionNetwork &net) {
  GrammarReport report;
  report.all = ComputeGroupStats(net, CxnGroup::kAll);
  report.frame_evoking = ComputeGroupStats(net, CxnGroup::kFrameEvoking);
  report.argstruct = ComputeGroupStats(net, CxnGroup::kArgStruct);
  report.roleset = ComputeGroupStats(net, CxnGroup::kRoleset);
  report.degree_argst_roleset = AverageDegree(net, LinkKind::kArgstRoleset);
  report.degree_fe_roleset = AverageDegree(net, LinkKind::kFeRoleset);
  report.degree_fe_argst = AverageDegree(net, LinkKind::kFeArgst);
  return report;
}

std::string GroupThousands(int64_t value) {
  std::string digits = std::to_string(value < 0 ? -value : value);
  std::string out;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return value < 0 ? "-" + out : out;
}

std::string FormatGrammarReport(const GrammarReport &report,
                                std::string_view name) {
  const std::string rule = "--------------------------------------------\n";
  auto fixed = [](double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return std::string(buffer);
  };
  std::string title(name);
  for (char &c : title)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

  std::string out = rule;
  out += "GRAMMAR REPORT FOR " + title + "\n";
  out += "(<construction-network: " + GroupThousands(report.all.count) +
         " cxns>)\n";
  out += rule;
  out += "Number of constructions:\n";
  out += "   All cxns: " + GroupThousands(report.all.count) + "\n";
  out +=
      "   Frame-evoking cxns: " + GroupThousands(report.frame_evoking.count) +
      "\n";
  out +=
      "   Argument structure cxns: " + GroupThousands(report.argstruct.count) +
      "\n";
  out += "   Roleset cxns: " + GroupThousands(report.roleset.count) + "\n";
  out += rule;
  out += "Individual construction frequency information:\n";
  auto group = [&](const char *label, const GroupStats &stats) {
    out += std::string(" ") + label + ":\n";
    out +=
        "    Absolute frequency: " + GroupThousands(stats.absolute_frequency) +
        "\n";
    out += "    Mean frequency: " + fixed(stats.mean_frequency) + "\n";
    out += "    Median frequency: " + GroupThousands(stats.median_frequency) +
           "\n";
    out += "    Number of non-hapax cxns: " + GroupThousands(stats.non_hapax) +
           " of " + GroupThousands(stats.count) + "\n";
  };
  group("All cxns", report.all);
  group("Frame-evoking cxns", report.frame_evoking);
  group("Argument structure cxns", report.argstruct);
  group("Roleset cxns", report.roleset);
  out += rule;
  out += "Construction network information:\n";
  out += "   Average degree (argst-roleset): " +
         fixed(report.degree_argst_roleset) + "\n";
  out += "   Average degree (fe-roleset): " + fixed(report.degree_fe_roleset) +
         "\n";
  out +=
      "   Average degree (fe-argst): " + fixed(report.degree_fe_argst) + "\n";
  out += rule;
  return out;
}

}  // namespace cxg
