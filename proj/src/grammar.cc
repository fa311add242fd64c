#include "cxg/grammar.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "cxg/errors.h"

namespace cxg {

namespace {

constexpr std::string_view kSignatureVersion = "sig1";

void AppendField(std::string_view field, std::string *out) {
  *out += std::to_string(field.size());
  *out += ':';
  *out += field;
}

std::string CategoryName(CategoryId id) {
  return "category " + std::to_string(ToInt(id));
}

}  // namespace

std::string_view CxnTypeName(CxnType type) {
  switch (type) {
    case CxnType::kFrameEvoking:
      return "fe";
    case CxnType::kArgStruct:
      return "argst";
    case CxnType::kRoleset:
      return "roleset";
  }
  return "?";
}

std::string_view LinkKindName(LinkKind kind) {
  switch (kind) {
    case LinkKind::kFeArgst:
      return "fe-argst";
    case LinkKind::kFeRoleset:
      return "fe-roleset";
    case LinkKind::kArgstRoleset:
      return "argst-roleset";
  }
  return "?";
}

std::optional<LinkKind> ParseLinkKind(std::string_view name) {
  for (LinkKind kind :
       {LinkKind::kFeArgst, LinkKind::kFeRoleset, LinkKind::kArgstRoleset}) {
    if (LinkKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

bool LinkKindMatches(LinkKind kind, CxnType x, CxnType y) {
  auto pair_is = [&](CxnType p, CxnType q) {
    return (x == p && y == q) || (x == q && y == p);
  };
  switch (kind) {
    case LinkKind::kFeArgst:
      return pair_is(CxnType::kFrameEvoking, CxnType::kArgStruct);
    case LinkKind::kFeRoleset:
      return pair_is(CxnType::kFrameEvoking, CxnType::kRoleset);
    case LinkKind::kArgstRoleset:
      return pair_is(CxnType::kArgStruct, CxnType::kRoleset);
  }
  return false;
}

std::string PathToString(const Path &path) {
  std::string out = "[";
  for (size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ", ";
    out += path[i].direction == PathStep::Direction::kUp ? "up " : "down ";
    out += path[i].label;
  }
  return out + "]";
}

const RoleSlot *ArgStructCxn::FindSlot(std::string_view role) const {
  for (const RoleSlot &slot : slots) {
    if (slot.role == role) return &slot;
  }
  return nullptr;
}

std::string CanonicalSignature(
    std::span<const RoleSlot> slots,
    std::span<const PrecedenceConstraint> constraints) {
  std::vector<const RoleSlot *> sorted_slots;
  for (const RoleSlot &slot : slots) sorted_slots.push_back(&slot);
  std::sort(
      sorted_slots.begin(), sorted_slots.end(),
      [](const RoleSlot *x, const RoleSlot *y) { return x->role < y->role; });
  std::vector<PrecedenceConstraint> sorted_constraints(constraints.begin(),
                                                       constraints.end());
  std::sort(sorted_constraints.begin(), sorted_constraints.end());

  std::string out(kSignatureVersion);
  out += ";slots=" + std::to_string(sorted_slots.size());
  for (const RoleSlot *slot : sorted_slots) {
    out += ";s";
    AppendField(slot->role, &out);
    AppendField(slot->pos, &out);
    out += std::to_string(slot->path.size());
    for (const PathStep &step : slot->path) {
      out += step.direction == PathStep::Direction::kUp ? 'u' : 'd';
      AppendField(step.label, &out);
    }
  }
  out += ";constraints=" + std::to_string(sorted_constraints.size());
  for (const PrecedenceConstraint &constraint : sorted_constraints) {
    out += ";c";
    AppendField(constraint.before, &out);
    AppendField(constraint.after, &out);
  }
  return out;
}

std::string ConstructionNetwork::FrameEvokingKey(std::string_view lemma,
                                                 std::string_view pos) {
  std::string key;
  AppendField(lemma, &key);
  AppendField(pos, &key);
  return key;
}

CategoryId ConstructionNetwork::NewCategory() {
  return static_cast<CategoryId>(next_category_++);
}

void ConstructionNetwork::Register(CategoryId id, CxnType type, size_t index,
                                   const std::string &mnemonic) {
  owners_.emplace(id, Owner{type, index});
  adjacency_[id];
  mnemonic_index_.emplace(mnemonic, id);
}

std::string ConstructionNetwork::NextMnemonic(std::string_view prefix) {
  int &suffix = suffixes_[std::string(prefix)];
  ++suffix;
  return std::string(prefix) + "-" + std::to_string(suffix);
}

void ConstructionNetwork::NoteMnemonic(const std::string &mnemonic) {
  size_t dash = mnemonic.rfind('-');
  if (dash == std::string::npos) return;
  int suffix = 0;
  const char *begin = mnemonic.data() + dash + 1;
  const char *end = mnemonic.data() + mnemonic.size();
  auto [ptr, ec] = std::from_chars(begin, end, suffix);
  if (ec != std::errc() || ptr != end) return;
  int &current = suffixes_[mnemonic.substr(0, dash)];
  current = std::max(current, suffix);
}

ConstructionNetwork::Found<FrameEvokingCxn>
ConstructionNetwork::FindOrAddFrameEvoking(std::string_view lemma,
                                           std::string_view pos) {
  std::string key = FrameEvokingKey(lemma, pos);
  auto it = fe_index_.find(key);
  if (it != fe_index_.end()) {
    FrameEvokingCxn &cxn = frame_evoking_[it->second];
    ++cxn.freq;
    return {cxn, false};
  }
  FrameEvokingCxn cxn;
  cxn.lemma = lemma;
  cxn.pos = pos;
  cxn.category = {NewCategory(),
                  std::string(lemma) + "(" + std::string(pos) + ")"};
  cxn.freq = 1;
  size_t index = frame_evoking_.size();
  frame_evoking_.push_back(std::move(cxn));
  fe_index_.emplace(std::move(key), index);
  const FrameEvokingCxn &added = frame_evoking_.back();
  Register(added.category.id, CxnType::kFrameEvoking, index,
           added.category.mnemonic);
  return {added, true};
}

ConstructionNetwork::Found<ArgStructCxn>
ConstructionNetwork::FindOrAddArgStruct(
    std::vector<RoleSlot> slots, std::vector<PrecedenceConstraint> constraints,
    std::string_view mnemonic_prefix) {
  std::string signature = CanonicalSignature(slots, constraints);
  auto it = argst_index_.find(signature);
  if (it != argst_index_.end()) {
    ArgStructCxn &cxn = argstruct_[it->second];
    ++cxn.freq;
    return {cxn, false};
  }
  std::sort(
      slots.begin(), slots.end(),
      [](const RoleSlot &x, const RoleSlot &y) { return x.role < y.role; });
  std::sort(constraints.begin(), constraints.end());
  ArgStructCxn cxn;
  cxn.slots = std::move(slots);
  cxn.constraints = std::move(constraints);
  cxn.category = {NewCategory(), NextMnemonic(mnemonic_prefix)};
  cxn.freq = 1;
  cxn.signature = signature;
  size_t index = argstruct_.size();
  argstruct_.push_back(std::move(cxn));
  argst_index_.emplace(std::move(signature), index);
  const ArgStructCxn &added = argstruct_.back();
  Register(added.category.id, CxnType::kArgStruct, index,
           added.category.mnemonic);
  return {added, true};
}

ConstructionNetwork::Found<RolesetCxn> ConstructionNetwork::FindOrAddRoleset(
    std::string_view roleset) {
  auto it = roleset_index_.find(std::string(roleset));
  if (it != roleset_index_.end()) {
    RolesetCxn &cxn = roleset_[it->second];
    ++cxn.freq;
    return {cxn, false};
  }
  RolesetCxn cxn;
  cxn.roleset = roleset;
  cxn.category = {NewCategory(), std::string(roleset)};
  cxn.freq = 1;
  size_t index = roleset_.size();
  roleset_.push_back(std::move(cxn));
  roleset_index_.emplace(std::string(roleset), index);
  const RolesetCxn &added = roleset_.back();
  Register(added.category.id, CxnType::kRoleset, index,
           added.category.mnemonic);
  return {added, true};
}

const CategorialLink &ConstructionNetwork::AddOrBumpLink(CategoryId a,
                                                         CategoryId b,
                                                         LinkKind kind) {
  const Owner &owner_a = OwnerOf(a);
  const Owner &owner_b = OwnerOf(b);
  if (a == b) throw std::invalid_argument("self link on " + CategoryName(a));
  if (!LinkKindMatches(kind, owner_a.type, owner_b.type)) {
    throw std::invalid_argument(std::string(LinkKindName(kind)) +
                                " link between " + CategoryName(a) + " and " +
                                CategoryName(b));
  }
  if (b < a) std::swap(a, b);
  auto it = link_index_.find({a, b});
  if (it != link_index_.end()) {
    CategorialLink &link = links_[it->second];
    ++link.weight;
    return link;
  }
  size_t index = links_.size();
  links_.push_back({a, b, kind, 1});
  link_index_.emplace(std::make_pair(a, b), index);
  adjacency_[a].push_back(index);
  adjacency_[b].push_back(index);
  return links_.back();
}

void ConstructionNetwork::RestoreFrameEvoking(FrameEvokingCxn cxn) {
  if (HasCategory(cxn.category.id)) {
    throw CorruptFile("duplicate " + CategoryName(cxn.category.id));
  }
  std::string key = FrameEvokingKey(cxn.lemma, cxn.pos);
  if (fe_index_.contains(key)) {
    throw CorruptFile("duplicate frame-evoking construction " +
                      cxn.category.mnemonic);
  }
  size_t index = frame_evoking_.size();
  next_category_ = std::max(next_category_, ToInt(cxn.category.id) + 1);
  frame_evoking_.push_back(std::move(cxn));
  fe_index_.emplace(std::move(key), index);
  const FrameEvokingCxn &added = frame_evoking_.back();
  Register(added.category.id, CxnType::kFrameEvoking, index,
           added.category.mnemonic);
}

void ConstructionNetwork::RestoreArgStruct(ArgStructCxn cxn) {
  if (HasCategory(cxn.category.id)) {
    throw CorruptFile("duplicate " + CategoryName(cxn.category.id));
  }
  std::sort(
      cxn.slots.begin(), cxn.slots.end(),
      [](const RoleSlot &x, const RoleSlot &y) { return x.role < y.role; });
  std::sort(cxn.constraints.begin(), cxn.constraints.end());
  cxn.signature = CanonicalSignature(cxn.slots, cxn.constraints);
  if (argst_index_.contains(cxn.signature)) {
    throw CorruptFile("duplicate argument structure construction " +
                      cxn.category.mnemonic);
  }
  size_t index = argstruct_.size();
  next_category_ = std::max(next_category_, ToInt(cxn.category.id) + 1);
  NoteMnemonic(cxn.category.mnemonic);
  argstruct_.push_back(std::move(cxn));
  const ArgStructCxn &added = argstruct_.back();
  argst_index_.emplace(added.signature, index);
  Register(added.category.id, CxnType::kArgStruct, index,
           added.category.mnemonic);
}

void ConstructionNetwork::RestoreRoleset(RolesetCxn cxn) {
  if (HasCategory(cxn.category.id)) {
    throw CorruptFile("duplicate " + CategoryName(cxn.category.id));
  }
  if (roleset_index_.contains(cxn.roleset)) {
    throw CorruptFile("duplicate roleset construction " + cxn.roleset);
  }
  size_t index = roleset_.size();
  next_category_ = std::max(next_category_, ToInt(cxn.category.id) + 1);
  roleset_.push_back(std::move(cxn));
  const RolesetCxn &added = roleset_.back();
  roleset_index_.emplace(added.roleset, index);
  Register(added.category.id, CxnType::kRoleset, index,
           added.category.mnemonic);
}

void ConstructionNetwork::RestoreLink(CategorialLink link) {
  if (!HasCategory(link.a) || !HasCategory(link.b)) {
    throw CorruptFile("link between " + CategoryName(link.a) + " and " +
                      CategoryName(link.b) + " has a dangling endpoint");
  }
  if (link.a == link.b)
    throw CorruptFile("self link on " + CategoryName(link.a));
  if (!LinkKindMatches(link.kind, owners_.at(link.a).type,
                       owners_.at(link.b).type)) {
    throw CorruptFile(std::string(LinkKindName(link.kind)) +
                      " link has endpoints of the wrong type");
  }
  if (link.weight < 1) throw CorruptFile("link weight must be >= 1");
  if (link.b < link.a) std::swap(link.a, link.b);
  if (link_index_.contains({link.a, link.b})) {
    throw CorruptFile("duplicate link between " + CategoryName(link.a) +
                      " and " + CategoryName(link.b));
  }
  size_t index = links_.size();
  links_.push_back(link);
  link_index_.emplace(std::make_pair(link.a, link.b), index);
  adjacency_[link.a].push_back(index);
  adjacency_[link.b].push_back(index);
}

const FrameEvokingCxn *ConstructionNetwork::FindFrameEvoking(
    std::string_view lemma, std::string_view pos) const {
  auto it = fe_index_.find(FrameEvokingKey(lemma, pos));
  return it == fe_index_.end() ? nullptr : &frame_evoking_[it->second];
}

const ArgStructCxn *ConstructionNetwork::FindArgStruct(
    std::string_view signature) const {
  auto it = argst_index_.find(std::string(signature));
  return it == argst_index_.end() ? nullptr : &argstruct_[it->second];
}

const RolesetCxn *ConstructionNetwork::FindRoleset(
    std::string_view roleset) const {
  auto it = roleset_index_.find(std::string(roleset));
  return it == roleset_index_.end() ? nullptr : &roleset_[it->second];
}

const CategorialLink *ConstructionNetwork::FindLink(CategoryId a,
                                                    CategoryId b) const {
  if (b < a) std::swap(a, b);
  auto it = link_index_.find({a, b});
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

int64_t ConstructionNetwork::LinkWeight(CategoryId a, CategoryId b) const {
  const CategorialLink *link = FindLink(a, b);
  return link == nullptr ? 0 : link->weight;
}

const ConstructionNetwork::Owner &ConstructionNetwork::OwnerOf(
    CategoryId id) const {
  auto it = owners_.find(id);
  if (it == owners_.end()) throw UnknownCategory(CategoryName(id));
  return it->second;
}

std::optional<CxnType> ConstructionNetwork::TypeOf(CategoryId id) const {
  auto it = owners_.find(id);
  if (it == owners_.end()) return std::nullopt;
  return it->second.type;
}

const std::string &ConstructionNetwork::MnemonicOf(CategoryId id) const {
  const Owner &owner = OwnerOf(id);
  switch (owner.type) {
    case CxnType::kFrameEvoking:
      return frame_evoking_[owner.index].category.mnemonic;
    case CxnType::kArgStruct:
      return argstruct_[owner.index].category.mnemonic;
    case CxnType::kRoleset:
      break;
  }
  return roleset_[owner.index].category.mnemonic;
}

int64_t ConstructionNetwork::FrequencyOf(CategoryId id) const {
  const Owner &owner = OwnerOf(id);
  switch (owner.type) {
    case CxnType::kFrameEvoking:
      return frame_evoking_[owner.index].freq;
    case CxnType::kArgStruct:
      return argstruct_[owner.index].freq;
    case CxnType::kRoleset:
      break;
  }
  return roleset_[owner.index].freq;
}

std::optional<CategoryId> ConstructionNetwork::FindByMnemonic(
    std::string_view mnemonic) const {
  auto it = mnemonic_index_.find(std::string(mnemonic));
  if (it == mnemonic_index_.end()) return std::nullopt;
  return it->second;
}

const FrameEvokingCxn &ConstructionNetwork::frame_evoking(CategoryId id) const {
  const Owner &owner = OwnerOf(id);
  if (owner.type != CxnType::kFrameEvoking) {
    throw UnknownCategory(CategoryName(id) + " is not frame-evoking");
  }
  return frame_evoking_[owner.index];
}

const ArgStructCxn &ConstructionNetwork::argstruct(CategoryId id) const {
  const Owner &owner = OwnerOf(id);
  if (owner.type != CxnType::kArgStruct) {
    throw UnknownCategory(CategoryName(id) + " is not an argument structure");
  }
  return argstruct_[owner.index];
}

const RolesetCxn &ConstructionNetwork::roleset(CategoryId id) const {
  const Owner &owner = OwnerOf(id);
  if (owner.type != CxnType::kRoleset) {
    throw UnknownCategory(CategoryName(id) + " is not a roleset");
  }
  return roleset_[owner.index];
}

const std::vector<size_t> &ConstructionNetwork::Incident(CategoryId id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw UnknownCategory(CategoryName(id));
  return it->second;
}

std::vector<std::string> ConstructionNetwork::Verify() const {
  std::vector<std::string> problems;
  auto check = [&](bool ok, const std::string &what) {
    if (!ok) problems.push_back(what);
  };

  std::set<CategoryId> seen;
  auto check_category = [&](const Category &category, CxnType type,
                            size_t index, int64_t freq) {
    check(seen.insert(category.id).second,
          "duplicate " + CategoryName(category.id));
    auto it = owners_.find(category.id);
    check(it != owners_.end() && it->second.type == type &&
              it->second.index == index,
          CategoryName(category.id) + " is not indexed");
    check(freq >= 1, category.mnemonic + " has frequency < 1");
    check(!category.mnemonic.empty(),
          CategoryName(category.id) + " has no mnemonic");
  };

  for (size_t i = 0; i < frame_evoking_.size(); ++i) {
    const FrameEvokingCxn &cxn = frame_evoking_[i];
    check_category(cxn.category, CxnType::kFrameEvoking, i, cxn.freq);
    check(FindFrameEvoking(cxn.lemma, cxn.pos) == &cxn,
          cxn.category.mnemonic + " is not indexed by (lemma, pos)");
  }
  for (size_t i = 0; i < argstruct_.size(); ++i) {
    const ArgStructCxn &cxn = argstruct_[i];
    check_category(cxn.category, CxnType::kArgStruct, i, cxn.freq);
    check(cxn.signature == CanonicalSignature(cxn.slots, cxn.constraints),
          cxn.category.mnemonic + " has a stale signature");
    check(FindArgStruct(cxn.signature) == &cxn,
          cxn.category.mnemonic + " is not indexed by signature");
    std::set<std::string> roles;
    for (const RoleSlot &slot : cxn.slots) {
      check(roles.insert(slot.role).second,
            cxn.category.mnemonic + " repeats role " + slot.role);
      bool seen_down = false;
      for (const PathStep &step : slot.path) {
        if (step.direction == PathStep::Direction::kDown) seen_down = true;
        check(!(seen_down && step.direction == PathStep::Direction::kUp),
              cxn.category.mnemonic + " has an up step after a down step");
      }
      check(slot.path.empty() ||
                slot.path.front().direction == PathStep::Direction::kUp,
            cxn.category.mnemonic + " path does not begin with up");
    }
    for (const PrecedenceConstraint &constraint : cxn.constraints) {
      check(constraint.before != constraint.after,
            cxn.category.mnemonic + " has a reflexive constraint");
      check(
          roles.contains(constraint.before) && roles.contains(constraint.after),
          cxn.category.mnemonic + " constrains an unknown role");
    }
  }
  for (size_t i = 0; i < roleset_.size(); ++i) {
    const RolesetCxn &cxn = roleset_[i];
    check_category(cxn.category, CxnType::kRoleset, i, cxn.freq);
    check(FindRoleset(cxn.roleset) == &cxn,
          cxn.roleset + " is not indexed by label");
  }
  check(owners_.size() == seen.size(), "category index has stray entries");
  check(fe_index_.size() == frame_evoking_.size() &&
            argst_index_.size() == argstruct_.size() &&
            roleset_index_.size() == roleset_.size(),
        "construction indexes are not bijective with stores");

  for (size_t i = 0; i < links_.size(); ++i) {
    const CategorialLink &link = links_[i];
    auto ta = TypeOf(link.a);
    auto tb = TypeOf(link.b);
    if (!ta || !tb) {
      problems.push_back("link " + std::to_string(i) + " is dangling");
      continue;
    }
    check(link.a < link.b, "link " + std::to_string(i) + " is not normalized");
    check(LinkKindMatches(link.kind, *ta, *tb),
          "link " + std::to_string(i) + " kind does not match endpoints");
    check(link.weight >= 1, "link " + std::to_string(i) + " has weight < 1");
    check(FindLink(link.a, link.b) == &link,
          "link " + std::to_string(i) + " is not indexed");
    auto incident = [&](CategoryId id) {
      const auto &list = adjacency_.at(id);
      return std::find(list.begin(), list.end(), i) != list.end();
    };
    check(incident(link.a) && incident(link.b),
          "link " + std::to_string(i) + " missing from adjacency");
  }
  check(link_index_.size() == links_.size(), "link index is not bijective");
  return problems;
}

}  // namespace cxg
