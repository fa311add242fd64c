#ifndef CXG_GRAMMAR_H_
#define CXG_GRAMMAR_H_

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cxg {

// Network-wide category identifier. Every construction owns exactly one.
enum class CategoryId : uint32_t {};

inline uint32_t ToInt(CategoryId id) { return static_cast<uint32_t>(id); }

struct Category {
  CategoryId id{};
  std::string mnemonic;
};

enum class CxnType { kFrameEvoking, kArgStruct, kRoleset };

std::string_view CxnTypeName(CxnType type);

// Recognises a (lemma, pos) combination and marks its frame-evoking potential.
struct FrameEvokingCxn {
  std::string lemma;
  std::string pos;
  Category category;
  int64_t freq = 0;
};

struct PathStep {
  enum class Direction { kUp, kDown };

  Direction direction = Direction::kUp;
  std::string label;

  static PathStep Up(std::string label) {
    return {Direction::kUp, std::move(label)};
  }
  static PathStep Down(std::string label) {
    return {Direction::kDown, std::move(label)};
  }

  bool operator==(const PathStep &) const = default;
};

using Path = std::vector<PathStep>;

// Renders a path as "[up sentence, down vp]".
std::string PathToString(const Path &path);

// A core-role unit of an argument structure construction. `path` runs from
// the role unit to the frame-evoking unit: all up steps (the last one being
// the lowest common ancestor) precede all down steps; endpoints excluded.
struct RoleSlot {
  std::string role;
  std::string pos;
  Path path;

  bool operator==(const RoleSlot &) const = default;
};

// `before` must start to the left of `after`.
struct PrecedenceConstraint {
  std::string before;
  std::string after;

  auto operator<=>(const PrecedenceConstraint &) const = default;
};

// Slots are kept sorted by role label and constraints by (before, after).
struct ArgStructCxn {
  std::vector<RoleSlot> slots;
  std::vector<PrecedenceConstraint> constraints;
  Category category;
  int64_t freq = 0;
  std::string signature;

  const RoleSlot *FindSlot(std::string_view role) const;
};

struct RolesetCxn {
  std::string roleset;
  Category category;
  int64_t freq = 0;
};

enum class LinkKind { kFeArgst, kFeRoleset, kArgstRoleset };

std::string_view LinkKindName(LinkKind kind);
std::optional<LinkKind> ParseLinkKind(std::string_view name);

// Undirected weighted compatibility edge. Endpoints are stored with a < b.
struct CategorialLink {
  CategoryId a{};
  CategoryId b{};
  LinkKind kind = LinkKind::kFeArgst;
  int64_t weight = 0;

  CategoryId Other(CategoryId self) const { return self == a ? b : a; }
};

// Order- and name-independent structural key of an argument structure
// construction. Equal for any two constructions with the same slots and
// constraints regardless of slot order.
std::string CanonicalSignature(
    std::span<const RoleSlot> slots,
    std::span<const PrecedenceConstraint> constraints);

// Returns true if a link of `kind` may join constructions of the given types.
bool LinkKindMatches(LinkKind kind, CxnType x, CxnType y);

// The construction network: the three construction stores, the categorial
// links between them and the lookup indexes. Stores are deques, so
// references handed out stay valid while the network grows.
class ConstructionNetwork {
 public:
  template <typename Cxn>
  struct Found {
    const Cxn &cxn;
    bool created;
  };

  ConstructionNetwork() = default;
  ConstructionNetwork(const ConstructionNetwork &) = delete;
  ConstructionNetwork &operator=(const ConstructionNetwork &) = delete;
  ConstructionNetwork(ConstructionNetwork &&) = default;
  ConstructionNetwork &operator=(ConstructionNetwork &&) = default;

  // Learning operations. Each either bumps an existing construction's
  // frequency by one or creates a fresh construction with frequency 1.
  Found<FrameEvokingCxn> FindOrAddFrameEvoking(std::string_view lemma,
                                               std::string_view pos);
  // `mnemonic_prefix` names a newly created construction, e.g.
  // "arg0(np)-v(v)-arg1(np)"; the next free integer suffix is appended.
  Found<ArgStructCxn> FindOrAddArgStruct(
      std::vector<RoleSlot> slots,
      std::vector<PrecedenceConstraint> constraints,
      std::string_view mnemonic_prefix);
  Found<RolesetCxn> FindOrAddRoleset(std::string_view roleset);

  // Throws UnknownCategory if either endpoint is not in the network, and
  // std::invalid_argument if `kind` does not fit the endpoint types or
  // a == b.
  const CategorialLink &AddOrBumpLink(CategoryId a, CategoryId b,
                                      LinkKind kind);

  // Restoration from a serialized grammar: inserts constructions and links
  // with given ids, frequencies and weights. Throws CorruptFile on any
  // duplicate or dangling reference.
  void RestoreFrameEvoking(FrameEvokingCxn cxn);
  void RestoreArgStruct(ArgStructCxn cxn);
  void RestoreRoleset(RolesetCxn cxn);
  void RestoreLink(CategorialLink link);

  // Lookups.
  const FrameEvokingCxn *FindFrameEvoking(std::string_view lemma,
                                          std::string_view pos) const;
  const ArgStructCxn *FindArgStruct(std::string_view signature) const;
  const RolesetCxn *FindRoleset(std::string_view roleset) const;
  const CategorialLink *FindLink(CategoryId a, CategoryId b) const;
  int64_t LinkWeight(CategoryId a, CategoryId b) const;

  bool HasCategory(CategoryId id) const { return owners_.contains(id); }
  std::optional<CxnType> TypeOf(CategoryId id) const;
  // Throws UnknownCategory.
  const std::string &MnemonicOf(CategoryId id) const;
  int64_t FrequencyOf(CategoryId id) const;
  std::optional<CategoryId> FindByMnemonic(std::string_view mnemonic) const;

  // Throw UnknownCategory if `id` is absent or of another type.
  const FrameEvokingCxn &frame_evoking(CategoryId id) const;
  const ArgStructCxn &argstruct(CategoryId id) const;
  const RolesetCxn &roleset(CategoryId id) const;

  // Indices into links() of the links incident to `id`, in creation order.
  const std::vector<size_t> &Incident(CategoryId id) const;

  const std::deque<FrameEvokingCxn> &frame_evoking_cxns() const {
    return frame_evoking_;
  }
  const std::deque<ArgStructCxn> &argstruct_cxns() const { return argstruct_; }
  const std::deque<RolesetCxn> &roleset_cxns() const { return roleset_; }
  const std::deque<CategorialLink> &links() const { return links_; }

  size_t num_constructions() const {
    return frame_evoking_.size() + argstruct_.size() + roleset_.size();
  }

  // Checks every structural invariant; returns a description of each
  // violation found.
  std::vector<std::string> Verify() const;

 private:
  struct Owner {
    CxnType type;
    size_t index;
  };

  static std::string FrameEvokingKey(std::string_view lemma,
                                     std::string_view pos);
  CategoryId NewCategory();
  void Register(CategoryId id, CxnType type, size_t index,
                const std::string &mnemonic);
  std::string NextMnemonic(std::string_view prefix);
  void NoteMnemonic(const std::string &mnemonic);
  const Owner &OwnerOf(CategoryId id) const;

  std::deque<FrameEvokingCxn> frame_evoking_;
  std::deque<ArgStructCxn> argstruct_;
  std::deque<RolesetCxn> roleset_;
  std::deque<CategorialLink> links_;

  std::unordered_map<std::string, size_t> fe_index_;
  std::unordered_map<std::string, size_t> argst_index_;
  std::unordered_map<std::string, size_t> roleset_index_;
  std::unordered_map<std::string, CategoryId> mnemonic_index_;
  std::unordered_map<CategoryId, Owner> owners_;
  std::map<std::pair<CategoryId, CategoryId>, size_t> link_index_;
  std::unordered_map<CategoryId, std::vector<size_t>> adjacency_;
  // Highest integer suffix handed out per argstruct mnemonic prefix.
  std::unordered_map<std::string, int> suffixes_;
  uint32_t next_category_ = 0;
};

}  // namespace cxg

#endif  // CXG_GRAMMAR_H_
