#include "cxg/grammar_io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cxg/errors.h"

namespace cxg {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json GrammarToJson(const ConstructionNetwork &net) {
  ordered_json fe = ordered_json::array();
  for (const FrameEvokingCxn &cxn : net.frame_evoking_cxns()) {
    fe.push_back({{"id", ToInt(cxn.category.id)},
                  {"lemma", cxn.lemma},
                  {"pos", cxn.pos},
                  {"freq", cxn.freq}});
  }

  ordered_json argst = ordered_json::array();
  for (const ArgStructCxn &cxn : net.argstruct_cxns()) {
    ordered_json slots = ordered_json::array();
    for (const RoleSlot &slot : cxn.slots) {
      ordered_json path = ordered_json::array();
      for (const PathStep &step : slot.path) {
        path.push_back(
            {step.direction == PathStep::Direction::kUp ? "up" : "down",
             step.label});
      }
      slots.push_back(
          {{"role", slot.role}, {"pos", slot.pos}, {"path", std::move(path)}});
    }
    ordered_json constraints = ordered_json::array();
    for (const PrecedenceConstraint &constraint : cxn.constraints) {
      constraints.push_back({constraint.before, constraint.after});
    }
    argst.push_back({{"id", ToInt(cxn.category.id)},
                     {"mnemonic", cxn.category.mnemonic},
                     {"freq", cxn.freq},
                     {"slots", std::move(slots)},
                     {"constraints", std::move(constraints)}});
  }

  ordered_json roleset = ordered_json::array();
  for (const RolesetCxn &cxn : net.roleset_cxns()) {
    roleset.push_back({{"id", ToInt(cxn.category.id)},
                       {"roleset", cxn.roleset},
                       {"freq", cxn.freq}});
  }

  ordered_json links = ordered_json::array();
  for (const CategorialLink &link : net.links()) {
    links.push_back({{"a", ToInt(link.a)},
                     {"b", ToInt(link.b)},
                     {"kind", LinkKindName(link.kind)},
                     {"weight", link.weight}});
  }

  ordered_json document;
  document["version"] = kGrammarVersion;
  document["fe"] = std::move(fe);
  document["argst"] = std::move(argst);
  document["roleset"] = std::move(roleset);
  document["links"] = std::move(links);
  return document;
}

namespace {

const json &Field(const json &object, const char *name) {
  if (!object.is_object() || !object.contains(name)) {
    throw CorruptFile(std::string("missing field \"") + name + "\"");
  }
  return object[name];
}

std::string StringField(const json &object, const char *name) {
  const json &value = Field(object, name);
  if (!value.is_string()) {
    throw CorruptFile(std::string("field \"") + name + "\" must be a string");
  }
  return value.get<std::string>();
}

int64_t IntField(const json &object, const char *name) {
  const json &value = Field(object, name);
  if (!value.is_number_integer()) {
    throw CorruptFile(std::string("field \"") + name + "\" must be an integer");
  }
  return value.get<int64_t>();
}

CategoryId IdField(const json &object, const char *name) {
  int64_t value = IntField(object, name);
  if (value < 0 || value > static_cast<int64_t>(UINT32_MAX)) {
    throw CorruptFile(std::string("field \"") + name + "\" is out of range");
  }
  return static_cast<CategoryId>(value);
}

const json &ArrayField(const json &object, const char *name) {
  const json &value = Field(object, name);
  if (!value.is_array()) {
    throw CorruptFile(std::string("field \"") + name + "\" must be an array");
  }
  return value;
}

std::string PairElement(const json &pair, size_t index, const char *what) {
  if (!pair.is_array() || pair.size() != 2 || !pair[index].is_string()) {
    throw CorruptFile(std::string(what) + " must be a pair of strings");
  }
  return pair[index].get<std::string>();
}

}  // namespace

ConstructionNetwork GrammarFromJson(const json &document) {
  if (!document.is_object() || !document.contains("version")) {
    throw VersionMismatch("grammar has no version field");
  }
  if (!document["version"].is_number_integer() ||
      document["version"].get<int64_t>() != kGrammarVersion) {
    throw VersionMismatch("unsupported grammar version " +
                          document["version"].dump() + ", expected " +
                          std::to_string(kGrammarVersion));
  }

  ConstructionNetwork net;
  for (const json &entry : ArrayField(document, "fe")) {
    FrameEvokingCxn cxn;
    cxn.lemma = StringField(entry, "lemma");
    cxn.pos = StringField(entry, "pos");
    cxn.category = {IdField(entry, "id"), cxn.lemma + "(" + cxn.pos + ")"};
    cxn.freq = IntField(entry, "freq");
    net.RestoreFrameEvoking(std::move(cxn));
  }
  for (const json &entry : ArrayField(document, "argst")) {
    ArgStructCxn cxn;
    cxn.category = {IdField(entry, "id"), StringField(entry, "mnemonic")};
    cxn.freq = IntField(entry, "freq");
    for (const json &slot_entry : ArrayField(entry, "slots")) {
      RoleSlot slot;
      slot.role = StringField(slot_entry, "role");
      slot.pos = StringField(slot_entry, "pos");
      for (const json &step : ArrayField(slot_entry, "path")) {
        std::string direction = PairElement(step, 0, "path step");
        std::string label = PairElement(step, 1, "path step");
        if (direction == "up") {
          slot.path.push_back(PathStep::Up(std::move(label)));
        } else if (direction == "down") {
          slot.path.push_back(PathStep::Down(std::move(label)));
        } else {
          throw CorruptFile("path step direction \"" + direction + "\"");
        }
      }
      cxn.slots.push_back(std::move(slot));
    }
    for (const json &constraint : ArrayField(entry, "constraints")) {
      cxn.constraints.push_back({PairElement(constraint, 0, "constraint"),
                                 PairElement(constraint, 1, "constraint")});
    }
    net.RestoreArgStruct(std::move(cxn));
  }
  for (const json &entry : ArrayField(document, "roleset")) {
    RolesetCxn cxn;
    cxn.roleset = StringField(entry, "roleset");
    cxn.category = {IdField(entry, "id"), cxn.roleset};
    cxn.freq = IntField(entry, "freq");
    net.RestoreRoleset(std::move(cxn));
  }
  for (const json &entry : ArrayField(document, "links")) {
    std::string kind_name = StringField(entry, "kind");
    std::optional<LinkKind> kind = ParseLinkKind(kind_name);
    if (!kind) throw CorruptFile("unknown link kind \"" + kind_name + "\"");
    net.RestoreLink({IdField(entry, "a"), IdField(entry, "b"), *kind,
                     IntField(entry, "weight")});
  }

  std::vector<std::string> problems = net.Verify();
  if (!problems.empty()) {
    std::string message = "grammar fails verification: " + problems.front();
    if (problems.size() > 1) {
      message += " (and " + std::to_string(problems.size() - 1) + " more)";
    }
    throw CorruptFile(message);
  }
  return net;
}

std::string SerializeGrammar(const ConstructionNetwork &net) {
  return GrammarToJson(net).dump(1) + "\n";
}

ConstructionNetwork ParseGrammar(std::string_view text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error &e) {
    throw CorruptFile(std::string("invalid JSON: ") + e.what());
  }
  return GrammarFromJson(document);
}

void SaveGrammar(const ConstructionNetwork &net, const std::string &path) {
  WriteFileAtomic(path, SerializeGrammar(net));
}

ConstructionNetwork LoadGrammar(const std::string &path) {
  try {
    return ParseGrammar(ReadFile(path));
  } catch (Error &e) {
    e.AddContext(path);
    throw;
  }
}

void WriteFileAtomic(const std::string &path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot rename onto " + path);
  }
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace cxg
