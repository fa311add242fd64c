#include "cxg/cli.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cxg/applier.h"
#include "cxg/corpus.h"
#include "cxg/errors.h"
#include "cxg/grammar_io.h"
#include "cxg/learner.h"

namespace cxg {

namespace {

constexpr const char *kSchemaHelp =
    R"help(Interchange format (UTF-8 JSON Lines, one utterance per line):
  {"id": str,
   "tokens": [{"form": str, "lemma": str, "pos": str}, ...],
   "tree": {"label": str, "children": [...]}  |  {"ptb": "(s (np ...) ...)"},
   "frames": [{"roleset": "tell.01", "v": [start, end],
               "roles": {"arg0": [start, end], ...}}]}
Spans are half-open token intervals. Every tree leaf covers one token, in
token order. Role labels other than arg0-arg5/arga are ignored when they are
modifiers (argm-*) or continuation/reference roles (c-*, r-*).
Environment: CXG_WORKERS sets the number of extraction threads.)help";

void RequireReadable(const std::string &path, const char *what) {
  if (path.empty()) throw IoError(std::string("no ") + what + " path given");
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError(std::string(what) + " " + path + " does not exist");
  }
}

void RequireWritable(const std::string &path, const char *what) {
  if (path.empty()) throw IoError(std::string("no ") + what + " path given");
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !std::filesystem::is_directory(parent, ec)) {
    throw IoError(std::string(what) + " directory " + parent.string() +
                  " does not exist");
  }
}

CategoryId ResolveMnemonic(const ConstructionNetwork &net,
                           const std::string &mnemonic) {
  std::optional<CategoryId> id = net.FindByMnemonic(mnemonic);
  if (!id) throw UnknownCategory("no construction named \"" + mnemonic + "\"");
  return *id;
}

void RunLearn(const Config &config, std::ostream &out) {
  RequireReadable(config.corpus_path, "corpus");
  RequireWritable(config.output_path, "grammar");
  std::string stats_path = config.stats_path.empty()
                               ? config.output_path + ".stats.json"
                               : config.stats_path;
  RequireWritable(stats_path, "stats");

  std::vector<Utterance> corpus = ReadCorpus(config.corpus_path);
  ConstructionNetwork net;
  LearnStats stats = LearnCorpus(net, corpus);
  SaveGrammar(net, config.output_path);
  WriteFileAtomic(stats_path, stats.ToJson().dump(1) + "\n");
  out << "learnt " << stats.instances_learnt << " of " << stats.instances_seen
      << " instances into " << net.num_constructions() << " constructions and "
      << net.links().size() << " links\n";
}

void RunExtract(const Config &config, std::ostream &out) {
  RequireReadable(config.grammar_path, "grammar");
  RequireReadable(config.input_path, "input");
  RequireWritable(config.output_path, "output");

  ConstructionNetwork net = LoadGrammar(config.grammar_path);
  std::vector<Utterance> corpus = ReadCorpus(config.input_path);
  auto predictions = ExtractCorpus(net, corpus, config.workers);
  std::string content;
  size_t count = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    content += UtteranceToJson(corpus[i], predictions[i]).dump() + "\n";
    count += predictions[i].size();
  }
  WriteFileAtomic(config.output_path, content);
  out << "extracted " << count << " frame instances from " << corpus.size()
      << " utterances\n";
}

void RunEvaluate(const Config &config, std::ostream &out) {
  RequireReadable(config.pred_path, "prediction");
  RequireReadable(config.gold_path, "gold");
  std::vector<FrameSet> predicted = FrameSets(ReadCorpus(config.pred_path));
  std::vector<FrameSet> gold = FrameSets(ReadCorpus(config.gold_path));
  std::vector<ScoreReport> reports;
  nlohmann::json json_reports = nlohmann::json::array();
  for (ScoreLevel level : config.levels) {
    reports.push_back(Score(predicted, gold, level));
    json_reports.push_back(reports.back().ToJson());
  }
  out << json_reports.dump() << "\n";
  out << FormatScoreTable(reports);
}

void RunReport(const Config &config, std::ostream &out) {
  RequireReadable(config.grammar_path, "grammar");
  ConstructionNetwork net = LoadGrammar(config.grammar_path);
  std::string name =
      config.report_name.empty()
          ? std::filesystem::path(config.grammar_path).stem().string()
          : config.report_name;
  out << FormatGrammarReport(ComputeGrammarReport(net), name);
}

void RunQuery(const Config &config, std::ostream &out) {
  RequireReadable(config.grammar_path, "grammar");
  ConstructionNetwork net = LoadGrammar(config.grammar_path);
  const auto &args = config.query_args;
  switch (config.query) {
    case QueryKind::kAssoc: {
      if (args.size() != 1) throw SchemaError("assoc takes one mnemonic");
      for (const auto &entry :
           AssociatedRolesets(net, ResolveMnemonic(net, args[0]))) {
        out << entry.roleset << " (" << entry.weight << ")\n";
      }
      break;
    }
    case QueryKind::kSim: {
      if (args.size() != 2) throw SchemaError("sim takes two mnemonics");
      char buffer[32];
      std::snprintf(buffer, sizeof(buffer), "%.6f",
                    CosineSimilarity(net, ResolveMnemonic(net, args[0]),
                                     ResolveMnemonic(net, args[1])));
      out << buffer << "\n";
      break;
    }
    case QueryKind::kNearest: {
      if (args.size() != 1) throw SchemaError("nearest takes one mnemonic");
      for (const Neighbor &neighbor :
           NearestFrameEvoking(net, ResolveMnemonic(net, args[0]), config.k)) {
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.6f", neighbor.similarity);
        out << neighbor.mnemonic << "\t" << buffer << "\n";
      }
      break;
    }
    case QueryKind::kZipf: {
      RequireWritable(config.csv_path, "csv");
      RankFrequencyTable table = RankFrequency(net, config.group);
      WriteFileAtomic(config.csv_path, table.ToCsv());
      out << "wrote " << table.rows.size() << " rows to " << config.csv_path
          << "\n";
      break;
    }
  }
}

void PrintError(std::ostream &err, const std::string &kind,
                const std::string &message, const std::string &context) {
  nlohmann::json error = {{"error", kind}, {"message", message}};
  if (!context.empty()) error["context"] = context;
  err << error.dump() << "\n";
}

}  // namespace

int Run(const Config &config, std::ostream &out, std::ostream &err) {
  try {
    switch (config.command) {
      case Command::kLearn:
        RunLearn(config, out);
        break;
      case Command::kExtract:
        RunExtract(config, out);
        break;
      case Command::kEvaluate:
        RunEvaluate(config, out);
        break;
      case Command::kReport:
        RunReport(config, out);
        break;
      case Command::kQuery:
        RunQuery(config, out);
        break;
    }
  } catch (const Error &e) {
    PrintError(err, e.kind(), e.what(), e.context());
    return 1;
  } catch (const std::exception &e) {
    PrintError(err, "InternalError", e.what(), "");
    return 1;
  }
  return 0;
}

int RunCli(int argc, char **argv) {
  CLI::App app{"Construction grammar learning and frame extraction."};
  app.footer(kSchemaHelp);
  app.require_subcommand(1);
  Config config;

  auto *learn = app.add_subcommand("learn", "Learn a grammar from a corpus");
  learn->add_option("--corpus", config.corpus_path, "Interchange JSONL")
      ->required();
  learn->add_option("--out", config.output_path, "Grammar JSON")->required();
  learn->add_option("--stats", config.stats_path,
                    "Stats JSON (default: <out>.stats.json)");

  auto *extract =
      app.add_subcommand("extract", "Extract frame instances from a corpus");
  extract->add_option("--grammar", config.grammar_path)->required();
  extract->add_option("--in", config.input_path, "Interchange JSONL")
      ->required();
  extract->add_option("--out", config.output_path, "Predicted JSONL")
      ->required();

  std::string level = "both";
  auto *evaluate =
      app.add_subcommand("evaluate", "Score predictions against gold");
  evaluate->add_option("--pred", config.pred_path)->required();
  evaluate->add_option("--gold", config.gold_path)->required();
  evaluate->add_option("--level", level, "roleset, frame or both")
      ->check(CLI::IsMember({"roleset", "frame", "both"}));

  auto *report = app.add_subcommand("report", "Print the grammar report");
  report->add_option("--grammar", config.grammar_path)->required();
  report->add_option("--name", config.report_name, "Title of the report");

  auto *query = app.add_subcommand("query", "Query a learnt grammar");
  query->add_option("--grammar", config.grammar_path)->required();
  query->require_subcommand(1);
  auto *assoc = query->add_subcommand("assoc", "Rolesets of an argstruct");
  assoc->add_option("argst", config.query_args, "Argstruct mnemonic")
      ->required();
  auto *sim = query->add_subcommand("sim", "Cosine similarity of two fe cxns");
  sim->add_option("fe", config.query_args, "Two fe mnemonics")
      ->required()
      ->expected(2);
  auto *nearest = query->add_subcommand("nearest", "Most similar fe cxns");
  nearest->add_option("fe", config.query_args, "fe mnemonic")->required();
  nearest->add_option("--k", config.k, "Number of neighbours");
  std::string group = "all";
  auto *zipf = query->add_subcommand("zipf", "Rank-frequency table as CSV");
  zipf->add_option("--group", group)
      ->check(CLI::IsMember({"all", "fe", "argst", "roleset"}));
  zipf->add_option("--csv", config.csv_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  if (*learn) config.command = Command::kLearn;
  if (*extract) config.command = Command::kExtract;
  if (*evaluate) {
    config.command = Command::kEvaluate;
    if (level == "roleset") config.levels = {ScoreLevel::kRoleset};
    if (level == "frame") config.levels = {ScoreLevel::kFrame};
  }
  if (*report) config.command = Command::kReport;
  if (*query) {
    config.command = Command::kQuery;
    if (*assoc) config.query = QueryKind::kAssoc;
    if (*sim) config.query = QueryKind::kSim;
    if (*nearest) config.query = QueryKind::kNearest;
    if (*zipf) config.query = QueryKind::kZipf;
    config.group = *ParseCxnGroup(group);
  }
  if (const char *workers = std::getenv("CXG_WORKERS")) {
    config.workers = std::max(1, std::atoi(workers));
  }
  return Run(config, std::cout, std::cerr);
}

}  // namespace cxg
