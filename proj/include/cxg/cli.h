#ifndef CXG_CLI_H_
#define CXG_CLI_H_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cxg/analytics.h"
#include "cxg/evaluator.h"

namespace cxg {

enum class Command { kLearn, kExtract, kEvaluate, kReport, kQuery };
enum class QueryKind { kAssoc, kSim, kNearest, kZipf };

struct Config {
  Command command = Command::kLearn;

  // learn
  std::string corpus_path;
  std::string stats_path;  // defaults to <out>.stats.json
  // learn / extract output
  std::string output_path;
  // extract / report / query
  std::string grammar_path;
  std::string input_path;
  // evaluate
  std::string pred_path;
  std::string gold_path;
  std::vector<ScoreLevel> levels = {ScoreLevel::kRoleset, ScoreLevel::kFrame};
  // report
  std::string report_name;
  // query
  QueryKind query = QueryKind::kAssoc;
  std::vector<std::string> query_args;
  size_t k = 10;
  CxnGroup group = CxnGroup::kAll;
  std::string csv_path;

  int workers = 1;
};

// Executes one command. Results go to `out`; failures are reported on `err`
// as a one-line JSON object {"error": kind, "message": ...} and yield a
// nonzero status.
int Run(const Config &config, std::ostream &out, std::ostream &err);

// Parses argv into a Config (worker count from CXG_WORKERS) and runs it.
int RunCli(int argc, char **argv);

}  // namespace cxg

#endif  // CXG_CLI_H_
