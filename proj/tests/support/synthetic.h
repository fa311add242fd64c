#ifndef CXG_TESTS_SUPPORT_SYNTHETIC_H_
#define CXG_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cxg/corpus.h"
#include "cxg/grammar.h"

namespace cxg::testing {

struct SyntheticOptions {
  int num_verbs = 20;
  // Fraction of instances made unlearnable (a role straddling constituents
  // or no core roles at all).
  double skip_fraction = 0.05;
};

// Annotated corpus over a family of five templates (transitive,
// ditransitive, dative, clausal complement, passive) and `num_verbs` verbs.
// Records are generated as interchange JSON and ingested.
std::vector<Utterance> SyntheticCorpus(int size, uint32_t seed,
                                       const SyntheticOptions &options = {});

// Random tree with at most `max_tokens` leaves over a small label set, unary
// chains included.
ConstituencyTree RandomTree(std::mt19937 &rng, int max_tokens);

// An argument structure construction read off `tree` at a random leaf, with
// 1-3 random role nodes. Sets `v_node`. Slots and constraints are computed
// with the learner's path and precedence routines.
ArgStructCxn RandomArgStructOn(const ConstituencyTree &tree, std::mt19937 &rng,
                               NodeId *v_node);

// A network built through the public learning operations from a random
// stream of (fe, argst, roleset) observations with skewed frequencies.
ConstructionNetwork RandomGrammar(std::mt19937 &rng);

}  // namespace cxg::testing

#endif  // CXG_TESTS_SUPPORT_SYNTHETIC_H_
