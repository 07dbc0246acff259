#ifndef GTT_MACHINE_HPP
#define GTT_MACHINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gtt/syntax.hpp"

namespace gtt {

// observable outcomes of a whole program of type F(1+1)
enum class ResultKind { Timeout, Error, RetTrue, RetFalse };

struct Result {
  ResultKind kind;
  bool operator==(const Result& o) const { return kind == o.kind; }
  bool operator!=(const Result& o) const { return kind != o.kind; }
};

std::string result_str(const Result& r);

// true iff r1 = Error or r1 = r2 (error approximation; Timeout plays Omega)
bool result_leq(const Result& r1, const Result& r2);

struct StepOutcome {
  bool terminal;
  Result result;  // valid when terminal (never Timeout)
  TermPtr next;   // valid when !terminal
  int cost;       // 1 for mu pattern-match and nu unroll, else 0
};

// one deterministic step of a closed operational computation
StepOutcome step(const TermPtr& m);

struct EvalStats {
  Result result;
  uint64_t steps = 0;        // total steps, terminal classification included
  uint64_t cost1_steps = 0;  // unroll steps
};

struct EvalOptions {
  uint64_t fuel = 100000;
  bool check_types = false;  // subject-reduction assertion each step
  bool star_mode = false;    // evaluate CBPV* directly (oracle)
};

EvalStats eval(const TermPtr& m, const EvalOptions& opts = {});
EvalStats eval(const TermPtr& m, uint64_t fuel);

// differential-testing oracle: evaluates CBPV* directly, reducing complex
// values with an auxiliary big-step relation
EvalStats eval_star(const TermPtr& m, uint64_t fuel = 100000);

}  // namespace gtt

#endif
