#ifndef GTT_HARNESS_HPP
#define GTT_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gtt/dyninterp.hpp"
#include "gtt/dynamism.hpp"
#include "gtt/machine.hpp"
#include "gtt/syntax.hpp"

namespace gtt {

// ---------------------------------------------------------------------------
// type universe
// ---------------------------------------------------------------------------

// Finite GTT type universe, closed under subterms.  Depths 1 and 2 are
// exhaustive over the atoms {?, 0, 1} and {dyncomp, top}; depth 3 adds a
// bounded, deterministic tier so the suite stays at desk scale.
struct TypeUniverse {
  int depth = 3;
  std::vector<TypePtr> values;
  std::vector<TypePtr> comps;
};

TypeUniverse build_universe(int depth);

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

struct EnumOptions {
  int depth = 3;
  size_t cap = 16;          // per-type cap on enumerated values
  bool with_loops = true;   // include the canonical diverging thunk schema
};

// closed operational values of a closed CBPV* type; mu-rolls and thunks
// consume depth
std::vector<TermPtr> enumerate_values(const TypePtr& a, const EnumOptions& opts);

// closed operational computations of a closed CBPV* type
// (return-constant / error / diverge schemas)
std::vector<TermPtr> comp_schemas(const TypePtr& b, const EnumOptions& opts);

// the canonical diverging computation of type b
TermPtr omega_at(const TypePtr& b);

// ---------------------------------------------------------------------------
// observers
// ---------------------------------------------------------------------------

// A closing observation context: a stack with hole : B |- F(1+1), together
// with a closing substitution for the observed term's free variables.
struct Observer {
  TermPtr stack;
  std::vector<std::pair<std::string, TermPtr>> closing;
  std::string describe() const;
};

// observer stacks hole : b |- F(1+1)
std::vector<TermPtr> observers_for(const TypePtr& b, const EnumOptions& opts);

// boolean discriminators x : a |- D : F(1+1) (x free, returned separately)
std::vector<std::pair<std::string, TermPtr>> discriminators(const TypePtr& a,
                                                            const EnumOptions& opts);

// ---------------------------------------------------------------------------
// observational checks
// ---------------------------------------------------------------------------

struct Counterexample {
  Observer observer;
  Result lhs_result, rhs_result;
};

struct ObsCheck {
  // environment of the open terms (CBPV* types) and the shared type
  std::vector<std::pair<std::string, TypePtr>> env;
  TypePtr type;                // CBPV* type of both sides
  bool value_sort = false;     // wrap both sides in ret when true
  TermPtr lhs, rhs;            // CBPV* terms (cast-free)
};

struct HarnessOptions {
  EnumOptions enumeration;
  uint64_t fuel = 100000;
  size_t closing_cap = 24;     // cap on closing substitutions per check
};

// pass iff result(C[lhs]) == result(C[rhs]) for every generated observer
std::optional<Counterexample> check_obs_eq(const ObsCheck& chk, const HarnessOptions& opts);
// pass iff result(C[lhs]) <= result(C[rhs]) in the error ordering
std::optional<Counterexample> check_obs_leq(const ObsCheck& chk, const HarnessOptions& opts);

// retraction + projection for the casts induced by a derivable dynamism
std::optional<Counterexample> check_ep_pair(const DynDerivPtr& d, const Interp& interp,
                                            const HarnessOptions& opts);

// Graduality: assemble  M  <=  dn(B <= B')( M'[up(Gamma <= Gamma') vars] )
// and check the error ordering under all observers.
struct GradPair {
  std::string name;
  // lhs: Gamma1 |- m1 : B1 (more precise); rhs: Gamma2 |- m2 : B2
  std::vector<std::pair<std::string, TypePtr>> env1, env2;  // GTT types, pointwise <=
  TypePtr b1, b2;  // GTT computation types, b1 <= b2
  TermPtr m1, m2;  // GTT computations
};

std::optional<Counterexample> check_graduality(const GradPair& pair, const Interp& interp,
                                               const HarnessOptions& opts);

// ---------------------------------------------------------------------------
// law suite
// ---------------------------------------------------------------------------

struct LawFailure {
  std::string observer;
  std::string lhs_result, rhs_result;
};

struct LawReport {
  std::string law;
  std::string type;
  int instances = 0;
  std::vector<LawFailure> failures;
};

struct SuiteOptions {
  HarnessOptions harness;
  int universe_depth = 3;
  std::string law_filter;  // run only this law when non-empty
  unsigned workers = 0;    // 0 = hardware concurrency
};

// per-law pass/fail matrix over the type universe; deterministic by cell key
std::vector<LawReport> run_law_suite(const Interp& interp, const SuiteOptions& opts);

std::string law_suite_json(const std::vector<LawReport>& reports, const Interp& interp,
                           const SuiteOptions& opts);

// ---------------------------------------------------------------------------
// random well-typed program generation (GTT stage, closed, type F(1+1))
// ---------------------------------------------------------------------------

struct GenOptions {
  unsigned size = 24;       // construction budget
  bool with_casts = true;   // allow ?/dyncomp and up/dn casts
};

TermPtr gen_program(std::mt19937_64& rng, const GenOptions& opts);

}  // namespace gtt

#endif
