#ifndef GTT_TYPECHECK_HPP
#define GTT_TYPECHECK_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtt/syntax.hpp"

namespace gtt {

// Typing environment: named value hypotheses plus an optional stoup holding
// the type of the hole.  The stoup is threaded per the stack discipline:
// it must be consumed exactly along every branch unless discarded by
// emptypair or abort.
struct TypeEnv {
  std::vector<std::pair<std::string, TypePtr>> vars;
  std::optional<TypePtr> stoup;

  const TypePtr* find(const std::string& x) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (it->first == x) return &it->second;
    return nullptr;
  }
  TypeEnv extended(const std::string& x, TypePtr a) const {
    TypeEnv e = *this;
    e.vars.emplace_back(x, std::move(a));
    return e;
  }
  TypeEnv with_stoup(std::optional<TypePtr> s) const {
    TypeEnv e = *this;
    e.stoup = std::move(s);
    return e;
  }
};

// Γ ⊢ v : A; the stoup never enters value typing.
TypePtr infer_value(const TypeEnv& env, const TermPtr& v, Stage stage = Stage::GTT);

// Γ | Δ ⊢ m : B with Δ = env.stoup.
TypePtr infer_comp(const TypeEnv& env, const TermPtr& m, Stage stage = Stage::GTT);

// ok iff m is closed, empty-stoup, of type F(1+1)
void check_program(const TermPtr& m, Stage stage = Stage::GTT);

}  // namespace gtt

#endif
