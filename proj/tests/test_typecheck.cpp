#include <doctest.h>

#include <random>

#include "gtt/harness.hpp"
#include "gtt/syntax.hpp"
#include "gtt/typecheck.hpp"

using namespace gtt;

namespace {
TypeEnv env_of(std::initializer_list<std::pair<std::string, const char*>> vars,
               const char* stoup = nullptr) {
  TypeEnv e;
  for (auto& [x, t] : vars) e.vars.emplace_back(x, parse_type(t));
  if (stoup) e.stoup = parse_type(stoup);
  return e;
}
}  // namespace

TEST_CASE("value typing basics") {
  // annotation-free sum injection requires an ascription
  CHECK_THROWS_AS(infer_value(TypeEnv{}, parse_term("(inl unit)")), Error);
  CHECK(type_equal(infer_value(TypeEnv{}, parse_term("(inl unit : (+ 1 1))")),
                   parse_type("(+ 1 1)")));

  TypeEnv e = env_of({{"x", "1"}});
  CHECK(type_equal(infer_value(e, parse_term("(up 1 ? x)")), ty_dyn()));

  // ? is greatest: ? <= 1 is not derivable
  try {
    infer_value(TypeEnv{}, parse_term("(up ? 1 (up 1 ? unit))"));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code == "E_CAST");
  }

  CHECK_THROWS_AS(infer_value(TypeEnv{}, mk_var("nope")), Error);
}

TEST_CASE("stoup discipline") {
  // hole consumed by the bind subject
  TypeEnv e = env_of({}, "(F 1)");
  CHECK(type_equal(infer_comp(e, parse_term("(bind x hole (ret x))")), parse_type("(F 1)")));

  // hole in the continuation violates the empty-stoup requirement
  try {
    infer_comp(e, parse_term("(bind x (ret unit) hole)"));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code == "E_STOUP");
  }

  // err requires an empty stoup
  CHECK(type_equal(infer_comp(TypeEnv{}, parse_term("(err (F 1))")), parse_type("(F 1)")));
  CHECK_THROWS_AS(infer_comp(e, parse_term("(err (F 1))")), Error);

  // the stoup must be consumed, not dropped
  CHECK_THROWS_AS(infer_comp(e, parse_term("(ret unit)")), Error);

  // &-introduction is additive: both branches may use the hole
  TypeEnv e2 = env_of({}, "(F 1)");
  CHECK(type_equal(
      infer_comp(e2, parse_term("(wpair (bind x hole (ret x)) (bind y hole (ret y)))")),
      parse_type("(& (F 1) (F 1))")));

  // emptypair discards the stoup
  CHECK(type_equal(infer_comp(e2, parse_term("emptypair")), ty_top()));

  // lambda passes the stoup: the eta-expansion of a function stack
  TypeEnv e3 = env_of({}, "(-> 1 (F 1))");
  CHECK(type_equal(infer_comp(e3, parse_term("(lam (x 1) (app hole x))")),
                   parse_type("(-> 1 (F 1))")));

  // app puts the hole in function position only
  CHECK_THROWS_AS(infer_comp(env_of({{"f", "(U (-> 1 (F 1)))"}}, "1"),
                             parse_term("(app (force f) hole)")),
                  Error);

  // case branches are additive over the stoup
  TypeEnv e4 = env_of({{"v", "(+ 1 1)"}}, "(F 1)");
  CHECK(type_equal(
      infer_comp(e4, parse_term("(case v (inl a (bind x hole (ret x))) (inr b hole))")),
      parse_type("(F 1)")));

  // thunk bodies must not use an outer hole
  CHECK_THROWS_AS(infer_comp(e, parse_term("(bind x (ret (thunk hole)) (ret x))")), Error);
}

TEST_CASE("computation typing basics") {
  CHECK(type_equal(infer_comp(TypeEnv{}, parse_term("(err (F 1))")), parse_type("(F 1)")));
  TypeEnv fe = env_of({}, "(F 1)");
  CHECK(type_equal(infer_comp(fe, parse_term("(bind x hole (ret x))")), parse_type("(F 1)")));

  // force/ret
  CHECK(type_equal(
      infer_comp(TypeEnv{}, parse_term("(force (thunk (ret unit)))")), parse_type("(F 1)")));

  // downcast side condition
  try {
    infer_comp(TypeEnv{}, parse_term("(dn (F ?) (F 1) (ret unit))"));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code == "E_CAST");
  }
  CHECK(type_equal(
      infer_comp(TypeEnv{}, parse_term("(dn (F 1) (F ?) (ret (up 1 ? unit)))")),
      parse_type("(F 1)")));
}

TEST_CASE("check_program") {
  CHECK_NOTHROW(check_program(parse_term("(ret (inl unit : (+ 1 1)))")));
  CHECK_THROWS_AS(check_program(parse_term("(ret unit)")), Error);
  CHECK_NOTHROW(check_program(parse_term("(err (F (+ 1 1)))")));
  CHECK_THROWS_AS(check_program(parse_term("(ret x)")), Error);  // not closed
}

TEST_CASE("abort requires an ascription and both sorts work") {
  TypeEnv e = env_of({{"z", "0"}});
  CHECK_THROWS_AS(infer_value(e, parse_term("(abort z)")), Error);
  CHECK(type_equal(infer_value(e, parse_term("(abort z : 1)")), ty_unit()));
  CHECK(type_equal(infer_comp(e, parse_term("(abort z : (F 1))")), parse_type("(F 1)")));
  // sort mismatch between position and ascription
  CHECK_THROWS_AS(infer_value(e, parse_term("(abort z : (F 1))")), Error);
}

TEST_CASE("value-sort pattern matches") {
  TypeEnv e = env_of({{"p", "(* 1 (+ 1 1))"}});
  CHECK(type_equal(infer_value(e, parse_term("(split p (x y) (pair y x))")),
                   parse_type("(* (+ 1 1) 1)")));
  TypeEnv e2 = env_of({{"s", "(+ 1 1)"}});
  CHECK(type_equal(
      infer_value(e2,
                  parse_term("(case s (inl a (inr a : (+ 1 1))) (inr b (inl b : (+ 1 1))))")),
      parse_type("(+ 1 1)")));
}

TEST_CASE("uniqueness: annotated syntax infers exactly one type") {
  std::mt19937_64 rng(3);
  GenOptions gopts;
  gopts.size = 14;
  for (int i = 0; i < 300; i++) {
    TermPtr t = gen_program(rng, gopts);
    TypePtr a = infer_comp(TypeEnv{}, t);
    TypePtr b = infer_comp(TypeEnv{}, t);
    CHECK(type_equal(a, b));
    CHECK(type_equal(a, ty_ret(ty_bool())));
  }
}

TEST_CASE("weakening: extending the environment preserves typing") {
  std::mt19937_64 rng(5);
  GenOptions gopts;
  gopts.size = 12;
  std::vector<TypePtr> pads = {ty_unit(), ty_bool(), ty_dyn(),
                               ty_thunk(ty_ret(ty_unit()))};
  for (int i = 0; i < 200; i++) {
    TermPtr t = gen_program(rng, gopts);
    TypePtr base = infer_comp(TypeEnv{}, t);
    TypeEnv padded;
    padded.vars.emplace_back("w" + std::to_string(i % 7), pads[i % pads.size()]);
    CHECK(type_equal(infer_comp(padded, t), base));
  }
}

TEST_CASE("substitution preserves typing") {
  // env,x:A |- e : T and env |- w : A imply env |- e[w/x] : T
  GenOptions gopts;
  gopts.size = 10;
  std::vector<std::pair<TypePtr, TermPtr>> ws = {
      {ty_unit(), mk_unit()},
      {ty_bool(), mk_true()},
      {ty_thunk(ty_ret(ty_unit())), mk_thunk(mk_ret(mk_unit()))},
      {ty_prod(ty_unit(), ty_bool()), mk_pair(mk_unit(), mk_false())},
  };
  for (int i = 0; i < 200; i++) {
    auto& [a, w] = ws[i % ws.size()];
    std::mt19937_64 r2(i);
    TermPtr body = gen_program(r2, gopts);
    TermPtr e = mk_bind("q", mk_ret(mk_var("xfree")), body);
    TypeEnv env;
    env.vars.emplace_back("xfree", a);
    TypePtr t1 = infer_comp(env, e);
    TermPtr sub = subst_value(e, "xfree", w);
    TypePtr t2 = infer_comp(TypeEnv{}, sub);
    CHECK(type_equal(t1, t2));
  }
}

TEST_CASE("cast-free GTT terms check identically at CBPV*") {
  std::mt19937_64 rng(13);
  GenOptions gopts;
  gopts.size = 14;
  gopts.with_casts = false;
  for (int i = 0; i < 200; i++) {
    TermPtr t = gen_program(rng, gopts);
    TypePtr a = infer_comp(TypeEnv{}, t, Stage::GTT);
    TypePtr b = infer_comp(TypeEnv{}, t, Stage::CBPVStar);
    CHECK(type_equal(a, b));
  }
}
