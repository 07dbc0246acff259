#include <doctest.h>

#include <random>

#include "gtt/harness.hpp"
#include "gtt/syntax.hpp"

using namespace gtt;

TEST_CASE("parse builds constructors directly") {
  TermPtr t = parse_term("(ret (inl unit))");
  CHECK(t->tag == TermTag::RetV);
  CHECK(t->t1->tag == TermTag::Inl);
  CHECK(t->t1->t1->tag == TermTag::UnitV);

  TermPtr u = parse_term("(up 1 ? x)");
  CHECK(u->tag == TermTag::UpCast);
  CHECK(u->ty1->tag == TypeTag::Unit);
  CHECK(u->ty2->tag == TypeTag::Dyn);
  CHECK(u->t1->tag == TermTag::Var);
  CHECK(u->t1->x == "x");

  TermPtr b = parse_term("(bind x (ret unit) (ret x))");
  CHECK(b->tag == TermTag::Bind);
  CHECK(b->t1->tag == TermTag::RetV);
  CHECK(b->t2->tag == TermTag::RetV);
  CHECK(b->t2->t1->tag == TermTag::Var);
  CHECK(b->t2->t1->x == b->x);  // bound occurrence follows the freshened binder
}

TEST_CASE("parse reports positions") {
  try {
    parse_term("(ret (inl unit)");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == "E_PARSE");
    CHECK(e.loc.line == 1);
  }
  CHECK_THROWS_AS(parse_term("(ret unit) junk"), Error);
  CHECK_THROWS_AS(parse_term("(frobnicate x)"), Error);
}

TEST_CASE("comments and ascriptions") {
  TermPtr t = parse_term("; a program\n(ret (inl unit : (+ 1 1)))");
  CHECK(t->t1->ty1->tag == TypeTag::Sum);
  TermPtr a = parse_term("(abort x : (F 1))");
  CHECK(a->ty1->tag == TypeTag::Ret);
}

TEST_CASE("let is desugared by substitution") {
  TermPtr t = parse_term("(let x (inl unit : (+ 1 1)) (ret x))");
  CHECK(t->tag == TermTag::RetV);
  CHECK(t->t1->tag == TermTag::Inl);
}

TEST_CASE("print/parse round trip is alpha-identity") {
  const char* sources[] = {
      "(ret (inl unit : (+ 1 1)))",
      "(bind x (ret unit) (ret x))",
      "(lam (x 1) (ret x))",
      "(case (inl unit : (+ 1 1)) (inl a (ret a)) (inr b (ret b)))",
      "(split (pair unit unit) (x y) (ret (pair y x)))",
      "(usplit unit (err (F 1)))",
      "(thunk (wpair (ret unit) (err (F 0))))",
      "(app (lam (f (U (-> 1 (F 1)))) (app (force f) unit)) (thunk (lam (z 1) (ret z))))",
      "(dn (F 1) (F ?) (ret (up 1 ? unit)))",
      "(rollmu (mu X (+ 1 X)) (inl unit : (+ 1 (mu X (+ 1 X)))))",
      "(pmroll y (w) (ret w))",
      "(rollnu (nu Y (& (F 1) Y)) (wpair (ret unit) (err (nu Y (& (F 1) Y)))))",
      "(unrollnu (err (nu Y (& (F 1) Y))))",
      "(fst (wpair (ret unit) (snd (wpair (err (F 1)) (ret unit)))))",
  };
  for (const char* s : sources) {
    TermPtr t = parse_term(s);
    TermPtr t2 = parse_term(print_term(t));
    CHECK_MESSAGE(alpha_equal(t, t2), "round trip failed for ", s);
  }
}

TEST_CASE("substitution examples") {
  // subst_value(ret x, x, unit) -> ret unit
  TermPtr body = mk_ret(mk_var("x"));
  TermPtr out = subst_value(body, "x", mk_unit());
  CHECK(alpha_equal(out, mk_ret(mk_unit())));

  // shadowing: subst into (lam (x 1) x) leaves it alone
  TermPtr lam = mk_lam("x", ty_unit(), mk_ret(mk_var("x")));
  CHECK(alpha_equal(subst_value(lam, "x", mk_unit()), lam));

  // pair
  TermPtr pair = mk_pair(mk_var("x"), mk_var("y"));
  TermPtr got = subst_value(pair, "x", mk_inl(mk_unit(), ty_bool()));
  CHECK(alpha_equal(got, mk_pair(mk_inl(mk_unit(), ty_bool()), mk_var("y"))));

  // substituting for an absent variable is the identity
  CHECK(subst_value(pair, "zz", mk_unit()).get() == pair.get());
}

TEST_CASE("substitution is capture-avoiding") {
  // (lam (y 1) (ret (pair x y)))[x := y]  must not capture the free y
  TermPtr body = mk_lam("y", ty_unit(), mk_ret(mk_pair(mk_var("x"), mk_var("y"))));
  TermPtr out = subst_value(body, "x", mk_var("y"));
  REQUIRE(out->tag == TermTag::Lam);
  CHECK(out->x != "y");  // binder renamed
  auto fv = free_vars(out);
  CHECK(fv.count("y") == 1);
  CHECK(fv.count("x") == 0);
}

TEST_CASE("free variables of substitution result") {
  // free(result) is contained in (free(body) minus x) union free(v)
  std::mt19937_64 rng(7);
  GenOptions gopts;
  gopts.size = 10;
  for (int i = 0; i < 200; i++) {
    TermPtr prog = gen_program(rng, gopts);
    // pick a free-variable-free body; instead substitute into an open wrapper
    TermPtr body = mk_bind("k", prog, mk_ret(mk_pair(mk_var("fv"), mk_var("k"))));
    TermPtr v = mk_thunk(prog);
    TermPtr out = subst_value(body, "fv", v);
    auto fb = free_vars(body);
    fb.erase("fv");
    for (auto& n : free_vars(v)) fb.insert(n);
    for (auto& n : free_vars(out)) CHECK(fb.count(n) == 1);
  }
}

TEST_CASE("plug_stack examples") {
  TermPtr s = mk_bind("x", mk_hole(), mk_ret(mk_var("x")));
  TermPtr m = mk_ret(mk_unit());
  CHECK(alpha_equal(plug_stack(s, m), mk_bind("x", m, mk_ret(mk_var("x")))));
  CHECK(plug_stack(mk_hole(), mk_err(ty_ret(ty_unit())))->tag == TermTag::Err);
  TermPtr s2 = mk_fst(mk_hole());
  TermPtr w = mk_wpair(mk_ret(mk_unit()), mk_err(ty_ret(ty_unit())));
  CHECK(alpha_equal(plug_stack(s2, w), mk_fst(w)));
}

TEST_CASE("stage checks") {
  // casts are rejected beyond GTT
  TermPtr cast = parse_term("(up 1 ? x)");
  CHECK(!stage_check(cast, Stage::GTT));
  CHECK(stage_check(cast, Stage::CBPVStar));
  CHECK(stage_check(cast, Stage::CBPVOp));

  // pattern match in value position fails the operational stage
  TermPtr pm_value = parse_term("(ret (split p (x y) (pair y x)))");
  CHECK(!stage_check(pm_value, Stage::CBPVStar));
  auto f = stage_check(pm_value, Stage::CBPVOp);
  REQUIRE(f);
  CHECK(f->reason.find("pattern match") != std::string::npos);

  TermPtr fine = parse_term("(ret (inl unit : (+ 1 1)))");
  CHECK(!stage_check(fine, Stage::CBPVOp));

  // recursive forms are not GTT
  TermPtr roll = parse_term("(rollmu (mu X (+ 1 X)) (inl unit : (+ 1 (mu X (+ 1 X)))))");
  CHECK(stage_check(roll, Stage::GTT));
  CHECK(!stage_check(roll, Stage::CBPVStar));

  // dynamic types are not CBPV*
  TermPtr dynty = parse_term("(err (F ?))");
  CHECK(!stage_check(dynty, Stage::GTT));
  CHECK(stage_check(dynty, Stage::CBPVStar));

  // hole in stack head position is operational; elsewhere not
  TermPtr shallow = parse_term("(bind x hole (ret x))");
  CHECK(!stage_check(shallow, Stage::CBPVOp));
  TermPtr deep = parse_term("(case v (inl a (bind x hole (ret x))) (inr b (err (F 1))))");
  CHECK(stage_check(deep, Stage::CBPVOp));
  CHECK(!stage_check(deep, Stage::CBPVStar));
}

TEST_CASE("stage inclusions on the shared fragment") {
  // every CBPVOp-accepted term is CBPVStar-accepted; every cast-free,
  // dynamic-free CBPVStar term is GTT-accepted when recursion-free
  std::mt19937_64 rng(11);
  GenOptions gopts;
  gopts.size = 12;
  gopts.with_casts = false;
  for (int i = 0; i < 300; i++) {
    TermPtr t = gen_program(rng, gopts);
    CHECK(!stage_check(t, Stage::GTT));
    CHECK(!stage_check(t, Stage::CBPVStar));  // recursion-free and cast-free
  }
}

TEST_CASE("type parsing and equality") {
  TypePtr t = parse_type("(U (-> ? (F (+ 1 0))))");
  CHECK(t->tag == TypeTag::Thunk);
  CHECK(type_equal(t, t));
  TypePtr mu1 = parse_type("(mu X (+ 1 X))");
  TypePtr mu2 = parse_type("(mu Z (+ 1 Z))");
  CHECK(type_equal(mu1, mu2));  // alpha
  CHECK(!type_equal(mu1, parse_type("(mu X (+ X 1))")));
  CHECK(type_equal(unroll_type(mu1), parse_type("(+ 1 (mu X (+ 1 X)))")));
  CHECK_THROWS_AS(parse_type("(mu X (F X))"), Error);  // polarity
  CHECK_THROWS_AS(parse_type("Y"), Error);             // unbound
}

TEST_CASE("alpha freshening distinguishes binders") {
  TermPtr t = parse_term("(bind x (ret unit) (bind x (ret x) (ret x)))");
  CHECK(t->x != t->t2->x);
  // inner occurrence refers to the inner binder
  CHECK(t->t2->t2->t1->x == t->t2->x);
}
