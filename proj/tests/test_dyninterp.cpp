#include <doctest.h>

#include "gtt/decomplexify.hpp"
#include "gtt/dyninterp.hpp"
#include "gtt/harness.hpp"
#include "gtt/machine.hpp"
#include "gtt/syntax.hpp"
#include "gtt/typecheck.hpp"

using namespace gtt;

namespace {

TypePtr ground_v_type(const Interp& it, GroundV g) {
  switch (g) {
    case GroundV::Unit: return ty_unit();
    case GroundV::Prod: return ty_prod(it.val_dyn, it.val_dyn);
    case GroundV::Sum: return ty_sum(it.val_dyn, it.val_dyn);
    case GroundV::Thunk: return ty_thunk(it.comp_dyn);
  }
  return nullptr;
}

TypePtr ground_c_type(const Interp& it, GroundC g) {
  switch (g) {
    case GroundC::With: return ty_with(it.comp_dyn, it.comp_dyn);
    case GroundC::Arrow: return ty_arrow(it.val_dyn, it.comp_dyn);
    case GroundC::Ret: return ty_ret(it.val_dyn);
  }
  return nullptr;
}

Result run(const TermPtr& program) { return eval(simp_comp(program), 100000).result; }

}  // namespace

TEST_CASE("dynamic types are closed CBPV* types with the right unrollings") {
  for (const Interp* it : {&natural_interp(), &scheme_interp()}) {
    CHECK(type_closed(it->val_dyn));
    CHECK(type_closed(it->comp_dyn));
    CHECK(!stage_check_type(it->val_dyn, Stage::CBPVStar));
    CHECK(!stage_check_type(it->comp_dyn, Stage::CBPVStar));
  }
  // natural: ? ~ 1 + ((?x?) + ((?+?) + U dyncomp))
  const Interp& nat = natural_interp();
  TypePtr d = nat.val_dyn;
  TypePtr s = unroll_type(d);
  CHECK(type_equal(s, ty_sum(ty_unit(),
                             ty_sum(ty_prod(d, d),
                                    ty_sum(ty_sum(d, d), ty_thunk(nat.comp_dyn))))));
  // natural: dyncomp ~ (C&C) & ((?->C) & F?)
  TypePtr c = nat.comp_dyn;
  CHECK(type_equal(unroll_type(c),
                   ty_with(ty_with(c, c), ty_with(ty_arrow(d, c), ty_ret(d)))));

  // scheme: ? ~ ((1+1) + U dyncomp) + (? x ?)
  const Interp& sch = scheme_interp();
  TypePtr ds = sch.val_dyn;
  CHECK(type_equal(unroll_type(ds),
                   ty_sum(ty_sum(ty_bool(), ty_thunk(sch.comp_dyn)), ty_prod(ds, ds))));
  // scheme: dyncomp ~ (? -> dyncomp) & F ?
  CHECK(type_equal(unroll_type(sch.comp_dyn),
                   ty_with(ty_arrow(ds, sch.comp_dyn), ty_ret(ds))));
}

TEST_CASE("embeddings and projections typecheck at their stated types") {
  for (const Interp* it : {&natural_interp(), &scheme_interp()}) {
    for (GroundV g : {GroundV::Unit, GroundV::Prod, GroundV::Sum, GroundV::Thunk}) {
      TypeEnv env;
      env.vars.emplace_back(it->embed_var, ground_v_type(*it, g));
      TypePtr got = infer_value(env, it->embed_v(g), Stage::CBPVStar);
      CHECK(type_equal(got, it->val_dyn));

      TypeEnv senv;
      senv.stoup = ty_ret(it->val_dyn);
      TypePtr pgot = infer_comp(senv, it->project_v(g), Stage::CBPVStar);
      CHECK(type_equal(pgot, ty_ret(ground_v_type(*it, g))));
    }
    for (GroundC g : {GroundC::With, GroundC::Arrow, GroundC::Ret}) {
      TypeEnv env;
      env.vars.emplace_back(it->embed_var, ty_thunk(ground_c_type(*it, g)));
      TypePtr got = infer_value(env, it->embed_c(g), Stage::CBPVStar);
      CHECK(type_equal(got, ty_thunk(it->comp_dyn)));

      TypeEnv senv;
      senv.stoup = it->comp_dyn;
      TypePtr pgot = infer_comp(senv, it->project_c(g), Stage::CBPVStar);
      CHECK(type_equal(pgot, ground_c_type(*it, g)));
    }
  }
}

TEST_CASE("natural: unit embedding round-trips, mismatches error") {
  const Interp& it = natural_interp();
  // project(1)[ret(embed(1) unit)] evaluates back to ret unit
  TermPtr emb = it.apply_embed_v(GroundV::Unit, mk_unit());
  TermPtr round = plug_stack(it.project_v(GroundV::Unit), mk_ret(emb));
  TermPtr prog = mk_bind("r", round, mk_ret(mk_inl(mk_var("r"), ty_bool())));
  CHECK(run(prog).kind == ResultKind::RetTrue);

  // project(1) on an embedded ?x? value errors
  TermPtr paird = it.apply_embed_v(GroundV::Unit, mk_unit());
  TermPtr embp = it.apply_embed_v(GroundV::Prod, mk_pair(paird, paird));
  TermPtr bad = plug_stack(it.project_v(GroundV::Unit), mk_ret(embp));
  TermPtr prog2 = mk_bind("r", bad, mk_ret(mk_inl(mk_var("r"), ty_bool())));
  CHECK(run(prog2).kind == ResultKind::Error);
}

TEST_CASE("natural: embedded F? computation errors at the wrong ground") {
  const Interp& it = natural_interp();
  // embed a returner as dyncomp, then project at ? -> dyncomp and apply
  TermPtr retcomp = mk_thunk(mk_ret(it.apply_embed_v(GroundV::Unit, mk_unit())));
  TermPtr embedded = it.apply_embed_c(GroundC::Ret, retcomp);
  TermPtr asfun = plug_stack(it.project_c(GroundC::Arrow), mk_force(embedded));
  TermPtr applied = mk_app(asfun, it.apply_embed_v(GroundV::Unit, mk_unit()));
  // applied : dyncomp; observe it at its F? component
  TermPtr observed = plug_stack(it.project_c(GroundC::Ret),
                                mk_rollnu(it.comp_dyn, mk_unrollnu(applied)));
  TermPtr prog = mk_bind("r", observed, mk_ret(mk_true()));
  CHECK(run(prog).kind == ResultKind::Error);
}

TEST_CASE("scheme: unit embeds as the boolean true leaf") {
  const Interp& it = scheme_interp();
  TermPtr leaf = it.apply_embed_v(GroundV::Unit, mk_unit());
  // shape: roll (inl (inl (inl unit)))
  REQUIRE(leaf->tag == TermTag::RollMu);
  REQUIRE(leaf->t1->tag == TermTag::Inl);
  REQUIRE(leaf->t1->t1->tag == TermTag::Inl);
  CHECK(leaf->t1->t1->t1->tag == TermTag::Inl);
  CHECK(leaf->t1->t1->t1->t1->tag == TermTag::UnitV);

  // and projects back to unit
  TermPtr round = plug_stack(it.project_v(GroundV::Unit), mk_ret(leaf));
  TermPtr prog = mk_bind("r", round, mk_ret(mk_inl(mk_var("r"), ty_bool())));
  CHECK(run(prog).kind == ResultKind::RetTrue);
}

TEST_CASE("scheme: pair projection on a boolean leaf errors") {
  const Interp& it = scheme_interp();
  TermPtr leaf = it.apply_embed_v(GroundV::Unit, mk_unit());
  TermPtr bad = plug_stack(it.project_v(GroundV::Prod), mk_ret(leaf));
  TermPtr prog = mk_bind("r", bad, mk_ret(mk_true()));
  CHECK(run(prog).kind == ResultKind::Error);
}

TEST_CASE("scheme: sums embed as boolean-tagged pairs") {
  const Interp& it = scheme_interp();
  TermPtr d = it.apply_embed_v(GroundV::Unit, mk_unit());
  TypePtr sum_dd = ty_sum(it.val_dyn, it.val_dyn);
  TermPtr embedded = it.apply_embed_v(GroundV::Sum, mk_inl(d, sum_dd));
  // evaluate the complex value by returning it, then project the pair ground
  TermPtr as_pair = plug_stack(it.project_v(GroundV::Prod), mk_ret(embedded));
  // the first component must be the true leaf: project unit out of it
  TermPtr prog = mk_bind(
      "p", as_pair,
      mk_split(mk_var("p"), "t", "payload",
               mk_bind("u", plug_stack(it.project_v(GroundV::Unit), mk_ret(mk_var("t"))),
                       mk_ret(mk_inl(mk_var("u"), ty_bool())))));
  CHECK(run(prog).kind == ResultKind::RetTrue);

  // round trip through the sum projection restores the injection tag
  TermPtr round = plug_stack(it.project_v(GroundV::Sum), mk_ret(embedded));
  TermPtr prog2 = mk_bind("s", round,
                          mk_case(mk_var("s"), "a", mk_ret(mk_true()), "b",
                                  mk_ret(mk_false())));
  CHECK(run(prog2).kind == ResultKind::RetTrue);
}

TEST_CASE("scheme: lazy pairs embed as boolean-indexed functions") {
  const Interp& it = scheme_interp();
  TypePtr ww = ty_with(it.comp_dyn, it.comp_dyn);
  // a lazy pair whose first component returns a true leaf and second errors
  TermPtr truthy = mk_rollnu(
      it.comp_dyn, mk_wpair(mk_err(ty_arrow(it.val_dyn, it.comp_dyn)),
                            mk_ret(it.apply_embed_v(GroundV::Unit, mk_unit()))));
  TermPtr w = mk_thunk(mk_wpair(truthy, mk_err(it.comp_dyn)));
  TermPtr embedded = it.apply_embed_c(GroundC::With, w);
  TermPtr back = plug_stack(it.project_c(GroundC::With), mk_force(embedded));
  // fst(back) should behave like `truthy`: its F? component returns the leaf
  TermPtr observed = plug_stack(it.project_c(GroundC::Ret), mk_fst(back));
  TermPtr prog =
      mk_bind("r", observed,
              mk_bind("u", plug_stack(it.project_v(GroundV::Unit), mk_ret(mk_var("r"))),
                      mk_ret(mk_inl(mk_var("u"), ty_bool()))));
  CHECK(run(prog).kind == ResultKind::RetTrue);

  // snd(back) errors
  TermPtr observed2 = plug_stack(it.project_c(GroundC::Ret), mk_snd(back));
  TermPtr prog2 = mk_bind("r", observed2, mk_ret(mk_true()));
  CHECK(run(prog2).kind == ResultKind::Error);
}

TEST_CASE("interp_type is compositional and injective") {
  const Interp& nat = natural_interp();
  const Interp& sch = scheme_interp();
  CHECK(type_equal(interp_type(nat, parse_type("(U (F ?))")),
                   ty_thunk(ty_ret(nat.val_dyn))));
  CHECK(type_equal(interp_type(nat, ty_unit()), ty_unit()));
  CHECK(type_equal(interp_type(sch, ty_codyn()), sch.comp_dyn));

  TypeUniverse u = build_universe(3);
  for (const Interp* it : {&nat, &sch}) {
    std::vector<std::string> seen;
    for (auto& t : u.values) seen.push_back(print_type(interp_type(*it, t)));
    for (auto& t : u.comps) seen.push_back(print_type(interp_type(*it, t)));
    std::vector<std::string> uniq = seen;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    CHECK(uniq.size() == seen.size());
  }
}

TEST_CASE("translated types pass the CBPV* stage check") {
  TypeUniverse u = build_universe(3);
  for (const Interp* it : {&natural_interp(), &scheme_interp()}) {
    for (auto& t : u.values) CHECK(!stage_check_type(interp_type(*it, t), Stage::CBPVStar));
    for (auto& t : u.comps) CHECK(!stage_check_type(interp_type(*it, t), Stage::CBPVStar));
  }
}
