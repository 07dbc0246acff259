#include "gtt/dyninterp.hpp"

#include <cassert>

namespace gtt {

GroundV ground_v_of(const TypePtr& g) {
  switch (g->tag) {
    case TypeTag::Unit: return GroundV::Unit;
    case TypeTag::Prod: return GroundV::Prod;
    case TypeTag::Sum: return GroundV::Sum;
    case TypeTag::Thunk: return GroundV::Thunk;
    default: fail({}, "E_GROUND", "not a value ground type: " + print_type(g));
  }
}

GroundC ground_c_of(const TypePtr& g) {
  switch (g->tag) {
    case TypeTag::With: return GroundC::With;
    case TypeTag::Arrow: return GroundC::Arrow;
    case TypeTag::Ret: return GroundC::Ret;
    default: fail({}, "E_GROUND", "not a computation ground type: " + print_type(g));
  }
}

TermPtr Interp::embed_v(GroundV g) const { return ev[static_cast<int>(g)]; }
TermPtr Interp::project_v(GroundV g) const { return pv[static_cast<int>(g)]; }
TermPtr Interp::embed_c(GroundC g) const { return ec[static_cast<int>(g)]; }
TermPtr Interp::project_c(GroundC g) const { return pc[static_cast<int>(g)]; }

TermPtr Interp::apply_embed_v(GroundV g, const TermPtr& v) const {
  return subst_value(embed_v(g), embed_var, v);
}
TermPtr Interp::apply_embed_c(GroundC g, const TermPtr& v) const {
  return subst_value(embed_c(g), embed_var, v);
}

namespace {

// natural:  ? = mu X. 1 + ((X*X) + ((X+X) + U(nu Y. (Y&Y) & ((X->Y) & F X))))
//           dyncomp = nu Y. (?&?ty...) with the closed ? substituted in
Interp build_natural() {
  Interp it;
  it.name = "natural";

  TypePtr X = ty_vvar("X");
  TypePtr Y = ty_cvar("Y");
  TypePtr nu_body =
      ty_with(ty_with(Y, Y), ty_with(ty_arrow(X, Y), ty_ret(X)));  // (Y&Y)&((X->Y)&FX)
  TypePtr open_nu = ty_nu("Y", nu_body);
  TypePtr sum_open = ty_sum(
      ty_unit(),
      ty_sum(ty_prod(X, X), ty_sum(ty_sum(X, X), ty_thunk(open_nu))));
  TypePtr D = ty_mu("X", sum_open);
  it.val_dyn = D;
  it.comp_dyn = subst_type(open_nu, "X", D);

  TypePtr C = it.comp_dyn;
  TypePtr S = unroll_type(D);           // 1 + ((D*D) + ((D+D) + U C))
  TypePtr rest1 = S->b;                 // (D*D) + ((D+D) + U C)
  TypePtr rest2 = rest1->b;             // (D+D) + U C

  TermPtr x = mk_var(it.embed_var);
  it.ev[static_cast<int>(GroundV::Unit)] = mk_rollmu(D, mk_inl(x, S));
  it.ev[static_cast<int>(GroundV::Prod)] = mk_rollmu(D, mk_inr(mk_inl(x, rest1), S));
  it.ev[static_cast<int>(GroundV::Sum)] =
      mk_rollmu(D, mk_inr(mk_inr(mk_inl(x, rest2), rest1), S));
  it.ev[static_cast<int>(GroundV::Thunk)] =
      mk_rollmu(D, mk_inr(mk_inr(mk_inr(x, rest2), rest1), S));

  // projections: bind y <- hole; pm y as roll t; four-way case with err on
  // tag mismatch
  auto proj = [&](GroundV g, const TypePtr& target) {
    TypePtr ft = ty_ret(target);
    auto slot = [&](GroundV here, const std::string& v) -> TermPtr {
      if (here == g) return mk_ret(mk_var(v));
      return mk_err(ft);
    };
    TermPtr body = mk_case(
        mk_var("t"), "x1", slot(GroundV::Unit, "x1"), "r1",
        mk_case(mk_var("r1"), "x2", slot(GroundV::Prod, "x2"), "r2",
                mk_case(mk_var("r2"), "x3", slot(GroundV::Sum, "x3"), "x4",
                        slot(GroundV::Thunk, "x4"))));
    return mk_bind("y", mk_hole(), mk_pmroll(mk_var("y"), "t", body));
  };
  it.pv[static_cast<int>(GroundV::Unit)] = proj(GroundV::Unit, ty_unit());
  it.pv[static_cast<int>(GroundV::Prod)] = proj(GroundV::Prod, ty_prod(D, D));
  it.pv[static_cast<int>(GroundV::Sum)] = proj(GroundV::Sum, ty_sum(D, D));
  it.pv[static_cast<int>(GroundV::Thunk)] = proj(GroundV::Thunk, ty_thunk(C));

  // computation ground embeds: supply the component, err at all others
  TypePtr withT = ty_with(C, C);
  TypePtr arrT = ty_arrow(D, C);
  TypePtr retT = ty_ret(D);
  TermPtr fz = mk_force(mk_var(it.embed_var));
  auto cocase = [&](GroundC g) {
    TermPtr m_with = g == GroundC::With ? fz : mk_err(withT);
    TermPtr m_arr = g == GroundC::Arrow ? fz : mk_err(arrT);
    TermPtr m_ret = g == GroundC::Ret ? fz : mk_err(retT);
    return mk_thunk(mk_rollnu(C, mk_wpair(m_with, mk_wpair(m_arr, m_ret))));
  };
  it.ec[static_cast<int>(GroundC::With)] = cocase(GroundC::With);
  it.ec[static_cast<int>(GroundC::Arrow)] = cocase(GroundC::Arrow);
  it.ec[static_cast<int>(GroundC::Ret)] = cocase(GroundC::Ret);

  it.pc[static_cast<int>(GroundC::With)] = mk_fst(mk_unrollnu(mk_hole()));
  it.pc[static_cast<int>(GroundC::Arrow)] = mk_fst(mk_snd(mk_unrollnu(mk_hole())));
  it.pc[static_cast<int>(GroundC::Ret)] = mk_snd(mk_snd(mk_unrollnu(mk_hole())));
  return it;
}

// scheme:  ? = mu X. ((1+1) + U(nu Y. (X->Y) & F X)) + (X*X)
//          dyncomp = nu Y. (?->Y) & F ?
// Sums are encoded as boolean-tagged pairs, lazy pairs as boolean-indexed
// functions; 1 embeds as the boolean true.
Interp build_scheme() {
  Interp it;
  it.name = "scheme";

  TypePtr X = ty_vvar("X");
  TypePtr Y = ty_cvar("Y");
  TypePtr open_nu = ty_nu("Y", ty_with(ty_arrow(X, Y), ty_ret(X)));
  TypePtr leaf_open = ty_sum(ty_bool(), ty_thunk(open_nu));
  TypePtr D = ty_mu("X", ty_sum(leaf_open, ty_prod(X, X)));
  it.val_dyn = D;
  it.comp_dyn = subst_type(open_nu, "X", D);

  TypePtr C = it.comp_dyn;
  TypePtr S = unroll_type(D);  // ((1+1) + U C) + (D*D)
  TypePtr leaf = S->a;         // (1+1) + U C

  auto leaf_bool = [&](TermPtr b) {
    return mk_rollmu(D, mk_inl(mk_inl(std::move(b), leaf), S));
  };
  TermPtr true_leaf = leaf_bool(mk_true());
  TermPtr false_leaf = leaf_bool(mk_false());

  TermPtr x = mk_var(it.embed_var);
  it.ev[static_cast<int>(GroundV::Unit)] =
      mk_rollmu(D, mk_inl(mk_inl(mk_inl(x, ty_bool()), leaf), S));
  it.ev[static_cast<int>(GroundV::Thunk)] = mk_rollmu(D, mk_inl(mk_inr(x, leaf), S));
  it.ev[static_cast<int>(GroundV::Prod)] = mk_rollmu(D, mk_inr(x, S));
  it.ev[static_cast<int>(GroundV::Sum)] = mk_case(
      x, "y1", mk_rollmu(D, mk_inr(mk_pair(true_leaf, mk_var("y1")), S)), "y2",
      mk_rollmu(D, mk_inr(mk_pair(false_leaf, mk_var("y2")), S)));

  // boolean-leaf projection, reused by Unit and Sum
  auto bool_proj_body = [&](const TypePtr& ft, const TermPtr& on_bool) {
    // pm y as roll t; case t { leaf l: case l { b: on_bool | h: err } | p: err }
    return mk_pmroll(
        mk_var("y"), "t",
        mk_case(mk_var("t"), "l",
                mk_case(mk_var("l"), "b", on_bool, "h", mk_err(ft)), "p",
                mk_err(ft)));
  };

  {
    TypePtr ft = ty_ret(ty_unit());
    TermPtr on_bool = mk_case(mk_var("b"), "u", mk_ret(mk_var("u")), "u2", mk_err(ft));
    it.pv[static_cast<int>(GroundV::Unit)] =
        mk_bind("y", mk_hole(), bool_proj_body(ft, on_bool));
  }
  {
    TypePtr ft = ty_ret(ty_thunk(C));
    TermPtr body = mk_pmroll(
        mk_var("y"), "t",
        mk_case(mk_var("t"), "l",
                mk_case(mk_var("l"), "b", mk_err(ft), "h", mk_ret(mk_var("h"))), "p",
                mk_err(ft)));
    it.pv[static_cast<int>(GroundV::Thunk)] = mk_bind("y", mk_hole(), body);
  }
  {
    TypePtr ft = ty_ret(ty_prod(D, D));
    TermPtr body = mk_pmroll(
        mk_var("y"), "t",
        mk_case(mk_var("t"), "l", mk_err(ft), "p", mk_ret(mk_var("p"))));
    it.pv[static_cast<int>(GroundV::Prod)] = mk_bind("y", mk_hole(), body);
  }
  {
    // sum: check the pair case, then project the boolean tag from the first
    // component and re-inject
    TypePtr sumT = ty_sum(D, D);
    TypePtr ft = ty_ret(sumT);
    TermPtr tag_case =
        mk_case(mk_var("b"), "u", mk_ret(mk_inl(mk_var("d2"), sumT)), "u2",
                mk_ret(mk_inr(mk_var("d2"), sumT)));
    TermPtr from_d1 = mk_pmroll(
        mk_var("d1"), "t2",
        mk_case(mk_var("t2"), "l2",
                mk_case(mk_var("l2"), "b", tag_case, "h2", mk_err(ft)), "p2",
                mk_err(ft)));
    TermPtr body = mk_pmroll(
        mk_var("y"), "t",
        mk_case(mk_var("t"), "l", mk_err(ft), "p",
                mk_split(mk_var("p"), "d1", "d2", from_d1)));
    it.pv[static_cast<int>(GroundV::Sum)] = mk_bind("y", mk_hole(), body);
  }

  TypePtr arrT = ty_arrow(D, C);
  TypePtr retT = ty_ret(D);
  TermPtr fz = mk_force(mk_var(it.embed_var));
  it.ec[static_cast<int>(GroundC::Arrow)] =
      mk_thunk(mk_rollnu(C, mk_wpair(fz, mk_err(retT))));
  it.ec[static_cast<int>(GroundC::Ret)] =
      mk_thunk(mk_rollnu(C, mk_wpair(mk_err(arrT), fz)));
  {
    // lazy pair as a boolean-indexed function: project the tag from the
    // dynamic argument, then dispatch
    TypePtr fb = ty_ret(ty_bool());
    TermPtr tag_of_d = mk_pmroll(
        mk_var("y"), "t",
        mk_case(mk_var("t"), "l",
                mk_case(mk_var("l"), "b", mk_ret(mk_var("b")), "h", mk_err(fb)), "p",
                mk_err(fb)));
    TermPtr dispatch = mk_case(mk_var("b"), "u", mk_fst(fz), "u2", mk_snd(fz));
    TermPtr lam = mk_lam(
        "d", D,
        mk_bind("y", mk_ret(mk_var("d")), mk_bind("b", tag_of_d, dispatch)));
    it.ec[static_cast<int>(GroundC::With)] =
        mk_thunk(mk_rollnu(C, mk_wpair(lam, mk_err(retT))));
  }

  it.pc[static_cast<int>(GroundC::Arrow)] = mk_fst(mk_unrollnu(mk_hole()));
  it.pc[static_cast<int>(GroundC::Ret)] = mk_snd(mk_unrollnu(mk_hole()));
  it.pc[static_cast<int>(GroundC::With)] =
      mk_wpair(mk_app(mk_fst(mk_unrollnu(mk_hole())), true_leaf),
               mk_app(mk_fst(mk_unrollnu(mk_hole())), false_leaf));
  return it;
}

}  // namespace

const Interp& natural_interp() {
  static const Interp it = build_natural();
  return it;
}

const Interp& scheme_interp() {
  static const Interp it = build_scheme();
  return it;
}

const Interp& interp_by_name(const std::string& name) {
  if (name == "natural") return natural_interp();
  if (name == "scheme") return scheme_interp();
  fail({}, "E_INTERP", "unknown interpretation '" + name + "' (natural|scheme)");
}

TypePtr interp_type(const Interp& interp, const TypePtr& t) {
  switch (t->tag) {
    case TypeTag::Dyn:
      return interp.val_dyn;
    case TypeTag::CoDyn:
      return interp.comp_dyn;
    case TypeTag::Zero:
    case TypeTag::Unit:
    case TypeTag::Top:
    case TypeTag::VVar:
    case TypeTag::CVar:
      return t;
    case TypeTag::Thunk:
      return ty_thunk(interp_type(interp, t->a));
    case TypeTag::Ret:
      return ty_ret(interp_type(interp, t->a));
    case TypeTag::Mu:
      return ty_mu(t->name, interp_type(interp, t->a));
    case TypeTag::Nu:
      return ty_nu(t->name, interp_type(interp, t->a));
    case TypeTag::Sum:
      return ty_sum(interp_type(interp, t->a), interp_type(interp, t->b));
    case TypeTag::Prod:
      return ty_prod(interp_type(interp, t->a), interp_type(interp, t->b));
    case TypeTag::With:
      return ty_with(interp_type(interp, t->a), interp_type(interp, t->b));
    case TypeTag::Arrow:
      return ty_arrow(interp_type(interp, t->a), interp_type(interp, t->b));
  }
  return t;
}

}  // namespace gtt
