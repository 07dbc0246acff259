#include "gtt/elaborate.hpp"

#include <cassert>

#include "gtt/typecheck.hpp"

namespace gtt {

namespace {

struct Elaborator {
  const Interp& interp;
  NameGen gen;

  explicit Elaborator(const Interp& i) : interp(i) {}

  TypePtr ty(const TypePtr& t) { return interp_type(interp, t); }

  DynDerivPtr fmon(const DynDerivPtr& d) {
    DynDerivPtr r = derive_c(ty_ret(d->lhs), ty_ret(d->rhs));
    assert(r);
    return r;
  }
  DynDerivPtr umon(const DynDerivPtr& d) {
    DynDerivPtr r = derive_v(ty_thunk(d->lhs), ty_thunk(d->rhs));
    assert(r);
    return r;
  }

  // x : [[A]] |- V : [[A']]
  UpcastContract upcast(const DynDerivPtr& d) {
    std::string x = gen.fresh("x");
    return {x, upcast_body(d, mk_var(x))};
  }

  // the upcast contract applied to value v
  TermPtr upcast_body(const DynDerivPtr& d, const TermPtr& v) {
    switch (d->rule) {
      case DynRule::VRefl:
        return v;
      case DynRule::ZeroBot:
        return mk_abort(v, ty(d->rhs));
      case DynRule::ToDyn: {
        // embed(floor(A)) after A <= floor(A)
        TermPtr inner = upcast_body(d->d1, v);
        return interp.apply_embed_v(ground_v_of(d->d1->rhs), inner);
      }
      case DynRule::SumMon: {
        TypePtr target = ty(d->rhs);
        std::string x1 = gen.fresh("x"), x2 = gen.fresh("x");
        return mk_case(v, x1, mk_inl(upcast_body(d->d1, mk_var(x1)), target), x2,
                       mk_inr(upcast_body(d->d2, mk_var(x2)), target));
      }
      case DynRule::ProdMon: {
        std::string x1 = gen.fresh("x"), x2 = gen.fresh("x");
        return mk_split(v, x1, x2,
                        mk_pair(upcast_body(d->d1, mk_var(x1)),
                                upcast_body(d->d2, mk_var(x2))));
      }
      case DynRule::UMon:
        return upcast_thunk(d->d1, v);
      default:
        fail({}, "E_ELAB", "upcast applied to a computation derivation");
    }
  }

  // x : U[[B]] |- V : U[[B']] for a computation derivation B <= B'
  TermPtr upcast_thunk(const DynDerivPtr& d, const TermPtr& v) {
    switch (d->rule) {
      case DynRule::CoDynRefl:
        return v;
      case DynRule::TopBot:
        return mk_thunk(mk_err(ty(d->rhs)));
      case DynRule::CToDyn: {
        TermPtr inner = upcast_thunk(d->d1, v);
        return interp.apply_embed_c(ground_c_of(d->d1->rhs), inner);
      }
      case DynRule::FMon: {
        std::string y = gen.fresh("y");
        return mk_thunk(mk_bind(y, mk_force(v),
                                mk_ret(upcast_body(d->d1, mk_var(y)))));
      }
      case DynRule::WithMon: {
        TermPtr left = upcast_thunk(d->d1, mk_thunk(mk_fst(mk_force(v))));
        TermPtr right = upcast_thunk(d->d2, mk_thunk(mk_snd(mk_force(v))));
        return mk_thunk(mk_wpair(mk_force(left), mk_force(right)));
      }
      case DynRule::ArrowMon: {
        std::string xp = gen.fresh("x"), xa = gen.fresh("x");
        TermPtr dn_arg = dncast(fmon(d->d1));  // hole : F[[A']] |- F[[A]]
        TermPtr applied =
            upcast_thunk(d->d2, mk_thunk(mk_app(mk_force(v), mk_var(xa))));
        return mk_thunk(mk_lam(
            xp, ty(d->rhs->a),
            mk_bind(xa, plug_stack(dn_arg, mk_ret(mk_var(xp))), mk_force(applied))));
      }
      default:
        fail({}, "E_ELAB", "computation upcast applied to a value derivation");
    }
  }

  // hole : [[B']] |- S : [[B]]
  TermPtr dncast(const DynDerivPtr& d) {
    switch (d->rule) {
      case DynRule::CoDynRefl:
        return mk_hole();
      case DynRule::TopBot:
        return mk_emptypair();
      case DynRule::CToDyn:
        return plug_stack(dncast(d->d1), interp.project_c(ground_c_of(d->d1->rhs)));
      case DynRule::FMon:
        return dncast_ret(d->d1);
      case DynRule::WithMon:
        return mk_wpair(plug_stack(dncast(d->d1), mk_fst(mk_hole())),
                        plug_stack(dncast(d->d2), mk_snd(mk_hole())));
      case DynRule::ArrowMon: {
        std::string x = gen.fresh("x");
        TermPtr arg = upcast_body(d->d1, mk_var(x));
        return mk_lam(x, ty(d->lhs->a),
                      plug_stack(dncast(d->d2), mk_app(mk_hole(), arg)));
      }
      default:
        fail({}, "E_ELAB", "downcast applied to a value derivation");
    }
  }

  // hole : F[[A']] |- S : F[[A]] for a value derivation A <= A'
  TermPtr dncast_ret(const DynDerivPtr& d) {
    switch (d->rule) {
      case DynRule::VRefl:
        return mk_hole();
      case DynRule::ZeroBot: {
        std::string x = gen.fresh("x");
        return mk_bind(x, mk_hole(), mk_err(ty_ret(ty(d->lhs))));
      }
      case DynRule::ToDyn:
        return plug_stack(dncast_ret(d->d1),
                          interp.project_v(ground_v_of(d->d1->rhs)));
      case DynRule::SumMon: {
        TypePtr target = ty(d->lhs);
        std::string s = gen.fresh("s");
        std::string x1p = gen.fresh("x"), x1 = gen.fresh("x");
        std::string x2p = gen.fresh("x"), x2 = gen.fresh("x");
        TermPtr left =
            mk_bind(x1, plug_stack(dncast_ret(d->d1), mk_ret(mk_var(x1p))),
                    mk_ret(mk_inl(mk_var(x1), target)));
        TermPtr right =
            mk_bind(x2, plug_stack(dncast_ret(d->d2), mk_ret(mk_var(x2p))),
                    mk_ret(mk_inr(mk_var(x2), target)));
        return mk_bind(s, mk_hole(), mk_case(mk_var(s), x1p, left, x2p, right));
      }
      case DynRule::ProdMon: {
        std::string p = gen.fresh("p");
        std::string x1p = gen.fresh("x"), x1 = gen.fresh("x");
        std::string x2p = gen.fresh("x"), x2 = gen.fresh("x");
        // components sequenced left to right
        TermPtr inner =
            mk_bind(x1, plug_stack(dncast_ret(d->d1), mk_ret(mk_var(x1p))),
                    mk_bind(x2, plug_stack(dncast_ret(d->d2), mk_ret(mk_var(x2p))),
                            mk_ret(mk_pair(mk_var(x1), mk_var(x2)))));
        return mk_bind(p, mk_hole(),
                       mk_split(mk_var(p), x1p, x2p, inner));
      }
      case DynRule::UMon: {
        std::string xp = gen.fresh("x");
        return mk_bind(xp, mk_hole(),
                       mk_ret(mk_thunk(plug_stack(dncast(d->d1),
                                                  mk_force(mk_var(xp))))));
      }
      default:
        fail({}, "E_ELAB", "F-downcast applied to a computation derivation");
    }
  }

  TermPtr term(const TermPtr& e) {
    if (!e) return nullptr;
    switch (e->tag) {
      case TermTag::UpCast: {
        DynDerivPtr d = derive_v(e->ty1, e->ty2);
        if (!d)
          fail(e->loc, "E_CAST", "dynamism not derivable: " + print_type(e->ty1) +
                                     " <= " + print_type(e->ty2));
        return upcast_body(d, term(e->t1));
      }
      case TermTag::DnCast: {
        DynDerivPtr d = derive_c(e->ty1, e->ty2);
        if (!d)
          fail(e->loc, "E_CAST", "dynamism not derivable: " + print_type(e->ty1) +
                                     " <= " + print_type(e->ty2));
        return plug_stack(dncast(d), term(e->t1));
      }
      default: {
        auto r = std::make_shared<Term>(*e);
        if (e->ty1) r->ty1 = ty(e->ty1);
        if (e->ty2) r->ty2 = ty(e->ty2);
        r->t1 = term(e->t1);
        r->t2 = term(e->t2);
        r->t3 = term(e->t3);
        return r;
      }
    }
  }
};

}  // namespace

UpcastContract elab_upcast(const DynDerivPtr& d, const Interp& interp) {
  Elaborator el(interp);
  if (is_value_deriv(d)) return el.upcast(d);
  std::string z = el.gen.fresh("z");
  return {z, el.upcast_thunk(d, mk_var(z))};
}

TermPtr elab_dncast(const DynDerivPtr& d, const Interp& interp) {
  Elaborator el(interp);
  if (!is_value_deriv(d)) return el.dncast(d);
  return el.dncast_ret(d);
}

TermPtr elab_term(const TermPtr& e, const Interp& interp) {
  Elaborator el(interp);
  el.gen.absorb(e);
  TermPtr out = el.term(e);
  // type preservation is machine-checked for closed programs
  if (free_vars(e).empty()) {
    bool closed_comp = true;
    TypePtr src;
    try {
      src = infer_comp(TypeEnv{}, e, Stage::GTT);
    } catch (const Error&) {
      closed_comp = false;
    }
    if (closed_comp) {
      TypePtr got = infer_comp(TypeEnv{}, out, Stage::CBPVStar);
      TypePtr want = interp_type(interp, src);
      if (!type_equal(got, want))
        fail(e->loc, "E_ELAB",
             "elaboration broke typing: expected " + print_type(want) + ", got " +
                 print_type(got));
    }
  }
  return out;
}

}  // namespace gtt
