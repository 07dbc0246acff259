#include "gtt/decomplexify.hpp"

#include <cassert>

namespace gtt {

namespace {

struct Simplifier {
  NameGen gen;
  std::string hole_var;

  // value V : A  ~~>  computation : F A
  TermPtr value(const TermPtr& v) {
    switch (v->tag) {
      case TermTag::Var:
        return mk_ret(v);
      case TermTag::UnitV:
        return mk_ret(mk_unit());
      case TermTag::Inl:
      case TermTag::Inr: {
        std::string x = gen.fresh("x");
        TermPtr inj = v->tag == TermTag::Inl ? mk_inl(mk_var(x), v->ty1)
                                             : mk_inr(mk_var(x), v->ty1);
        return mk_bind(x, value(v->t1), mk_ret(inj));
      }
      case TermTag::PairV: {
        std::string x1 = gen.fresh("x"), x2 = gen.fresh("x");
        return mk_bind(x1, value(v->t1),
                       mk_bind(x2, value(v->t2),
                               mk_ret(mk_pair(mk_var(x1), mk_var(x2)))));
      }
      case TermTag::RollMu: {
        std::string x = gen.fresh("x");
        return mk_bind(x, value(v->t1), mk_ret(mk_rollmu(v->ty1, mk_var(x))));
      }
      case TermTag::Thunk:
        return mk_ret(mk_thunk(comp(v->t1)));
      case TermTag::Abort: {
        std::string x = gen.fresh("x");
        assert(v->ty1);
        return mk_bind(x, value(v->t1), mk_abort(mk_var(x), ty_ret(v->ty1)));
      }
      case TermTag::Case: {
        std::string w = gen.fresh("w");
        return mk_bind(w, value(v->t1),
                       mk_case(mk_var(w), v->x, value(v->t2), v->y, value(v->t3)));
      }
      case TermTag::UnitSplit: {
        std::string w = gen.fresh("w");
        return mk_bind(w, value(v->t1), mk_usplit(mk_var(w), value(v->t2)));
      }
      case TermTag::Split: {
        std::string w = gen.fresh("w");
        return mk_bind(w, value(v->t1),
                       mk_split(mk_var(w), v->x, v->y, value(v->t2)));
      }
      case TermTag::UnrollMu: {
        std::string y = gen.fresh("y");
        return mk_bind(y, value(v->t1), mk_pmroll(mk_var(y), v->x, value(v->t2)));
      }
      default:
        fail(v->loc, "E_SORT", "not a value in de-complexification");
    }
  }

  // computation M : B  ~~>  computation : B
  TermPtr comp(const TermPtr& m) {
    switch (m->tag) {
      case TermTag::Hole:
        if (hole_var.empty())
          fail(m->loc, "E_SORT", "hole in a computation being de-complexified");
        return mk_force(mk_var(hole_var));
      case TermTag::Err:
        return m;
      case TermTag::RetV: {
        std::string x = gen.fresh("x");
        return mk_bind(x, value(m->t1), mk_ret(mk_var(x)));
      }
      case TermTag::App: {
        std::string x = gen.fresh("x");
        return mk_bind(x, value(m->t2), mk_app(comp(m->t1), mk_var(x)));
      }
      case TermTag::Force: {
        std::string x = gen.fresh("x");
        return mk_bind(x, value(m->t1), mk_force(mk_var(x)));
      }
      case TermTag::Abort: {
        std::string x = gen.fresh("x");
        return mk_bind(x, value(m->t1), mk_abort(mk_var(x), m->ty1));
      }
      case TermTag::Case: {
        std::string x = gen.fresh("x");
        return mk_bind(x, value(m->t1),
                       mk_case(mk_var(x), m->x, comp(m->t2), m->y, comp(m->t3)));
      }
      case TermTag::UnitSplit: {
        std::string w = gen.fresh("w");
        return mk_bind(w, value(m->t1), mk_usplit(mk_var(w), comp(m->t2)));
      }
      case TermTag::Split: {
        std::string w = gen.fresh("w");
        return mk_bind(w, value(m->t1),
                       mk_split(mk_var(w), m->x, m->y, comp(m->t2)));
      }
      case TermTag::UnrollMu: {
        std::string y = gen.fresh("y");
        return mk_bind(y, value(m->t1), mk_pmroll(mk_var(y), m->x, comp(m->t2)));
      }
      case TermTag::Bind:
        return mk_bind(m->x, comp(m->t1), comp(m->t2));
      case TermTag::Lam:
        return mk_lam(m->x, m->ty1, comp(m->t1));
      case TermTag::EmptyPair:
        return m;
      case TermTag::WithPair:
        return mk_wpair(comp(m->t1), comp(m->t2));
      case TermTag::Fst:
        return mk_fst(comp(m->t1));
      case TermTag::Snd:
        return mk_snd(comp(m->t1));
      case TermTag::RollNu:
        return mk_rollnu(m->ty1, comp(m->t1));
      case TermTag::UnrollNu:
        return mk_unrollnu(comp(m->t1));
      default:
        fail(m->loc, "E_SORT", "not a computation in de-complexification");
    }
  }
};

}  // namespace

TermPtr simp_value(const TermPtr& v) {
  Simplifier s;
  s.gen.absorb(v);
  return s.value(v);
}

TermPtr simp_comp(const TermPtr& m) {
  Simplifier s;
  s.gen.absorb(m);
  return s.comp(m);
}

TermPtr simp_stack(const TermPtr& st, const std::string& z) {
  Simplifier s;
  s.gen.absorb(st);
  s.hole_var = z;
  return s.comp(st);
}

}  // namespace gtt
