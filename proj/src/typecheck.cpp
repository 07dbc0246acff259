#include "gtt/typecheck.hpp"

#include "gtt/dynamism.hpp"

namespace gtt {

namespace {

[[noreturn]] void sort_error(const TermPtr& e, const char* expected) {
  fail(e->loc, "E_SORT", std::string("expected a ") + expected + " here");
}

void require_equal(const TermPtr& e, const TypePtr& got, const TypePtr& want,
                   const char* what) {
  if (!type_equal(got, want))
    fail(e->loc, "E_MISMATCH",
         std::string(what) + ": expected " + print_type(want) + ", got " + print_type(got));
}

void check_stage_ann(const TermPtr& e, const TypePtr& t, Stage stage) {
  if (!t) return;
  if (auto f = stage_check_type(t, stage))
    fail(e->loc, "E_STAGE", f->reason + " in annotation " + print_type(t));
  std::set<std::string> fv;
  free_type_vars(t, fv);
  if (!fv.empty())
    fail(e->loc, "E_ANN", "annotation has free type variables: " + print_type(t));
}

TypePtr infer_v(const TypeEnv& env, const TermPtr& v, Stage stage);
TypePtr infer_c(const TypeEnv& env, const TermPtr& m, Stage stage);

// sum/pair/unit/mu elimination shared by both sorts; branch sort given by
// value_sort
TypePtr infer_match(const TypeEnv& env, const TermPtr& e, Stage stage, bool value_sort) {
  auto branch = [&](const TypeEnv& benv, const TermPtr& b) {
    return value_sort ? infer_v(benv, b, stage) : infer_c(benv, b, stage);
  };
  switch (e->tag) {
    case TermTag::Abort: {
      TypePtr t0 = infer_v(env, e->t1, stage);
      require_equal(e, t0, ty_zero(), "abort scrutinee");
      if (!e->ty1)
        fail(e->loc, "E_ANN", "abort requires a type ascription");
      check_stage_ann(e, e->ty1, stage);
      if (value_sort && !is_value_type(e->ty1))
        fail(e->loc, "E_SORT", "abort in value position needs a value-type ascription");
      if (!value_sort && !is_comp_type(e->ty1))
        fail(e->loc, "E_SORT", "abort in computation position needs a computation-type ascription");
      return e->ty1;
    }
    case TermTag::Case: {
      TypePtr s = infer_v(env, e->t1, stage);
      if (s->tag != TypeTag::Sum)
        fail(e->t1->loc, "E_MISMATCH", "case scrutinee is not a sum: " + print_type(s));
      TypePtr l = branch(env.extended(e->x, s->a), e->t2);
      TypePtr r = branch(env.extended(e->y, s->b), e->t3);
      require_equal(e, r, l, "case branches");
      return l;
    }
    case TermTag::UnitSplit: {
      TypePtr s = infer_v(env, e->t1, stage);
      require_equal(e->t1, s, ty_unit(), "usplit scrutinee");
      return branch(env, e->t2);
    }
    case TermTag::Split: {
      TypePtr s = infer_v(env, e->t1, stage);
      if (s->tag != TypeTag::Prod)
        fail(e->t1->loc, "E_MISMATCH", "split scrutinee is not a product: " + print_type(s));
      return branch(env.extended(e->x, s->a).extended(e->y, s->b), e->t2);
    }
    case TermTag::UnrollMu: {
      TypePtr s = infer_v(env, e->t1, stage);
      if (s->tag != TypeTag::Mu)
        fail(e->t1->loc, "E_MISMATCH", "pmroll scrutinee is not a mu type: " + print_type(s));
      return branch(env.extended(e->x, unroll_type(s)), e->t2);
    }
    default:
      sort_error(e, value_sort ? "value" : "computation");
  }
}

TypePtr infer_v(const TypeEnv& env, const TermPtr& v, Stage stage) {
  switch (v->tag) {
    case TermTag::Var: {
      const TypePtr* t = env.find(v->x);
      if (!t) fail(v->loc, "E_UNBOUND", "unbound variable '" + v->x + "'");
      return *t;
    }
    case TermTag::UnitV:
      return ty_unit();
    case TermTag::Inl:
    case TermTag::Inr: {
      if (!v->ty1)
        fail(v->loc, "E_ANN", "sum injection requires a type ascription");
      check_stage_ann(v, v->ty1, stage);
      if (v->ty1->tag != TypeTag::Sum)
        fail(v->loc, "E_ANN", "sum injection ascription is not a sum: " + print_type(v->ty1));
      TypePtr got = infer_v(env, v->t1, stage);
      require_equal(v, got, v->tag == TermTag::Inl ? v->ty1->a : v->ty1->b,
                    "injection payload");
      return v->ty1;
    }
    case TermTag::PairV: {
      TypePtr a = infer_v(env, v->t1, stage);
      TypePtr b = infer_v(env, v->t2, stage);
      return ty_prod(a, b);
    }
    case TermTag::Thunk: {
      TypePtr b = infer_c(env.with_stoup(std::nullopt), v->t1, stage);
      return ty_thunk(b);
    }
    case TermTag::RollMu: {
      if (stage == Stage::GTT)
        fail(v->loc, "E_STAGE", "rollmu not allowed at GTT stage");
      check_stage_ann(v, v->ty1, stage);
      if (v->ty1->tag != TypeTag::Mu)
        fail(v->loc, "E_ANN", "rollmu annotation is not a mu type: " + print_type(v->ty1));
      TypePtr got = infer_v(env, v->t1, stage);
      require_equal(v, got, unroll_type(v->ty1), "rollmu payload");
      return v->ty1;
    }
    case TermTag::UpCast: {
      if (stage != Stage::GTT)
        fail(v->loc, "E_STAGE", "cast not allowed at this stage");
      check_stage_ann(v, v->ty1, stage);
      check_stage_ann(v, v->ty2, stage);
      if (!is_value_type(v->ty1) || !is_value_type(v->ty2))
        fail(v->loc, "E_ANN", "upcast types must be value types");
      TypePtr got = infer_v(env, v->t1, stage);
      require_equal(v, got, v->ty1, "upcast source");
      if (!derive_v(v->ty1, v->ty2))
        fail(v->loc, "E_CAST",
             "dynamism not derivable: " + print_type(v->ty1) + " <= " + print_type(v->ty2));
      return v->ty2;
    }
    case TermTag::Abort:
    case TermTag::Case:
    case TermTag::UnitSplit:
    case TermTag::Split:
    case TermTag::UnrollMu:
      return infer_match(env, v, stage, /*value_sort=*/true);
    default:
      sort_error(v, "value");
  }
}

// the stoup must be consumed: rules for terms that cannot carry a hole
// require env.stoup to be empty
void require_empty_stoup(const TypeEnv& env, const TermPtr& m, const char* what) {
  if (env.stoup)
    fail(m->loc, "E_STOUP",
         std::string(what) + " requires an empty stoup (hole of type " +
             print_type(*env.stoup) + " is unused)");
}

TypePtr infer_c(const TypeEnv& env, const TermPtr& m, Stage stage) {
  switch (m->tag) {
    case TermTag::Hole: {
      if (!env.stoup) fail(m->loc, "E_STOUP", "hole used where no hole is available");
      return *env.stoup;
    }
    case TermTag::Err: {
      require_empty_stoup(env, m, "err");
      check_stage_ann(m, m->ty1, stage);
      if (!is_comp_type(m->ty1))
        fail(m->loc, "E_ANN", "err annotation must be a computation type");
      return m->ty1;
    }
    case TermTag::Force: {
      require_empty_stoup(env, m, "force");
      TypePtr t = infer_v(env, m->t1, stage);
      if (t->tag != TypeTag::Thunk)
        fail(m->loc, "E_MISMATCH", "force of a non-thunk: " + print_type(t));
      return t->a;
    }
    case TermTag::RetV: {
      require_empty_stoup(env, m, "ret");
      return ty_ret(infer_v(env, m->t1, stage));
    }
    case TermTag::Bind: {
      TypePtr tm = infer_c(env, m->t1, stage);
      if (tm->tag != TypeTag::Ret)
        fail(m->t1->loc, "E_MISMATCH", "bind subject is not an F type: " + print_type(tm));
      return infer_c(env.extended(m->x, tm->a).with_stoup(std::nullopt), m->t2, stage);
    }
    case TermTag::Lam: {
      check_stage_ann(m, m->ty1, stage);
      if (!is_value_type(m->ty1))
        fail(m->loc, "E_ANN", "lambda parameter must have a value type");
      TypePtr body = infer_c(env.extended(m->x, m->ty1), m->t1, stage);
      return ty_arrow(m->ty1, body);
    }
    case TermTag::App: {
      TypePtr tf = infer_c(env, m->t1, stage);
      if (tf->tag != TypeTag::Arrow)
        fail(m->t1->loc, "E_MISMATCH", "application of a non-function: " + print_type(tf));
      TypePtr ta = infer_v(env.with_stoup(std::nullopt), m->t2, stage);
      require_equal(m->t2, ta, tf->a, "argument");
      return tf->b;
    }
    case TermTag::EmptyPair:
      return ty_top();
    case TermTag::WithPair: {
      TypePtr b1 = infer_c(env, m->t1, stage);
      TypePtr b2 = infer_c(env, m->t2, stage);
      return ty_with(b1, b2);
    }
    case TermTag::Fst: {
      TypePtr t = infer_c(env, m->t1, stage);
      if (t->tag != TypeTag::With)
        fail(m->loc, "E_MISMATCH", "fst of a non-& type: " + print_type(t));
      return t->a;
    }
    case TermTag::Snd: {
      TypePtr t = infer_c(env, m->t1, stage);
      if (t->tag != TypeTag::With)
        fail(m->loc, "E_MISMATCH", "snd of a non-& type: " + print_type(t));
      return t->b;
    }
    case TermTag::RollNu: {
      if (stage == Stage::GTT)
        fail(m->loc, "E_STAGE", "rollnu not allowed at GTT stage");
      check_stage_ann(m, m->ty1, stage);
      if (m->ty1->tag != TypeTag::Nu)
        fail(m->loc, "E_ANN", "rollnu annotation is not a nu type: " + print_type(m->ty1));
      TypePtr got = infer_c(env, m->t1, stage);
      require_equal(m, got, unroll_type(m->ty1), "rollnu payload");
      return m->ty1;
    }
    case TermTag::UnrollNu: {
      if (stage == Stage::GTT)
        fail(m->loc, "E_STAGE", "unrollnu not allowed at GTT stage");
      TypePtr t = infer_c(env, m->t1, stage);
      if (t->tag != TypeTag::Nu)
        fail(m->loc, "E_MISMATCH", "unrollnu of a non-nu type: " + print_type(t));
      return unroll_type(t);
    }
    case TermTag::DnCast: {
      if (stage != Stage::GTT)
        fail(m->loc, "E_STAGE", "cast not allowed at this stage");
      check_stage_ann(m, m->ty1, stage);
      check_stage_ann(m, m->ty2, stage);
      if (!is_comp_type(m->ty1) || !is_comp_type(m->ty2))
        fail(m->loc, "E_ANN", "downcast types must be computation types");
      TypePtr got = infer_c(env, m->t1, stage);
      require_equal(m, got, m->ty2, "downcast source");
      if (!derive_c(m->ty1, m->ty2))
        fail(m->loc, "E_CAST",
             "dynamism not derivable: " + print_type(m->ty1) + " <= " + print_type(m->ty2));
      return m->ty1;
    }
    case TermTag::Abort:
    case TermTag::Case:
    case TermTag::UnitSplit:
    case TermTag::Split:
    case TermTag::UnrollMu:
      return infer_match(env, m, stage, /*value_sort=*/false);
    default:
      sort_error(m, "computation");
  }
}

}  // namespace

TypePtr infer_value(const TypeEnv& env, const TermPtr& v, Stage stage) {
  return infer_v(env, v, stage);
}

TypePtr infer_comp(const TypeEnv& env, const TermPtr& m, Stage stage) {
  return infer_c(env, m, stage);
}

void check_program(const TermPtr& m, Stage stage) {
  std::set<std::string> fv = free_vars(m);
  if (!fv.empty())
    fail(m->loc, "E_UNBOUND", "program is not closed (free: " + *fv.begin() + ")");
  if (auto f = stage_check(m, stage))
    fail(f->loc, "E_STAGE", f->reason);
  TypePtr t = infer_comp(TypeEnv{}, m, stage);
  TypePtr want = ty_ret(ty_bool());
  if (!type_equal(t, want))
    fail(m->loc, "E_PROGTYPE",
         "program must have type " + print_type(want) + ", got " + print_type(t));
}

}  // namespace gtt
