#include "gtt/harness.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>

#include "gtt/decomplexify.hpp"
#include "gtt/elaborate.hpp"
#include "gtt/typecheck.hpp"

namespace gtt {

// ---------------------------------------------------------------------------
// type universe
// ---------------------------------------------------------------------------

namespace {

void add_unique(std::vector<TypePtr>& out, std::map<std::string, bool>& seen,
                const TypePtr& t) {
  std::string key = print_type(t);
  if (seen.emplace(key, true).second) out.push_back(t);
}

void add_with_subterms(TypeUniverse& u, std::map<std::string, bool>& seen_v,
                       std::map<std::string, bool>& seen_c, const TypePtr& t) {
  if (is_value_type(t))
    add_unique(u.values, seen_v, t);
  else
    add_unique(u.comps, seen_c, t);
  if (t->a) add_with_subterms(u, seen_v, seen_c, t->a);
  if (t->b) add_with_subterms(u, seen_v, seen_c, t->b);
}

}  // namespace

TypeUniverse build_universe(int depth) {
  TypeUniverse u;
  u.depth = depth;
  std::map<std::string, bool> seen_v, seen_c;

  std::vector<TypePtr> v0 = {ty_dyn(), ty_zero(), ty_unit()};
  std::vector<TypePtr> c0 = {ty_codyn(), ty_top()};
  for (auto& t : v0) add_unique(u.values, seen_v, t);
  for (auto& t : c0) add_unique(u.comps, seen_c, t);

  if (depth >= 2) {
    for (auto& a : v0)
      for (auto& b : v0) {
        add_unique(u.values, seen_v, ty_sum(a, b));
        add_unique(u.values, seen_v, ty_prod(a, b));
      }
    for (auto& b : c0) add_unique(u.values, seen_v, ty_thunk(b));
    for (auto& a : v0) add_unique(u.comps, seen_c, ty_ret(a));
    for (auto& a : c0)
      for (auto& b : c0) add_unique(u.comps, seen_c, ty_with(a, b));
    for (auto& a : v0)
      for (auto& b : c0) add_unique(u.comps, seen_c, ty_arrow(a, b));
  }

  if (depth >= 3) {
    TypePtr b2 = ty_bool();
    TypePtr dyn = ty_dyn(), codyn = ty_codyn(), one = ty_unit();
    std::vector<TypePtr> extra = {
        // corpus types and connective coverage one level deeper
        ty_thunk(ty_ret(one)),
        ty_thunk(ty_ret(dyn)),
        ty_thunk(ty_ret(b2)),
        ty_thunk(ty_ret(ty_zero())),
        ty_thunk(ty_arrow(one, ty_ret(one))),
        ty_thunk(ty_arrow(b2, ty_ret(b2))),
        ty_thunk(ty_arrow(dyn, ty_ret(dyn))),
        ty_thunk(ty_arrow(dyn, codyn)),
        ty_thunk(ty_with(ty_ret(one), ty_ret(one))),
        ty_thunk(ty_with(codyn, codyn)),
        ty_sum(b2, one),
        ty_sum(one, b2),
        ty_sum(b2, dyn),
        ty_prod(b2, b2),
        ty_prod(one, b2),
        ty_prod(dyn, b2),
        ty_prod(ty_thunk(codyn), one),
        ty_ret(b2),
        ty_ret(ty_prod(one, one)),
        ty_ret(ty_prod(one, b2)),
        ty_ret(ty_sum(one, dyn)),
        ty_ret(ty_prod(dyn, dyn)),
        ty_ret(ty_sum(dyn, dyn)),
        ty_ret(ty_thunk(codyn)),
        ty_ret(ty_thunk(ty_ret(one))),
        ty_arrow(b2, ty_ret(b2)),
        ty_arrow(one, ty_ret(b2)),
        ty_arrow(dyn, ty_ret(dyn)),
        ty_arrow(one, ty_with(ty_ret(one), ty_ret(b2))),
        ty_arrow(ty_thunk(ty_ret(one)), ty_ret(b2)),
        ty_with(ty_ret(one), ty_ret(b2)),
        ty_with(ty_ret(dyn), codyn),
        ty_with(ty_top(), ty_ret(one)),
        ty_arrow(one, ty_top()),
    };
    for (auto& t : extra) add_with_subterms(u, seen_v, seen_c, t);
  }
  return u;
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

TermPtr omega_at(const TypePtr& b) {
  TypePtr a0 = ty_mu("X", ty_thunk(ty_arrow(ty_vvar("X"), b)));
  TermPtr body = mk_pmroll(mk_var("lx"), "ly", mk_app(mk_force(mk_var("ly")), mk_var("lx")));
  TermPtr f = mk_thunk(mk_lam("lx", a0, body));
  return mk_app(mk_force(f), mk_rollmu(a0, f));
}

namespace {

void cap_list(std::vector<TermPtr>& v, size_t cap) {
  if (v.size() > cap) v.resize(cap);
}

std::vector<TermPtr> enum_rec(const TypePtr& a, int depth, const EnumOptions& opts);

std::vector<TermPtr> schemas_rec(const TypePtr& b, int depth, const EnumOptions& opts) {
  std::vector<TermPtr> out;
  out.push_back(mk_err(b));
  if (opts.with_loops && depth >= 2) out.push_back(omega_at(b));
  if (depth <= 0) return out;
  switch (b->tag) {
    case TypeTag::Ret:
      for (auto& v : enum_rec(b->a, depth, opts)) out.push_back(mk_ret(v));
      break;
    case TypeTag::Arrow:
      for (auto& s : schemas_rec(b->b, depth - 1, opts))
        out.push_back(mk_lam("cv", b->a, s));
      break;
    case TypeTag::With: {
      auto ls = schemas_rec(b->a, depth - 1, opts);
      auto rs = schemas_rec(b->b, depth - 1, opts);
      for (auto& l : ls) {
        for (auto& r : rs) {
          out.push_back(mk_wpair(l, r));
          if (out.size() >= opts.cap) break;
        }
        if (out.size() >= opts.cap) break;
      }
      break;
    }
    case TypeTag::Top:
      out.push_back(mk_emptypair());
      break;
    case TypeTag::Nu:
      for (auto& s : schemas_rec(unroll_type(b), depth - 1, opts))
        out.push_back(mk_rollnu(b, s));
      break;
    default:
      fail({}, "E_ENUM", "cannot build computations at " + print_type(b));
  }
  cap_list(out, opts.cap);
  return out;
}

std::vector<TermPtr> enum_rec(const TypePtr& a, int depth, const EnumOptions& opts) {
  std::vector<TermPtr> out;
  switch (a->tag) {
    case TypeTag::Unit:
      out.push_back(mk_unit());
      break;
    case TypeTag::Zero:
      break;
    case TypeTag::Sum: {
      for (auto& v : enum_rec(a->a, depth, opts)) out.push_back(mk_inl(v, a));
      for (auto& v : enum_rec(a->b, depth, opts)) out.push_back(mk_inr(v, a));
      break;
    }
    case TypeTag::Prod: {
      auto ls = enum_rec(a->a, depth, opts);
      auto rs = enum_rec(a->b, depth, opts);
      for (auto& l : ls) {
        for (auto& r : rs) {
          out.push_back(mk_pair(l, r));
          if (out.size() >= opts.cap) break;
        }
        if (out.size() >= opts.cap) break;
      }
      break;
    }
    case TypeTag::Thunk:
      if (depth > 0)
        for (auto& s : schemas_rec(a->a, depth - 1, opts)) out.push_back(mk_thunk(s));
      break;
    case TypeTag::Mu:
      if (depth > 0)
        for (auto& v : enum_rec(unroll_type(a), depth - 1, opts))
          out.push_back(mk_rollmu(a, v));
      break;
    default:
      fail({}, "E_ENUM", "cannot enumerate values at " + print_type(a));
  }
  cap_list(out, opts.cap);
  return out;
}

}  // namespace

std::vector<TermPtr> enumerate_values(const TypePtr& a, const EnumOptions& opts) {
  return enum_rec(a, opts.depth, opts);
}

std::vector<TermPtr> comp_schemas(const TypePtr& b, const EnumOptions& opts) {
  return schemas_rec(b, opts.depth, opts);
}

// ---------------------------------------------------------------------------
// observers
// ---------------------------------------------------------------------------

std::string Observer::describe() const {
  std::string s = print_term(stack);
  for (auto& [x, v] : closing) s += " [" + x + ":=" + print_term(v) + "]";
  return s;
}

namespace {

std::vector<std::pair<std::string, TermPtr>> disc_rec(const TypePtr& a, int depth,
                                                      const EnumOptions& opts);
std::vector<TermPtr> obs_rec(const TypePtr& b, int depth, const EnumOptions& opts);

const size_t kDiscCap = 10;
const size_t kObsCap = 12;

std::vector<std::pair<std::string, TermPtr>> disc_rec(const TypePtr& a, int depth,
                                                      const EnumOptions& opts) {
  std::vector<std::pair<std::string, TermPtr>> out;
  TypePtr f2 = ty_ret(ty_bool());
  if (type_equal(a, ty_bool())) {
    out.emplace_back("v", mk_ret(mk_var("v")));
    return out;
  }
  switch (a->tag) {
    case TypeTag::Unit:
      out.emplace_back("v", mk_ret(mk_true()));
      break;
    case TypeTag::Zero:
      out.emplace_back("v", mk_abort(mk_var("v"), f2));
      break;
    case TypeTag::Sum: {
      out.emplace_back("v", mk_case(mk_var("v"), "u1", mk_ret(mk_true()), "u2",
                                    mk_ret(mk_false())));
      for (auto& [x, d] : disc_rec(a->a, depth, opts))
        out.emplace_back("v", mk_case(mk_var("v"), x, d, "u2", mk_ret(mk_false())));
      for (auto& [x, d] : disc_rec(a->b, depth, opts))
        out.emplace_back("v", mk_case(mk_var("v"), "u1", mk_ret(mk_false()), x, d));
      break;
    }
    case TypeTag::Prod: {
      for (auto& [x, d] : disc_rec(a->a, depth, opts))
        out.emplace_back("v", mk_split(mk_var("v"), x, "u2", d));
      for (auto& [x, d] : disc_rec(a->b, depth, opts))
        out.emplace_back("v", mk_split(mk_var("v"), "u1", x, d));
      break;
    }
    case TypeTag::Thunk:
      if (depth > 0)
        for (auto& s : obs_rec(a->a, depth - 1, opts))
          out.emplace_back("v", plug_stack(s, mk_force(mk_var("v"))));
      break;
    case TypeTag::Mu:
      if (depth > 0)
        for (auto& [x, d] : disc_rec(unroll_type(a), depth - 1, opts))
          out.emplace_back("v", mk_pmroll(mk_var("v"), x, d));
      break;
    default:
      break;
  }
  if (out.empty()) out.emplace_back("v", mk_ret(mk_true()));
  if (out.size() > kDiscCap) out.resize(kDiscCap);
  return out;
}

std::vector<TermPtr> obs_rec(const TypePtr& b, int depth, const EnumOptions& opts) {
  std::vector<TermPtr> out;
  if (type_equal(b, ty_ret(ty_bool()))) out.push_back(mk_hole());
  switch (b->tag) {
    case TypeTag::Ret:
      for (auto& [x, d] : disc_rec(b->a, depth, opts))
        out.push_back(mk_bind(x, mk_hole(), d));
      break;
    case TypeTag::With: {
      if (depth > 0) {
        for (auto& s : obs_rec(b->a, depth - 1, opts))
          out.push_back(plug_stack(s, mk_fst(mk_hole())));
        for (auto& s : obs_rec(b->b, depth - 1, opts))
          out.push_back(plug_stack(s, mk_snd(mk_hole())));
      }
      break;
    }
    case TypeTag::Arrow: {
      if (depth > 0) {
        EnumOptions argopts = opts;
        argopts.depth = depth - 1;
        auto args = enum_rec(b->a, depth - 1, argopts);
        auto conts = obs_rec(b->b, depth - 1, opts);
        for (auto& v : args) {
          for (auto& s : conts) {
            out.push_back(plug_stack(s, mk_app(mk_hole(), v)));
            if (out.size() >= kObsCap) break;
          }
          if (out.size() >= kObsCap) break;
        }
      }
      break;
    }
    case TypeTag::Top:
      break;
    case TypeTag::Nu:
      if (depth > 0)
        for (auto& s : obs_rec(unroll_type(b), depth - 1, opts))
          out.push_back(plug_stack(s, mk_unrollnu(mk_hole())));
      break;
    default:
      fail({}, "E_OBS", "cannot observe at " + print_type(b));
  }
  if (out.size() > kObsCap) out.resize(kObsCap);
  return out;
}

}  // namespace

std::vector<TermPtr> observers_for(const TypePtr& b, const EnumOptions& opts) {
  return obs_rec(b, opts.depth, opts);
}

std::vector<std::pair<std::string, TermPtr>> discriminators(const TypePtr& a,
                                                            const EnumOptions& opts) {
  return disc_rec(a, opts.depth, opts);
}

// ---------------------------------------------------------------------------
// observational checks
// ---------------------------------------------------------------------------

namespace {

Result run_program(const TermPtr& p, uint64_t fuel) {
  return eval(simp_comp(p), fuel).result;
}

struct CheckRunner {
  const ObsCheck& chk;
  const HarnessOptions& opts;
  bool leq;

  std::optional<Counterexample> run() const {
    TypePtr obs_type = chk.type;
    TermPtr lhs = chk.lhs, rhs = chk.rhs;
    if (chk.value_sort) {
      obs_type = ty_ret(chk.type);
      lhs = mk_ret(lhs);
      rhs = mk_ret(rhs);
    }
    auto stacks = observers_for(obs_type, opts.enumeration);

    // closing substitutions: odometer over per-variable enumerations
    std::vector<std::vector<TermPtr>> per_var;
    for (auto& [x, a] : chk.env) per_var.push_back(enumerate_values(a, opts.enumeration));
    for (auto& vals : per_var)
      if (vals.empty()) return std::nullopt;  // no closed instances: vacuous

    std::vector<size_t> idx(per_var.size(), 0);
    size_t closings_done = 0;
    for (;;) {
      std::vector<std::pair<std::string, TermPtr>> closing;
      TermPtr l = lhs, r = rhs;
      for (size_t i = 0; i < per_var.size(); i++) {
        closing.emplace_back(chk.env[i].first, per_var[i][idx[i]]);
        l = subst_value(l, chk.env[i].first, per_var[i][idx[i]]);
        r = subst_value(r, chk.env[i].first, per_var[i][idx[i]]);
      }
      for (auto& s : stacks) {
        Result r1 = run_program(plug_stack(s, l), opts.fuel);
        Result r2 = run_program(plug_stack(s, r), opts.fuel);
        bool ok = leq ? result_leq(r1, r2) : r1 == r2;
        if (!ok && (r1.kind == ResultKind::Timeout || r2.kind == ResultKind::Timeout)) {
          // rule out fuel-boundary artifacts before reporting
          r1 = run_program(plug_stack(s, l), opts.fuel * 10);
          r2 = run_program(plug_stack(s, r), opts.fuel * 10);
          ok = leq ? result_leq(r1, r2) : r1 == r2;
        }
        if (!ok) return Counterexample{Observer{s, closing}, r1, r2};
      }
      if (per_var.empty()) break;
      if (++closings_done >= opts.closing_cap) break;
      size_t i = 0;
      while (i < idx.size()) {
        if (++idx[i] < per_var[i].size()) break;
        idx[i] = 0;
        i++;
      }
      if (i == idx.size()) break;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Counterexample> check_obs_eq(const ObsCheck& chk, const HarnessOptions& opts) {
  return CheckRunner{chk, opts, false}.run();
}

std::optional<Counterexample> check_obs_leq(const ObsCheck& chk, const HarnessOptions& opts) {
  return CheckRunner{chk, opts, true}.run();
}

// ---------------------------------------------------------------------------
// ep pairs
// ---------------------------------------------------------------------------

std::optional<Counterexample> check_ep_pair(const DynDerivPtr& d, const Interp& interp,
                                            const HarnessOptions& opts) {
  if (is_value_deriv(d)) {
    TypePtr a = interp_type(interp, d->lhs);
    TypePtr a2 = interp_type(interp, d->rhs);
    UpcastContract up = elab_upcast(d, interp);
    DynDerivPtr df = derive_c(ty_ret(d->lhs), ty_ret(d->rhs));
    TermPtr dn = elab_dncast(df, interp);

    // retraction: dn[ret(up V)] == ret V
    for (auto& v : enumerate_values(a, opts.enumeration)) {
      ObsCheck chk;
      chk.type = ty_ret(a);
      chk.lhs = plug_stack(dn, mk_ret(subst_value(up.value, up.var, v)));
      chk.rhs = mk_ret(v);
      if (auto c = check_obs_eq(chk, opts)) return c;
    }
    // projection: bind x <- dn[ret V']; ret(up x) <= ret V'
    for (auto& v2 : enumerate_values(a2, opts.enumeration)) {
      ObsCheck chk;
      chk.type = ty_ret(a2);
      chk.lhs = mk_bind(up.var, plug_stack(dn, mk_ret(v2)), mk_ret(up.value));
      chk.rhs = mk_ret(v2);
      if (auto c = check_obs_leq(chk, opts)) return c;
    }
    return std::nullopt;
  }

  TypePtr b = interp_type(interp, d->lhs);
  TypePtr b2 = interp_type(interp, d->rhs);
  DynDerivPtr du = derive_v(ty_thunk(d->lhs), ty_thunk(d->rhs));
  UpcastContract up = elab_upcast(du, interp);
  TermPtr dn = elab_dncast(d, interp);

  // retraction: dn[force(up z)] == force z
  for (auto& w : enumerate_values(ty_thunk(b), opts.enumeration)) {
    ObsCheck chk;
    chk.type = b;
    chk.lhs = plug_stack(dn, mk_force(subst_value(up.value, up.var, w)));
    chk.rhs = mk_force(w);
    if (auto c = check_obs_eq(chk, opts)) return c;
  }
  // projection: up(thunk(dn[force w])) <= w at value type U[[B']]
  for (auto& w2 : enumerate_values(ty_thunk(b2), opts.enumeration)) {
    ObsCheck chk;
    chk.type = ty_thunk(b2);
    chk.value_sort = true;
    chk.lhs = subst_value(up.value, up.var,
                          mk_thunk(plug_stack(dn, mk_force(w2))));
    chk.rhs = w2;
    if (auto c = check_obs_leq(chk, opts)) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// graduality
// ---------------------------------------------------------------------------

std::optional<Counterexample> check_graduality(const GradPair& pair, const Interp& interp,
                                               const HarnessOptions& opts) {
  if (pair.env1.size() != pair.env2.size())
    fail({}, "E_GRAD", "graduality pair environments differ in length");

  // typecheck both sides at GTT stage
  TypeEnv e1, e2;
  for (auto& [x, a] : pair.env1) e1.vars.emplace_back(x, a);
  for (auto& [x, a] : pair.env2) e2.vars.emplace_back(x, a);
  TypePtr t1 = infer_comp(e1, pair.m1, Stage::GTT);
  TypePtr t2 = infer_comp(e2, pair.m2, Stage::GTT);
  if (!type_equal(t1, pair.b1) || !type_equal(t2, pair.b2))
    fail({}, "E_GRAD", "graduality pair types do not match declarations");
  if (!derive_c(pair.b1, pair.b2))
    fail({}, "E_GRAD", "result types not related by dynamism");

  // assemble: dn(B1 <= B2)( m2[ up(A1 <= A2) x / x ] )
  TermPtr rhs = pair.m2;
  for (size_t i = 0; i < pair.env1.size(); i++) {
    auto& [x1, a1] = pair.env1[i];
    auto& [x2, a2] = pair.env2[i];
    if (x1 != x2) fail({}, "E_GRAD", "graduality pair variable names differ");
    if (!derive_v(a1, a2))
      fail({}, "E_GRAD", "context types not related by dynamism at " + x1);
    rhs = subst_value(rhs, x2, mk_up(a1, a2, mk_var(x1)));
  }
  rhs = mk_dn(pair.b1, pair.b2, rhs);

  ObsCheck chk;
  for (auto& [x, a] : pair.env1) chk.env.emplace_back(x, interp_type(interp, a));
  chk.type = interp_type(interp, pair.b1);
  chk.lhs = elab_term(pair.m1, interp);
  chk.rhs = elab_term(rhs, interp);
  return check_obs_leq(chk, opts);
}

}  // namespace gtt
