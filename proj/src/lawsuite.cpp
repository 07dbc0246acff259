#include <algorithm>
#include <atomic>
#include <cassert>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gtt/decomplexify.hpp"
#include "gtt/elaborate.hpp"
#include "gtt/harness.hpp"
#include "gtt/typecheck.hpp"

namespace gtt {

namespace {

struct LawInstance {
  ObsCheck chk;
  bool leq = false;
};

struct Cell {
  std::string law;
  std::string type;
  std::vector<LawInstance> instances;
};

const size_t kInstCap = 12;

void push_capped(std::vector<LawInstance>& v, LawInstance inst) {
  if (v.size() < kInstCap * 4) v.push_back(std::move(inst));
}

// D with its variable renamed to x
TermPtr disc_at(const std::pair<std::string, TermPtr>& d, const std::string& x) {
  return subst_value(d.second, d.first, mk_var(x));
}
TermPtr disc_app(const std::pair<std::string, TermPtr>& d, const TermPtr& v) {
  return subst_value(d.second, d.first, v);
}

struct SuiteBuilder {
  const Interp& interp;
  const SuiteOptions& opts;
  TypeUniverse universe;
  std::vector<Cell> cells;

  SuiteBuilder(const Interp& i, const SuiteOptions& o)
      : interp(i), opts(o), universe(build_universe(o.universe_depth)) {}

  EnumOptions eo() const { return opts.harness.enumeration; }
  TypePtr tr(const TypePtr& t) const { return interp_type(interp, t); }

  void cell(const std::string& law, const TypePtr& t, std::vector<LawInstance> insts) {
    if (!opts.law_filter.empty() && law != opts.law_filter) return;
    cells.push_back({law, print_type(t), std::move(insts)});
  }

  // ---- beta/eta rows -----------------------------------------------------

  void sum_laws(const TypePtr& gtt_ty) {
    TypePtr a = tr(gtt_ty);
    auto dl = discriminators(a->a, eo());
    auto dr = discriminators(a->b, eo());
    std::vector<LawInstance> beta;
    for (auto& v : enumerate_values(a->a, eo())) {
      ObsCheck c;
      c.type = ty_ret(ty_bool());
      c.lhs = mk_case(mk_inl(v, a), dl[0].first, dl[0].second, dr[0].first, dr[0].second);
      c.rhs = disc_app(dl[0], v);
      push_capped(beta, {c, false});
      if (beta.size() >= kInstCap) break;
    }
    for (auto& v : enumerate_values(a->b, eo())) {
      ObsCheck c;
      c.type = ty_ret(ty_bool());
      c.lhs = mk_case(mk_inr(v, a), dl[0].first, dl[0].second, dr[0].first, dr[0].second);
      c.rhs = disc_app(dr[0], v);
      push_capped(beta, {c, false});
      if (beta.size() >= 2 * kInstCap) break;
    }
    cell("sum-beta", gtt_ty, std::move(beta));

    std::vector<LawInstance> eta;
    for (auto& d : discriminators(a, eo())) {
      ObsCheck c;
      c.env.emplace_back("ev", a);
      c.type = ty_ret(ty_bool());
      c.lhs = disc_at(d, "ev");
      c.rhs = mk_case(mk_var("ev"), "e1", disc_app(d, mk_inl(mk_var("e1"), a)), "e2",
                      disc_app(d, mk_inr(mk_var("e2"), a)));
      push_capped(eta, {c, false});
    }
    cell("sum-eta", gtt_ty, std::move(eta));
  }

  void zero_laws(const TypePtr& gtt_ty) {
    TypePtr a = tr(gtt_ty);
    std::vector<LawInstance> eta;
    for (auto& d : discriminators(a, eo())) {
      ObsCheck c;
      c.env.emplace_back("ev", a);
      c.type = ty_ret(ty_bool());
      c.lhs = disc_at(d, "ev");
      c.rhs = mk_abort(mk_var("ev"), ty_ret(ty_bool()));
      push_capped(eta, {c, false});
    }
    cell("zero-eta", gtt_ty, std::move(eta));
  }

  void prod_laws(const TypePtr& gtt_ty) {
    TypePtr a = tr(gtt_ty);
    auto ds = discriminators(a, eo());
    std::vector<LawInstance> beta;
    auto l1 = enumerate_values(a->a, eo());
    auto l2 = enumerate_values(a->b, eo());
    for (auto& v1 : l1) {
      for (auto& v2 : l2) {
        ObsCheck c;
        c.type = ty_ret(ty_bool());
        c.lhs = mk_split(mk_pair(v1, v2), "p1", "p2",
                         disc_app(ds[0], mk_pair(mk_var("p1"), mk_var("p2"))));
        c.rhs = disc_app(ds[0], mk_pair(v1, v2));
        push_capped(beta, {c, false});
        if (beta.size() >= kInstCap) break;
      }
      if (beta.size() >= kInstCap) break;
    }
    cell("prod-beta", gtt_ty, std::move(beta));

    std::vector<LawInstance> eta;
    for (auto& d : ds) {
      ObsCheck c;
      c.env.emplace_back("ev", a);
      c.type = ty_ret(ty_bool());
      c.lhs = disc_at(d, "ev");
      c.rhs = mk_split(mk_var("ev"), "e1", "e2",
                       disc_app(d, mk_pair(mk_var("e1"), mk_var("e2"))));
      push_capped(eta, {c, false});
    }
    cell("prod-eta", gtt_ty, std::move(eta));
  }

  void unit_laws() {
    TypePtr a = ty_unit();
    std::vector<LawInstance> beta;
    for (TermPtr e : {mk_ret(mk_true()), mk_ret(mk_false()),
                      TermPtr(mk_err(ty_ret(ty_bool())))}) {
      ObsCheck c;
      c.type = ty_ret(ty_bool());
      c.lhs = mk_usplit(mk_unit(), e);
      c.rhs = e;
      push_capped(beta, {c, false});
    }
    cell("unit-beta", a, std::move(beta));

    std::vector<LawInstance> eta;
    {
      ObsCheck c;
      c.env.emplace_back("ev", a);
      c.type = ty_ret(ty_bool());
      c.lhs = mk_ret(mk_true());
      c.rhs = mk_usplit(mk_var("ev"), mk_ret(mk_true()));
      push_capped(eta, {c, false});
    }
    cell("unit-eta", a, std::move(eta));
  }

  void thunk_laws(const TypePtr& gtt_ty) {
    TypePtr ub = tr(gtt_ty);
    TypePtr b = ub->a;
    std::vector<LawInstance> beta;
    for (auto& m : comp_schemas(b, eo())) {
      for (auto& s : observers_for(b, eo())) {
        ObsCheck c;
        c.type = ty_ret(ty_bool());
        c.lhs = plug_stack(s, mk_force(mk_thunk(m)));
        c.rhs = plug_stack(s, m);
        push_capped(beta, {c, false});
        if (beta.size() >= kInstCap) break;
      }
      if (beta.size() >= kInstCap) break;
    }
    cell("thunk-beta", gtt_ty, std::move(beta));

    std::vector<LawInstance> eta;
    {
      ObsCheck c;
      c.env.emplace_back("ev", ub);
      c.type = ub;
      c.value_sort = true;
      c.lhs = mk_var("ev");
      c.rhs = mk_thunk(mk_force(mk_var("ev")));
      push_capped(eta, {c, false});
    }
    cell("thunk-eta", gtt_ty, std::move(eta));
  }

  void ret_laws(const TypePtr& gtt_ty) {
    TypePtr fa = tr(gtt_ty);
    TypePtr a = fa->a;
    auto ds = discriminators(a, eo());
    std::vector<LawInstance> beta;
    for (auto& v : enumerate_values(a, eo())) {
      ObsCheck c;
      c.type = ty_ret(ty_bool());
      c.lhs = mk_bind(ds[0].first, mk_ret(v), ds[0].second);
      c.rhs = disc_app(ds[0], v);
      push_capped(beta, {c, false});
      if (beta.size() >= kInstCap) break;
    }
    cell("ret-beta", gtt_ty, std::move(beta));

    // eta: S == bind x <- hole; S[ret x], instantiated at schemas
    std::vector<LawInstance> eta;
    for (auto& s : observers_for(fa, eo())) {
      for (auto& n : comp_schemas(fa, eo())) {
        ObsCheck c;
        c.type = ty_ret(ty_bool());
        c.lhs = plug_stack(s, n);
        c.rhs = mk_bind("ex", n, plug_stack(s, mk_ret(mk_var("ex"))));
        push_capped(eta, {c, false});
        if (eta.size() >= kInstCap) break;
      }
      if (eta.size() >= kInstCap) break;
    }
    cell("ret-eta", gtt_ty, std::move(eta));
  }

  void fun_laws(const TypePtr& gtt_ty) {
    TypePtr ab = tr(gtt_ty);
    TypePtr a = ab->a;
    auto ds = discriminators(a, eo());
    std::vector<LawInstance> beta;
    // beta: (lam x. D) V == D[V/x] with D a discriminator body
    for (auto& v : enumerate_values(a, eo())) {
      ObsCheck c;
      c.type = ty_ret(ty_bool());
      c.lhs = mk_app(mk_lam(ds[0].first, a, ds[0].second), v);
      c.rhs = disc_app(ds[0], v);
      push_capped(beta, {c, false});
      if (beta.size() >= kInstCap) break;
    }
    cell("fun-beta", gtt_ty, std::move(beta));

    std::vector<LawInstance> eta;
    for (auto& n : comp_schemas(ab, eo())) {
      ObsCheck c;
      c.type = ab;
      c.lhs = n;
      c.rhs = mk_lam("ex", a, mk_app(n, mk_var("ex")));
      push_capped(eta, {c, false});
      if (eta.size() >= kInstCap) break;
    }
    cell("fun-eta", gtt_ty, std::move(eta));
  }

  void with_laws(const TypePtr& gtt_ty) {
    TypePtr w = tr(gtt_ty);
    std::vector<LawInstance> beta;
    auto m1s = comp_schemas(w->a, eo());
    auto m2s = comp_schemas(w->b, eo());
    for (auto& m1 : m1s) {
      for (auto& m2 : m2s) {
        {
          ObsCheck c;
          c.type = w->a;
          c.lhs = mk_fst(mk_wpair(m1, m2));
          c.rhs = m1;
          push_capped(beta, {c, false});
        }
        {
          ObsCheck c;
          c.type = w->b;
          c.lhs = mk_snd(mk_wpair(m1, m2));
          c.rhs = m2;
          push_capped(beta, {c, false});
        }
        if (beta.size() >= kInstCap) break;
      }
      if (beta.size() >= kInstCap) break;
    }
    cell("with-beta", gtt_ty, std::move(beta));

    std::vector<LawInstance> eta;
    for (auto& n : comp_schemas(w, eo())) {
      ObsCheck c;
      c.type = w;
      c.lhs = n;
      c.rhs = mk_wpair(mk_fst(n), mk_snd(n));
      push_capped(eta, {c, false});
      if (eta.size() >= kInstCap) break;
    }
    cell("with-eta", gtt_ty, std::move(eta));
  }

  void top_laws() {
    TypePtr t = ty_top();
    std::vector<LawInstance> eta;
    for (auto& n : comp_schemas(t, eo())) {
      ObsCheck c;
      c.type = t;
      c.lhs = n;
      c.rhs = mk_emptypair();
      push_capped(eta, {c, false});
    }
    cell("top-eta", t, std::move(eta));
  }

  // ---- error axioms --------------------------------------------------------

  void error_laws(const TypePtr& gtt_ty) {
    TypePtr b = tr(gtt_ty);
    std::vector<LawInstance> bot;
    for (auto& m : comp_schemas(b, eo())) {
      ObsCheck c;
      c.type = b;
      c.lhs = mk_err(b);
      c.rhs = m;
      push_capped(bot, {c, true});
      if (bot.size() >= kInstCap) break;
    }
    cell("err-bot", gtt_ty, std::move(bot));

    std::vector<LawInstance> strict;
    for (auto& s : observers_for(b, eo())) {
      ObsCheck c;
      c.type = ty_ret(ty_bool());
      c.lhs = plug_stack(s, mk_err(b));
      c.rhs = mk_err(ty_ret(ty_bool()));
      push_capped(strict, {c, false});  // both directions: exact equality
      if (strict.size() >= kInstCap) break;
    }
    cell("stk-strict", gtt_ty, std::move(strict));
  }

  // ---- identity expansion / decomposition ----------------------------------

  void identity_laws(const TypePtr& gtt_ty, bool value_side) {
    if (value_side) {
      DynDerivPtr d = derive_refl_v(gtt_ty);
      assert(d);
      UpcastContract up = elab_upcast(d, interp);
      TypePtr a = tr(gtt_ty);
      std::vector<LawInstance> insts;
      {
        ObsCheck c;
        c.env.emplace_back(up.var, a);
        c.type = a;
        c.value_sort = true;
        c.lhs = up.value;
        c.rhs = mk_var(up.var);
        push_capped(insts, {c, false});
      }
      DynDerivPtr df = derive_c(ty_ret(gtt_ty), ty_ret(gtt_ty));
      TermPtr dn = elab_dncast(df, interp);
      for (auto& n : comp_schemas(ty_ret(a), eo())) {
        ObsCheck c;
        c.type = ty_ret(a);
        c.lhs = plug_stack(dn, n);
        c.rhs = n;
        push_capped(insts, {c, false});
        if (insts.size() >= kInstCap) break;
      }
      cell("identity-value", gtt_ty, std::move(insts));
    } else {
      DynDerivPtr d = derive_refl_c(gtt_ty);
      assert(d);
      TermPtr dn = elab_dncast(d, interp);
      TypePtr b = tr(gtt_ty);
      std::vector<LawInstance> insts;
      for (auto& n : comp_schemas(b, eo())) {
        ObsCheck c;
        c.type = b;
        c.lhs = plug_stack(dn, n);
        c.rhs = n;
        push_capped(insts, {c, false});
        if (insts.size() >= kInstCap) break;
      }
      DynDerivPtr du = derive_v(ty_thunk(gtt_ty), ty_thunk(gtt_ty));
      UpcastContract up = elab_upcast(du, interp);
      {
        ObsCheck c;
        c.env.emplace_back(up.var, ty_thunk(b));
        c.type = ty_thunk(b);
        c.value_sort = true;
        c.lhs = up.value;
        c.rhs = mk_var(up.var);
        push_capped(insts, {c, false});
      }
      cell("identity-comp", gtt_ty, std::move(insts));
    }
  }

  void decomposition_laws(const TypePtr& gtt_ty, bool value_side) {
    if (value_side) {
      if (gtt_ty->tag == TypeTag::Dyn || gtt_ty->tag == TypeTag::Zero) return;
      TypePtr g = floor_v(gtt_ty);
      DynDerivPtr d_direct = derive_v(gtt_ty, ty_dyn());
      DynDerivPtr d_low = derive_v(gtt_ty, g);
      DynDerivPtr d_high = derive_v(g, ty_dyn());
      if (!d_direct || !d_low || !d_high) return;
      UpcastContract direct = elab_upcast(d_direct, interp);
      UpcastContract low = elab_upcast(d_low, interp);
      UpcastContract high = elab_upcast(d_high, interp);
      std::vector<LawInstance> insts;
      {
        ObsCheck c;
        c.env.emplace_back(direct.var, tr(gtt_ty));
        c.type = interp.val_dyn;
        c.value_sort = true;
        c.lhs = direct.value;
        c.rhs = subst_value(high.value, high.var,
                            subst_value(low.value, low.var, mk_var(direct.var)));
        push_capped(insts, {c, false});
      }
      // downcast side, composed the other way around
      TermPtr dn_direct = elab_dncast(derive_c(ty_ret(gtt_ty), ty_ret(ty_dyn())), interp);
      TermPtr dn_low = elab_dncast(derive_c(ty_ret(gtt_ty), ty_ret(g)), interp);
      TermPtr dn_high = elab_dncast(derive_c(ty_ret(g), ty_ret(ty_dyn())), interp);
      for (auto& n : comp_schemas(ty_ret(interp.val_dyn), eo())) {
        ObsCheck c;
        c.type = ty_ret(tr(gtt_ty));
        c.lhs = plug_stack(dn_direct, n);
        c.rhs = plug_stack(dn_low, plug_stack(dn_high, n));
        push_capped(insts, {c, false});
        if (insts.size() >= kInstCap) break;
      }
      cell("decompose-value", gtt_ty, std::move(insts));
    } else {
      if (gtt_ty->tag == TypeTag::CoDyn || gtt_ty->tag == TypeTag::Top) return;
      TypePtr g = floor_c(gtt_ty);
      DynDerivPtr d_direct = derive_c(gtt_ty, ty_codyn());
      DynDerivPtr d_low = derive_c(gtt_ty, g);
      DynDerivPtr d_high = derive_c(g, ty_codyn());
      if (!d_direct || !d_low || !d_high) return;
      std::vector<LawInstance> insts;
      TermPtr dn_direct = elab_dncast(d_direct, interp);
      TermPtr dn_low = elab_dncast(d_low, interp);
      TermPtr dn_high = elab_dncast(d_high, interp);
      for (auto& n : comp_schemas(interp.comp_dyn, eo())) {
        ObsCheck c;
        c.type = tr(gtt_ty);
        c.lhs = plug_stack(dn_direct, n);
        c.rhs = plug_stack(dn_low, plug_stack(dn_high, n));
        push_capped(insts, {c, false});
        if (insts.size() >= kInstCap) break;
      }
      UpcastContract up_direct = elab_upcast(derive_v(ty_thunk(gtt_ty), ty_thunk(ty_codyn())), interp);
      UpcastContract up_low = elab_upcast(derive_v(ty_thunk(gtt_ty), ty_thunk(g)), interp);
      UpcastContract up_high = elab_upcast(derive_v(ty_thunk(g), ty_thunk(ty_codyn())), interp);
      {
        ObsCheck c;
        c.env.emplace_back(up_direct.var, ty_thunk(tr(gtt_ty)));
        c.type = ty_thunk(interp.comp_dyn);
        c.value_sort = true;
        c.lhs = up_direct.value;
        c.rhs = subst_value(up_high.value, up_high.var,
                            subst_value(up_low.value, up_low.var, mk_var(up_direct.var)));
        push_capped(insts, {c, false});
      }
      cell("decompose-comp", gtt_ty, std::move(insts));
    }
  }

  // ---- retract axiom --------------------------------------------------------

  void retract_laws(const TypePtr& gtt_ty, bool value_side) {
    if (value_side) {
      DynDerivPtr d = derive_v(gtt_ty, ty_dyn());
      if (!d) return;
      UpcastContract up = elab_upcast(d, interp);
      TermPtr dn = elab_dncast(derive_c(ty_ret(gtt_ty), ty_ret(ty_dyn())), interp);
      std::vector<LawInstance> insts;
      ObsCheck c;
      c.env.emplace_back(up.var, tr(gtt_ty));
      c.type = ty_ret(tr(gtt_ty));
      c.lhs = plug_stack(dn, mk_ret(up.value));
      c.rhs = mk_ret(mk_var(up.var));
      push_capped(insts, {c, false});
      cell("retract-value", gtt_ty, std::move(insts));
    } else {
      DynDerivPtr d = derive_c(gtt_ty, ty_codyn());
      if (!d) return;
      UpcastContract up = elab_upcast(derive_v(ty_thunk(gtt_ty), ty_thunk(ty_codyn())), interp);
      TermPtr dn = elab_dncast(d, interp);
      std::vector<LawInstance> insts;
      ObsCheck c;
      c.env.emplace_back(up.var, ty_thunk(tr(gtt_ty)));
      c.type = tr(gtt_ty);
      c.lhs = plug_stack(dn, mk_force(up.value));
      c.rhs = mk_force(mk_var(up.var));
      push_capped(insts, {c, false});
      cell("retract-comp", gtt_ty, std::move(insts));
    }
  }

  void build() {
    unit_laws();
    top_laws();
    for (auto& t : universe.values) {
      switch (t->tag) {
        case TypeTag::Sum: sum_laws(t); break;
        case TypeTag::Prod: prod_laws(t); break;
        case TypeTag::Thunk: thunk_laws(t); break;
        case TypeTag::Zero: zero_laws(t); break;
        default: break;
      }
      identity_laws(t, true);
      decomposition_laws(t, true);
      retract_laws(t, true);
    }
    for (auto& t : universe.comps) {
      switch (t->tag) {
        case TypeTag::Ret: ret_laws(t); break;
        case TypeTag::Arrow: fun_laws(t); break;
        case TypeTag::With: with_laws(t); break;
        default: break;
      }
      identity_laws(t, false);
      decomposition_laws(t, false);
      retract_laws(t, false);
      error_laws(t);
    }
  }
};

}  // namespace

std::vector<LawReport> run_law_suite(const Interp& interp, const SuiteOptions& opts) {
  SuiteBuilder builder(interp, opts);
  builder.build();

  std::vector<LawReport> reports(builder.cells.size());
  std::atomic<size_t> next{0};
  unsigned workers = opts.workers ? opts.workers : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, 16);

  auto work = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= builder.cells.size()) return;
      const Cell& cell = builder.cells[i];
      LawReport rep;
      rep.law = cell.law;
      rep.type = cell.type;
      for (auto& inst : cell.instances) {
        rep.instances++;
        auto cx = inst.leq ? check_obs_leq(inst.chk, opts.harness)
                           : check_obs_eq(inst.chk, opts.harness);
        if (cx) {
          rep.failures.push_back({cx->observer.describe(),
                                  result_str(cx->lhs_result),
                                  result_str(cx->rhs_result)});
        }
      }
      reports[i] = std::move(rep);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; i++) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::stable_sort(reports.begin(), reports.end(),
                   [](const LawReport& a, const LawReport& b) {
                     return a.law != b.law ? a.law < b.law : a.type < b.type;
                   });
  return reports;
}

std::string law_suite_json(const std::vector<LawReport>& reports, const Interp& interp,
                           const SuiteOptions& opts) {
  nlohmann::json out = nlohmann::json::array();
  for (auto& r : reports) {
    nlohmann::json fails = nlohmann::json::array();
    for (auto& f : r.failures)
      fails.push_back({{"observer", f.observer},
                       {"lhs_result", f.lhs_result},
                       {"rhs_result", f.rhs_result}});
    out.push_back({{"law", r.law},
                   {"type", r.type},
                   {"instances", r.instances},
                   {"failures", fails}});
  }
  nlohmann::json doc = {{"interp", interp.name},
                        {"depth", opts.harness.enumeration.depth},
                        {"universe_depth", opts.universe_depth},
                        {"reports", out}};
  return doc.dump(2);
}

// ---------------------------------------------------------------------------
// random well-typed program generation
// ---------------------------------------------------------------------------

namespace {

struct Generator {
  std::mt19937_64& rng;
  const GenOptions& opts;
  NameGen names;

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
  bool coin(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(rng) < p; }

  // small random value type without Zero (so values always exist)
  TypePtr rand_vtype(unsigned budget) {
    if (budget == 0) return coin(0.5) ? ty_unit() : ty_bool();
    switch (pick(opts.with_casts ? 6 : 5)) {
      case 0: return ty_unit();
      case 1: return ty_bool();
      case 2: return ty_sum(rand_vtype(budget - 1), rand_vtype(budget - 1));
      case 3: return ty_prod(rand_vtype(budget - 1), rand_vtype(budget - 1));
      case 4: return ty_thunk(rand_ctype(budget - 1));
      default: return ty_dyn();
    }
  }

  TypePtr rand_ctype(unsigned budget) {
    if (budget == 0) return ty_ret(coin(0.5) ? ty_unit() : ty_bool());
    switch (pick(opts.with_casts ? 5 : 4)) {
      case 0: return ty_ret(rand_vtype(budget - 1));
      case 1: return ty_arrow(rand_vtype(budget - 1), rand_ctype(budget - 1));
      case 2: return ty_with(rand_ctype(budget - 1), rand_ctype(budget - 1));
      case 3: return ty_ret(rand_vtype(budget - 1));
      default: return ty_codyn();
    }
  }

  // more dynamic version of a type (always derivable dynamism)
  TypePtr dynamize_v(const TypePtr& a) {
    if (coin(0.4)) return ty_dyn();
    switch (a->tag) {
      case TypeTag::Sum: return ty_sum(dynamize_v(a->a), dynamize_v(a->b));
      case TypeTag::Prod: return ty_prod(dynamize_v(a->a), dynamize_v(a->b));
      case TypeTag::Thunk: return ty_thunk(dynamize_c(a->a));
      default: return a;
    }
  }
  TypePtr dynamize_c(const TypePtr& b) {
    if (coin(0.4)) return ty_codyn();
    switch (b->tag) {
      case TypeTag::Ret: return ty_ret(dynamize_v(b->a));
      case TypeTag::Arrow: return ty_arrow(dynamize_v(b->a), dynamize_c(b->b));
      case TypeTag::With: return ty_with(dynamize_c(b->a), dynamize_c(b->b));
      default: return b;
    }
  }

  using Env = std::vector<std::pair<std::string, TypePtr>>;

  TermPtr canonical_value(const Env& env, const TypePtr& a) {
    switch (a->tag) {
      case TypeTag::Unit: return mk_unit();
      case TypeTag::Sum: return mk_inl(canonical_value(env, a->a), a);
      case TypeTag::Prod:
        return mk_pair(canonical_value(env, a->a), canonical_value(env, a->b));
      case TypeTag::Thunk: return mk_thunk(mk_err(a->a));
      case TypeTag::Dyn: return mk_up(ty_unit(), ty_dyn(), mk_unit());
      default:
        fail({}, "E_GEN", "no canonical value at " + print_type(a));
    }
  }

  TermPtr value(const Env& env, const TypePtr& a, unsigned budget) {
    // use a variable of the right type sometimes
    std::vector<const std::pair<std::string, TypePtr>*> hits;
    for (auto& b : env)
      if (type_equal(b.second, a)) hits.push_back(&b);
    if (!hits.empty() && coin(0.5)) return mk_var(hits[pick(hits.size())]->first);
    if (budget == 0) return canonical_value(env, a);
    switch (a->tag) {
      case TypeTag::Unit:
        return mk_unit();
      case TypeTag::Sum:
        return coin(0.5) ? mk_inl(value(env, a->a, budget - 1), a)
                         : mk_inr(value(env, a->b, budget - 1), a);
      case TypeTag::Prod:
        return mk_pair(value(env, a->a, budget - 1), value(env, a->b, budget - 1));
      case TypeTag::Thunk:
        return mk_thunk(comp(env, a->a, budget - 1));
      case TypeTag::Dyn: {
        TypePtr src = rand_vtype(1);
        if (src->tag == TypeTag::Dyn) src = ty_unit();
        return mk_up(src, ty_dyn(), value(env, src, budget - 1));
      }
      default:
        return canonical_value(env, a);
    }
  }

  TermPtr comp(const Env& env, const TypePtr& b, unsigned budget) {
    if (budget == 0) return mk_err(b);
    switch (b->tag) {
      case TypeTag::CoDyn: {
        // reach dyncomp through an upcast-free route: force a thunk variable
        // or downcast... simplest: err or force of an embedded thunk
        if (coin(0.5)) return mk_err(b);
        TermPtr v = value(env, ty_thunk(ty_codyn()), budget - 1);
        return mk_force(v);
      }
      default:
        break;
    }
    enum Choice { Intro, ErrC, BindC, CaseC, AppC, ForceC, SplitC, DnC, UspC };
    std::vector<Choice> choices = {Intro, Intro, Intro, BindC, CaseC, AppC, ForceC, SplitC, UspC};
    if (coin(0.15)) choices.push_back(ErrC);
    if (opts.with_casts) choices.push_back(DnC);
    switch (choices[pick(choices.size())]) {
      case Intro:
        switch (b->tag) {
          case TypeTag::Ret: return mk_ret(value(env, b->a, budget - 1));
          case TypeTag::Arrow: {
            std::string x = names.fresh("g");
            Env env2 = env;
            env2.emplace_back(x, b->a);
            return mk_lam(x, b->a, comp(env2, b->b, budget - 1));
          }
          case TypeTag::With:
            return mk_wpair(comp(env, b->a, budget - 1), comp(env, b->b, budget - 1));
          case TypeTag::Top:
            return mk_emptypair();
          default:
            return mk_err(b);
        }
      case ErrC:
        return mk_err(b);
      case BindC: {
        TypePtr a = rand_vtype(1);
        std::string x = names.fresh("g");
        TermPtr m = comp(env, ty_ret(a), budget / 2);
        Env env2 = env;
        env2.emplace_back(x, a);
        return mk_bind(x, m, comp(env2, b, budget / 2));
      }
      case CaseC: {
        TypePtr s = ty_sum(rand_vtype(1), rand_vtype(1));
        TermPtr v = value(env, s, budget / 2);
        std::string x = names.fresh("g"), y = names.fresh("g");
        Env envl = env, envr = env;
        envl.emplace_back(x, s->a);
        envr.emplace_back(y, s->b);
        return mk_case(v, x, comp(envl, b, budget / 2), y, comp(envr, b, budget / 2));
      }
      case AppC: {
        TypePtr a = rand_vtype(1);
        TermPtr f = comp(env, ty_arrow(a, b), budget / 2);
        return mk_app(f, value(env, a, budget / 2));
      }
      case ForceC:
        return mk_force(value(env, ty_thunk(b), budget - 1));
      case SplitC: {
        TypePtr p = ty_prod(rand_vtype(1), rand_vtype(1));
        TermPtr v = value(env, p, budget / 2);
        std::string x = names.fresh("g"), y = names.fresh("g");
        Env env2 = env;
        env2.emplace_back(x, p->a);
        env2.emplace_back(y, p->b);
        return mk_split(v, x, y, comp(env2, b, budget / 2));
      }
      case UspC: {
        TermPtr v = value(env, ty_unit(), 0);
        return mk_usplit(v, comp(env, b, budget - 1));
      }
      case DnC: {
        TypePtr b2 = dynamize_c(b);
        if (type_equal(b2, b)) return mk_err(b);
        return mk_dn(b, b2, comp(env, b2, budget - 1));
      }
    }
    return mk_err(b);
  }
};

}  // namespace

TermPtr gen_program(std::mt19937_64& rng, const GenOptions& opts) {
  Generator g{rng, opts, NameGen{}};
  return g.comp({}, ty_ret(ty_bool()), opts.size);
}

}  // namespace gtt
