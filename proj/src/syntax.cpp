#include "gtt/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <map>
#include <sstream>

namespace gtt {

// ---------------------------------------------------------------------------
// errors
// ---------------------------------------------------------------------------

Error::Error(SrcLoc l, std::string c, std::string m)
    : std::runtime_error("ERR " + std::to_string(l.line) + ":" + std::to_string(l.col) +
                         " " + c + " " + m),
      loc(l),
      code(std::move(c)),
      message(std::move(m)) {}

std::string Error::formatted() const { return what(); }

void fail(SrcLoc loc, const std::string& code, const std::string& msg) {
  throw Error(loc, code, msg);
}

// ---------------------------------------------------------------------------
// type constructors
// ---------------------------------------------------------------------------

namespace {
TypePtr mk_ty(TypeTag tag, std::string name = {}, TypePtr a = nullptr, TypePtr b = nullptr) {
  auto t = std::make_shared<Type>();
  t->tag = tag;
  t->name = std::move(name);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}
}  // namespace

bool is_value_type(const TypePtr& t) {
  switch (t->tag) {
    case TypeTag::Dyn:
    case TypeTag::Thunk:
    case TypeTag::Zero:
    case TypeTag::Sum:
    case TypeTag::Unit:
    case TypeTag::Prod:
    case TypeTag::Mu:
    case TypeTag::VVar:
      return true;
    default:
      return false;
  }
}

bool is_comp_type(const TypePtr& t) { return !is_value_type(t); }

TypePtr ty_dyn() {
  static const TypePtr t = mk_ty(TypeTag::Dyn);
  return t;
}
TypePtr ty_codyn() {
  static const TypePtr t = mk_ty(TypeTag::CoDyn);
  return t;
}
TypePtr ty_unit() {
  static const TypePtr t = mk_ty(TypeTag::Unit);
  return t;
}
TypePtr ty_zero() {
  static const TypePtr t = mk_ty(TypeTag::Zero);
  return t;
}
TypePtr ty_top() {
  static const TypePtr t = mk_ty(TypeTag::Top);
  return t;
}
TypePtr ty_sum(TypePtr a, TypePtr b) {
  assert(is_value_type(a) && is_value_type(b));
  return mk_ty(TypeTag::Sum, {}, std::move(a), std::move(b));
}
TypePtr ty_prod(TypePtr a, TypePtr b) {
  assert(is_value_type(a) && is_value_type(b));
  return mk_ty(TypeTag::Prod, {}, std::move(a), std::move(b));
}
TypePtr ty_thunk(TypePtr b) {
  assert(is_comp_type(b));
  return mk_ty(TypeTag::Thunk, {}, std::move(b));
}
TypePtr ty_ret(TypePtr a) {
  assert(is_value_type(a));
  return mk_ty(TypeTag::Ret, {}, std::move(a));
}
TypePtr ty_with(TypePtr a, TypePtr b) {
  assert(is_comp_type(a) && is_comp_type(b));
  return mk_ty(TypeTag::With, {}, std::move(a), std::move(b));
}
TypePtr ty_arrow(TypePtr a, TypePtr b) {
  assert(is_value_type(a) && is_comp_type(b));
  return mk_ty(TypeTag::Arrow, {}, std::move(a), std::move(b));
}
TypePtr ty_mu(const std::string& x, TypePtr a) {
  assert(is_value_type(a));
  return mk_ty(TypeTag::Mu, x, std::move(a));
}
TypePtr ty_nu(const std::string& y, TypePtr b) {
  assert(is_comp_type(b));
  return mk_ty(TypeTag::Nu, y, std::move(b));
}
TypePtr ty_vvar(const std::string& x) { return mk_ty(TypeTag::VVar, x); }
TypePtr ty_cvar(const std::string& y) { return mk_ty(TypeTag::CVar, y); }

TypePtr ty_bool() {
  static const TypePtr t = ty_sum(ty_unit(), ty_unit());
  return t;
}

// ---------------------------------------------------------------------------
// type equality / substitution
// ---------------------------------------------------------------------------

namespace {
bool type_equal_rec(const TypePtr& s, const TypePtr& t,
                    std::vector<std::pair<std::string, std::string>>& binders) {
  if (s.get() == t.get()) {
    // pointer-equal subtrees can still differ under shifted binder maps,
    // but only if they contain free vars bound at different depths; we
    // only shortcut when the pending map is an identity for them
    bool identity = true;
    for (auto& [l, r] : binders)
      if (l != r) { identity = false; break; }
    if (identity) return true;
  }
  if (s->tag != t->tag) return false;
  switch (s->tag) {
    case TypeTag::Dyn:
    case TypeTag::CoDyn:
    case TypeTag::Zero:
    case TypeTag::Unit:
    case TypeTag::Top:
      return true;
    case TypeTag::VVar:
    case TypeTag::CVar: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        if (it->first == s->name || it->second == t->name)
          return it->first == s->name && it->second == t->name;
      }
      return s->name == t->name;
    }
    case TypeTag::Mu:
    case TypeTag::Nu: {
      binders.emplace_back(s->name, t->name);
      bool ok = type_equal_rec(s->a, t->a, binders);
      binders.pop_back();
      return ok;
    }
    case TypeTag::Thunk:
    case TypeTag::Ret:
      return type_equal_rec(s->a, t->a, binders);
    default:
      return type_equal_rec(s->a, t->a, binders) && type_equal_rec(s->b, t->b, binders);
  }
}
}  // namespace

bool type_equal(const TypePtr& s, const TypePtr& t) {
  std::vector<std::pair<std::string, std::string>> binders;
  return type_equal_rec(s, t, binders);
}

void free_type_vars(const TypePtr& t, std::set<std::string>& out) {
  switch (t->tag) {
    case TypeTag::VVar:
    case TypeTag::CVar:
      out.insert(t->name);
      return;
    case TypeTag::Mu:
    case TypeTag::Nu: {
      std::set<std::string> inner;
      free_type_vars(t->a, inner);
      inner.erase(t->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      if (t->a) free_type_vars(t->a, out);
      if (t->b) free_type_vars(t->b, out);
      return;
  }
}

bool type_closed(const TypePtr& t) {
  std::set<std::string> fv;
  free_type_vars(t, fv);
  return fv.empty();
}

TypePtr subst_type(const TypePtr& t, const std::string& x, const TypePtr& w) {
  switch (t->tag) {
    case TypeTag::VVar:
    case TypeTag::CVar:
      return t->name == x ? w : t;
    case TypeTag::Mu:
    case TypeTag::Nu: {
      if (t->name == x) return t;
      std::set<std::string> fw;
      free_type_vars(w, fw);
      if (fw.count(t->name)) {
        // rename the binder away from w's free vars
        std::string fresh = t->name;
        std::set<std::string> avoid = fw;
        free_type_vars(t->a, avoid);
        do {
          fresh += "'";
        } while (avoid.count(fresh));
        TypePtr var = t->tag == TypeTag::Mu ? ty_vvar(fresh) : ty_cvar(fresh);
        TypePtr body = subst_type(t->a, t->name, var);
        return mk_ty(t->tag, fresh, subst_type(body, x, w));
      }
      TypePtr a = subst_type(t->a, x, w);
      return a.get() == t->a.get() ? t : mk_ty(t->tag, t->name, a);
    }
    default: {
      TypePtr a = t->a ? subst_type(t->a, x, w) : nullptr;
      TypePtr b = t->b ? subst_type(t->b, x, w) : nullptr;
      if (a.get() == t->a.get() && b.get() == t->b.get()) return t;
      return mk_ty(t->tag, t->name, a, b);
    }
  }
}

TypePtr unroll_type(const TypePtr& t) {
  assert(t->tag == TypeTag::Mu || t->tag == TypeTag::Nu);
  return subst_type(t->a, t->name, t);
}

// ---------------------------------------------------------------------------
// term constructors
// ---------------------------------------------------------------------------

namespace {
std::shared_ptr<Term> mk(TermTag tag, SrcLoc loc) {
  auto t = std::make_shared<Term>();
  t->tag = tag;
  t->loc = loc;
  return t;
}
}  // namespace

TermPtr mk_var(const std::string& x, SrcLoc loc) {
  auto t = mk(TermTag::Var, loc);
  t->x = x;
  return t;
}
TermPtr mk_hole(SrcLoc loc) { return mk(TermTag::Hole, loc); }
TermPtr mk_err(TypePtr b, SrcLoc loc) {
  auto t = mk(TermTag::Err, loc);
  t->ty1 = std::move(b);
  return t;
}
TermPtr mk_abort(TermPtr v, TypePtr ann, SrcLoc loc) {
  auto t = mk(TermTag::Abort, loc);
  t->t1 = std::move(v);
  t->ty1 = std::move(ann);
  return t;
}
TermPtr mk_inl(TermPtr v, TypePtr ann, SrcLoc loc) {
  auto t = mk(TermTag::Inl, loc);
  t->t1 = std::move(v);
  t->ty1 = std::move(ann);
  return t;
}
TermPtr mk_inr(TermPtr v, TypePtr ann, SrcLoc loc) {
  auto t = mk(TermTag::Inr, loc);
  t->t1 = std::move(v);
  t->ty1 = std::move(ann);
  return t;
}
TermPtr mk_case(TermPtr scrut, const std::string& x1, TermPtr e1, const std::string& x2,
                TermPtr e2, SrcLoc loc) {
  auto t = mk(TermTag::Case, loc);
  t->t1 = std::move(scrut);
  t->x = x1;
  t->t2 = std::move(e1);
  t->y = x2;
  t->t3 = std::move(e2);
  return t;
}
TermPtr mk_unit(SrcLoc loc) { return mk(TermTag::UnitV, loc); }
TermPtr mk_usplit(TermPtr scrut, TermPtr body, SrcLoc loc) {
  auto t = mk(TermTag::UnitSplit, loc);
  t->t1 = std::move(scrut);
  t->t2 = std::move(body);
  return t;
}
TermPtr mk_pair(TermPtr v1, TermPtr v2, SrcLoc loc) {
  auto t = mk(TermTag::PairV, loc);
  t->t1 = std::move(v1);
  t->t2 = std::move(v2);
  return t;
}
TermPtr mk_split(TermPtr scrut, const std::string& x, const std::string& y, TermPtr body,
                 SrcLoc loc) {
  auto t = mk(TermTag::Split, loc);
  t->t1 = std::move(scrut);
  t->x = x;
  t->y = y;
  t->t2 = std::move(body);
  return t;
}
TermPtr mk_rollmu(TypePtr a, TermPtr v, SrcLoc loc) {
  auto t = mk(TermTag::RollMu, loc);
  t->ty1 = std::move(a);
  t->t1 = std::move(v);
  return t;
}
TermPtr mk_pmroll(TermPtr scrut, const std::string& x, TermPtr body, SrcLoc loc) {
  auto t = mk(TermTag::UnrollMu, loc);
  t->t1 = std::move(scrut);
  t->x = x;
  t->t2 = std::move(body);
  return t;
}
TermPtr mk_thunk(TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::Thunk, loc);
  t->t1 = std::move(m);
  return t;
}
TermPtr mk_force(TermPtr v, SrcLoc loc) {
  auto t = mk(TermTag::Force, loc);
  t->t1 = std::move(v);
  return t;
}
TermPtr mk_ret(TermPtr v, SrcLoc loc) {
  auto t = mk(TermTag::RetV, loc);
  t->t1 = std::move(v);
  return t;
}
TermPtr mk_bind(const std::string& x, TermPtr m, TermPtr n, SrcLoc loc) {
  auto t = mk(TermTag::Bind, loc);
  t->x = x;
  t->t1 = std::move(m);
  t->t2 = std::move(n);
  return t;
}
TermPtr mk_lam(const std::string& x, TypePtr a, TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::Lam, loc);
  t->x = x;
  t->ty1 = std::move(a);
  t->t1 = std::move(m);
  return t;
}
TermPtr mk_app(TermPtr m, TermPtr v, SrcLoc loc) {
  auto t = mk(TermTag::App, loc);
  t->t1 = std::move(m);
  t->t2 = std::move(v);
  return t;
}
TermPtr mk_emptypair(SrcLoc loc) { return mk(TermTag::EmptyPair, loc); }
TermPtr mk_wpair(TermPtr m1, TermPtr m2, SrcLoc loc) {
  auto t = mk(TermTag::WithPair, loc);
  t->t1 = std::move(m1);
  t->t2 = std::move(m2);
  return t;
}
TermPtr mk_fst(TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::Fst, loc);
  t->t1 = std::move(m);
  return t;
}
TermPtr mk_snd(TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::Snd, loc);
  t->t1 = std::move(m);
  return t;
}
TermPtr mk_rollnu(TypePtr b, TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::RollNu, loc);
  t->ty1 = std::move(b);
  t->t1 = std::move(m);
  return t;
}
TermPtr mk_unrollnu(TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::UnrollNu, loc);
  t->t1 = std::move(m);
  return t;
}
TermPtr mk_up(TypePtr a, TypePtr a2, TermPtr v, SrcLoc loc) {
  auto t = mk(TermTag::UpCast, loc);
  t->ty1 = std::move(a);
  t->ty2 = std::move(a2);
  t->t1 = std::move(v);
  return t;
}
TermPtr mk_dn(TypePtr b, TypePtr b2, TermPtr m, SrcLoc loc) {
  auto t = mk(TermTag::DnCast, loc);
  t->ty1 = std::move(b);
  t->ty2 = std::move(b2);
  t->t1 = std::move(m);
  return t;
}

TermPtr mk_true() {
  static const TermPtr t = mk_inl(mk_unit(), ty_bool());
  return t;
}
TermPtr mk_false() {
  static const TermPtr t = mk_inr(mk_unit(), ty_bool());
  return t;
}

// ---------------------------------------------------------------------------
// binder bookkeeping: which fields bind what
// ---------------------------------------------------------------------------

void free_vars(const TermPtr& e, std::set<std::string>& out) {
  if (!e) return;
  switch (e->tag) {
    case TermTag::Var:
      out.insert(e->x);
      return;
    case TermTag::Lam: {
      std::set<std::string> inner;
      free_vars(e->t1, inner);
      inner.erase(e->x);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case TermTag::Case: {
      free_vars(e->t1, out);
      std::set<std::string> l, r;
      free_vars(e->t2, l);
      l.erase(e->x);
      free_vars(e->t3, r);
      r.erase(e->y);
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      return;
    }
    case TermTag::Split: {
      free_vars(e->t1, out);
      std::set<std::string> b;
      free_vars(e->t2, b);
      b.erase(e->x);
      b.erase(e->y);
      out.insert(b.begin(), b.end());
      return;
    }
    case TermTag::UnrollMu:
    case TermTag::Bind: {
      free_vars(e->t1, out);
      std::set<std::string> b;
      free_vars(e->t2, b);
      b.erase(e->x);
      out.insert(b.begin(), b.end());
      return;
    }
    default:
      free_vars(e->t1, out);
      free_vars(e->t2, out);
      free_vars(e->t3, out);
      return;
  }
}

std::set<std::string> free_vars(const TermPtr& e) {
  std::set<std::string> out;
  free_vars(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// fresh names
// ---------------------------------------------------------------------------

namespace {
// split "foo%12" into ("foo", 12); no suffix -> k = -1
std::pair<std::string, int64_t> split_suffix(const std::string& name) {
  auto pos = name.rfind('%');
  if (pos == std::string::npos || pos + 1 >= name.size()) return {name, -1};
  for (size_t i = pos + 1; i < name.size(); i++)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return {name, -1};
  return {name.substr(0, pos), std::stoll(name.substr(pos + 1))};
}
}  // namespace

std::string NameGen::fresh(const std::string& base) {
  auto [stem, k] = split_suffix(base);
  (void)k;
  return stem + "%" + std::to_string(next_++);
}

void NameGen::absorb(const TermPtr& e) {
  if (!e) return;
  auto touch = [&](const std::string& n) {
    if (n.empty()) return;
    auto [stem, k] = split_suffix(n);
    (void)stem;
    if (k >= 0 && static_cast<uint64_t>(k) >= next_) next_ = static_cast<uint64_t>(k) + 1;
  };
  touch(e->x);
  touch(e->y);
  absorb(e->t1);
  absorb(e->t2);
  absorb(e->t3);
}

// ---------------------------------------------------------------------------
// alpha freshening and substitution
// ---------------------------------------------------------------------------

namespace {

using Renaming = std::vector<std::pair<std::string, std::string>>;

const std::string* lookup(const Renaming& ren, const std::string& n) {
  for (auto it = ren.rbegin(); it != ren.rend(); ++it)
    if (it->first == n) return &it->second;
  return nullptr;
}

TermPtr freshen_rec(const TermPtr& e, NameGen& gen, Renaming& ren) {
  if (!e) return nullptr;
  switch (e->tag) {
    case TermTag::Var: {
      if (const auto* r = lookup(ren, e->x)) return mk_var(*r, e->loc);
      return e;
    }
    case TermTag::Lam: {
      std::string fx = gen.fresh(e->x);
      ren.emplace_back(e->x, fx);
      TermPtr body = freshen_rec(e->t1, gen, ren);
      ren.pop_back();
      return mk_lam(fx, e->ty1, body, e->loc);
    }
    case TermTag::Case: {
      TermPtr s = freshen_rec(e->t1, gen, ren);
      std::string fx = gen.fresh(e->x);
      ren.emplace_back(e->x, fx);
      TermPtr l = freshen_rec(e->t2, gen, ren);
      ren.pop_back();
      std::string fy = gen.fresh(e->y);
      ren.emplace_back(e->y, fy);
      TermPtr r = freshen_rec(e->t3, gen, ren);
      ren.pop_back();
      return mk_case(s, fx, l, fy, r, e->loc);
    }
    case TermTag::Split: {
      TermPtr s = freshen_rec(e->t1, gen, ren);
      std::string fx = gen.fresh(e->x);
      std::string fy = gen.fresh(e->y);
      ren.emplace_back(e->x, fx);
      ren.emplace_back(e->y, fy);
      TermPtr b = freshen_rec(e->t2, gen, ren);
      ren.pop_back();
      ren.pop_back();
      return mk_split(s, fx, fy, b, e->loc);
    }
    case TermTag::UnrollMu: {
      TermPtr s = freshen_rec(e->t1, gen, ren);
      std::string fx = gen.fresh(e->x);
      ren.emplace_back(e->x, fx);
      TermPtr b = freshen_rec(e->t2, gen, ren);
      ren.pop_back();
      return mk_pmroll(s, fx, b, e->loc);
    }
    case TermTag::Bind: {
      TermPtr m = freshen_rec(e->t1, gen, ren);
      std::string fx = gen.fresh(e->x);
      ren.emplace_back(e->x, fx);
      TermPtr n = freshen_rec(e->t2, gen, ren);
      ren.pop_back();
      return mk_bind(fx, m, n, e->loc);
    }
    default: {
      auto r = std::make_shared<Term>(*e);
      r->t1 = freshen_rec(e->t1, gen, ren);
      r->t2 = freshen_rec(e->t2, gen, ren);
      r->t3 = freshen_rec(e->t3, gen, ren);
      return r;
    }
  }
}

}  // namespace

TermPtr alpha_freshen(const TermPtr& e, NameGen& gen) {
  Renaming ren;
  return freshen_rec(e, gen, ren);
}

namespace {

// rename a binder occurrence away from `avoid`
std::string avoid_clash(const std::string& n, const std::set<std::string>& avoid) {
  if (!avoid.count(n)) return n;
  auto [stem, k] = split_suffix(n);
  (void)k;
  int64_t i = 0;
  std::string cand;
  do {
    cand = stem + "%" + std::to_string(i++);
  } while (avoid.count(cand));
  return cand;
}

TermPtr subst_rec(const TermPtr& body, const std::string& x, const TermPtr& v,
                  const std::set<std::string>& fv_v) {
  if (!body) return nullptr;
  switch (body->tag) {
    case TermTag::Var:
      return body->x == x ? v : body;
    default:
      break;
  }

  auto rebuild = [&](TermPtr t1, TermPtr t2, TermPtr t3, const std::string& nx,
                     const std::string& ny) -> TermPtr {
    if (t1.get() == body->t1.get() && t2.get() == body->t2.get() &&
        t3.get() == body->t3.get() && nx == body->x && ny == body->y)
      return body;
    auto r = std::make_shared<Term>(*body);
    r->t1 = std::move(t1);
    r->t2 = std::move(t2);
    r->t3 = std::move(t3);
    r->x = nx;
    r->y = ny;
    return r;
  };

  // substitute under a binder list scoping `sub`
  auto go_scope = [&](TermPtr sub, std::vector<std::string> binders,
                      std::vector<std::string>& out_names) -> TermPtr {
    for (auto& b : binders)
      if (b == x) {
        // shadowed: unchanged
        out_names = binders;
        return sub;
      }
    // capture avoidance
    bool clash = false;
    for (auto& b : binders)
      if (fv_v.count(b)) clash = true;
    if (clash) {
      std::set<std::string> avoid = fv_v;
      free_vars(sub, avoid);
      avoid.insert(x);
      for (auto& b : binders) {
        std::string nb = avoid_clash(b, avoid);
        if (nb != b) {
          sub = subst_rec(sub, b, mk_var(nb), {});
          b = nb;
        }
        avoid.insert(nb);
      }
    }
    out_names = binders;
    return subst_rec(sub, x, v, fv_v);
  };

  switch (body->tag) {
    case TermTag::Lam: {
      std::vector<std::string> names;
      TermPtr b = go_scope(body->t1, {body->x}, names);
      return rebuild(b, nullptr, nullptr, names[0], body->y);
    }
    case TermTag::Case: {
      TermPtr s = subst_rec(body->t1, x, v, fv_v);
      std::vector<std::string> ln, rn;
      TermPtr l = go_scope(body->t2, {body->x}, ln);
      TermPtr r = go_scope(body->t3, {body->y}, rn);
      return rebuild(s, l, r, ln[0], rn[0]);
    }
    case TermTag::Split: {
      TermPtr s = subst_rec(body->t1, x, v, fv_v);
      std::vector<std::string> names;
      TermPtr b = go_scope(body->t2, {body->x, body->y}, names);
      return rebuild(s, b, nullptr, names[0], names[1]);
    }
    case TermTag::UnrollMu:
    case TermTag::Bind: {
      TermPtr m = subst_rec(body->t1, x, v, fv_v);
      std::vector<std::string> names;
      TermPtr n = go_scope(body->t2, {body->x}, names);
      return rebuild(m, n, nullptr, names[0], body->y);
    }
    default: {
      TermPtr t1 = subst_rec(body->t1, x, v, fv_v);
      TermPtr t2 = subst_rec(body->t2, x, v, fv_v);
      TermPtr t3 = subst_rec(body->t3, x, v, fv_v);
      return rebuild(t1, t2, t3, body->x, body->y);
    }
  }
}

}  // namespace

TermPtr subst_value(const TermPtr& body, const std::string& x, const TermPtr& v) {
  return subst_rec(body, x, v, free_vars(v));
}

TermPtr plug_stack(const TermPtr& stack, const TermPtr& m) {
  if (!stack) return nullptr;
  if (stack->tag == TermTag::Hole) return m;
  TermPtr t1 = plug_stack(stack->t1, m);
  TermPtr t2 = plug_stack(stack->t2, m);
  TermPtr t3 = plug_stack(stack->t3, m);
  if (t1.get() == stack->t1.get() && t2.get() == stack->t2.get() &&
      t3.get() == stack->t3.get())
    return stack;
  auto r = std::make_shared<Term>(*stack);
  r->t1 = std::move(t1);
  r->t2 = std::move(t2);
  r->t3 = std::move(t3);
  return r;
}

// ---------------------------------------------------------------------------
// alpha equality
// ---------------------------------------------------------------------------

namespace {
bool alpha_rec(const TermPtr& a, const TermPtr& b, Renaming& ren) {
  if (!a || !b) return a == b;
  if (a->tag != b->tag) return false;
  // annotations must match structurally
  auto tyeq = [](const TypePtr& s, const TypePtr& t) {
    if (!s || !t) return s == t;
    return type_equal(s, t);
  };
  if (!tyeq(a->ty1, b->ty1) || !tyeq(a->ty2, b->ty2)) return false;
  switch (a->tag) {
    case TermTag::Var: {
      for (auto it = ren.rbegin(); it != ren.rend(); ++it) {
        if (it->first == a->x || it->second == b->x)
          return it->first == a->x && it->second == b->x;
      }
      return a->x == b->x;
    }
    case TermTag::Lam: {
      ren.emplace_back(a->x, b->x);
      bool ok = alpha_rec(a->t1, b->t1, ren);
      ren.pop_back();
      return ok;
    }
    case TermTag::Case: {
      if (!alpha_rec(a->t1, b->t1, ren)) return false;
      ren.emplace_back(a->x, b->x);
      bool ok = alpha_rec(a->t2, b->t2, ren);
      ren.pop_back();
      if (!ok) return false;
      ren.emplace_back(a->y, b->y);
      ok = alpha_rec(a->t3, b->t3, ren);
      ren.pop_back();
      return ok;
    }
    case TermTag::Split: {
      if (!alpha_rec(a->t1, b->t1, ren)) return false;
      ren.emplace_back(a->x, b->x);
      ren.emplace_back(a->y, b->y);
      bool ok = alpha_rec(a->t2, b->t2, ren);
      ren.pop_back();
      ren.pop_back();
      return ok;
    }
    case TermTag::UnrollMu:
    case TermTag::Bind: {
      if (!alpha_rec(a->t1, b->t1, ren)) return false;
      ren.emplace_back(a->x, b->x);
      bool ok = alpha_rec(a->t2, b->t2, ren);
      ren.pop_back();
      return ok;
    }
    default:
      return alpha_rec(a->t1, b->t1, ren) && alpha_rec(a->t2, b->t2, ren) &&
             alpha_rec(a->t3, b->t3, ren);
  }
}
}  // namespace

bool alpha_equal(const TermPtr& e1, const TermPtr& e2) {
  Renaming ren;
  return alpha_rec(e1, e2, ren);
}

// ---------------------------------------------------------------------------
// stage validators
// ---------------------------------------------------------------------------

bool is_operational_value(const TermPtr& v) {
  switch (v->tag) {
    case TermTag::Var:
    case TermTag::UnitV:
      return true;
    case TermTag::Inl:
    case TermTag::Inr:
    case TermTag::RollMu:
      return is_operational_value(v->t1);
    case TermTag::PairV:
      return is_operational_value(v->t1) && is_operational_value(v->t2);
    case TermTag::Thunk:
      return true;  // body checked separately as a computation
    default:
      return false;
  }
}

namespace {

std::optional<StageFailure> stage_type(const TypePtr& t, Stage stage) {
  if (!t) return std::nullopt;
  switch (t->tag) {
    case TypeTag::Dyn:
    case TypeTag::CoDyn:
      if (stage != Stage::GTT)
        return StageFailure{{}, "dynamic type not allowed at this stage"};
      break;
    case TypeTag::Mu:
    case TypeTag::Nu:
    case TypeTag::VVar:
    case TypeTag::CVar:
      if (stage == Stage::GTT)
        return StageFailure{{}, "recursive type not allowed at GTT stage"};
      break;
    default:
      break;
  }
  if (t->a)
    if (auto f = stage_type(t->a, stage)) return f;
  if (t->b)
    if (auto f = stage_type(t->b, stage)) return f;
  return std::nullopt;
}

// in_value: whether e sits in value position (operational restriction);
// head_pos: whether a hole here would sit in operational stack head position
std::optional<StageFailure> stage_rec(const TermPtr& e, Stage stage, bool in_value,
                                      bool head_pos) {
  if (!e) return std::nullopt;
  switch (e->tag) {
    case TermTag::UpCast:
    case TermTag::DnCast:
      if (stage != Stage::GTT)
        return StageFailure{e->loc, "cast not allowed at this stage"};
      break;
    case TermTag::RollMu:
    case TermTag::UnrollMu:
    case TermTag::RollNu:
    case TermTag::UnrollNu:
      if (stage == Stage::GTT)
        return StageFailure{e->loc, "recursive-type form not allowed at GTT stage"};
      break;
    case TermTag::Hole:
      if (stage == Stage::CBPVOp && !head_pos)
        return StageFailure{e->loc, "hole outside stack head position"};
      break;
    default:
      break;
  }
  if (stage == Stage::CBPVOp && in_value) {
    switch (e->tag) {
      case TermTag::Case:
      case TermTag::Split:
      case TermTag::UnitSplit:
      case TermTag::UnrollMu:
      case TermTag::Abort:
        return StageFailure{e->loc, "pattern match in value position"};
      default:
        break;
    }
  }
  if (auto f = stage_type(e->ty1, stage)) return StageFailure{e->loc, f->reason};
  if (auto f = stage_type(e->ty2, stage)) return StageFailure{e->loc, f->reason};

  // which children are value positions / keep stack head position
  switch (e->tag) {
    case TermTag::Var:
    case TermTag::Hole:
    case TermTag::Err:
    case TermTag::UnitV:
    case TermTag::EmptyPair:
      return std::nullopt;
    case TermTag::Inl:
    case TermTag::Inr:
    case TermTag::RollMu:
    case TermTag::UpCast:
    case TermTag::Abort:
    case TermTag::Force:
    case TermTag::RetV:
      return stage_rec(e->t1, stage, true, false);
    case TermTag::PairV:
      if (auto f = stage_rec(e->t1, stage, true, false)) return f;
      return stage_rec(e->t2, stage, true, false);
    case TermTag::Thunk:
      return stage_rec(e->t1, stage, false, false);
    case TermTag::Case:
      if (auto f = stage_rec(e->t1, stage, true, false)) return f;
      if (auto f = stage_rec(e->t2, stage, in_value, false)) return f;
      return stage_rec(e->t3, stage, in_value, false);
    case TermTag::UnitSplit:
    case TermTag::Split:
    case TermTag::UnrollMu:
      if (auto f = stage_rec(e->t1, stage, true, false)) return f;
      return stage_rec(e->t2, stage, in_value, false);
    case TermTag::Bind:
      if (auto f = stage_rec(e->t1, stage, false, head_pos)) return f;
      return stage_rec(e->t2, stage, false, false);
    case TermTag::Fst:
    case TermTag::Snd:
    case TermTag::UnrollNu:
      return stage_rec(e->t1, stage, false, head_pos);
    case TermTag::Lam:
    case TermTag::RollNu:
    case TermTag::DnCast:
      return stage_rec(e->t1, stage, false, false);
    case TermTag::App:
      if (auto f = stage_rec(e->t1, stage, false, head_pos)) return f;
      return stage_rec(e->t2, stage, true, false);
    case TermTag::WithPair:
      if (auto f = stage_rec(e->t1, stage, false, false)) return f;
      return stage_rec(e->t2, stage, false, false);
  }
  return std::nullopt;
}

}  // namespace

std::optional<StageFailure> stage_check(const TermPtr& e, Stage stage) {
  return stage_rec(e, stage, false, true);
}

std::optional<StageFailure> stage_check_type(const TypePtr& t, Stage stage) {
  return stage_type(t, stage);
}

// ---------------------------------------------------------------------------
// printer
// ---------------------------------------------------------------------------

namespace {
void print_ty(const TypePtr& t, std::string& out) {
  switch (t->tag) {
    case TypeTag::Dyn: out += "?"; return;
    case TypeTag::CoDyn: out += "dyncomp"; return;
    case TypeTag::Zero: out += "0"; return;
    case TypeTag::Unit: out += "1"; return;
    case TypeTag::Top: out += "top"; return;
    case TypeTag::VVar:
    case TypeTag::CVar: out += t->name; return;
    case TypeTag::Sum:
      out += "(+ "; print_ty(t->a, out); out += " "; print_ty(t->b, out); out += ")";
      return;
    case TypeTag::Prod:
      out += "(* "; print_ty(t->a, out); out += " "; print_ty(t->b, out); out += ")";
      return;
    case TypeTag::Thunk:
      out += "(U "; print_ty(t->a, out); out += ")";
      return;
    case TypeTag::Ret:
      out += "(F "; print_ty(t->a, out); out += ")";
      return;
    case TypeTag::With:
      out += "(& "; print_ty(t->a, out); out += " "; print_ty(t->b, out); out += ")";
      return;
    case TypeTag::Arrow:
      out += "(-> "; print_ty(t->a, out); out += " "; print_ty(t->b, out); out += ")";
      return;
    case TypeTag::Mu:
      out += "(mu " + t->name + " "; print_ty(t->a, out); out += ")";
      return;
    case TypeTag::Nu:
      out += "(nu " + t->name + " "; print_ty(t->a, out); out += ")";
      return;
  }
}

void print_tm(const TermPtr& e, std::string& out) {
  switch (e->tag) {
    case TermTag::Var: out += e->x; return;
    case TermTag::Hole: out += "hole"; return;
    case TermTag::UnitV: out += "unit"; return;
    case TermTag::EmptyPair: out += "emptypair"; return;
    case TermTag::Err:
      out += "(err "; print_ty(e->ty1, out); out += ")";
      return;
    case TermTag::Abort:
      out += "(abort "; print_tm(e->t1, out);
      if (e->ty1) { out += " : "; print_ty(e->ty1, out); }
      out += ")";
      return;
    case TermTag::Inl:
      out += "(inl "; print_tm(e->t1, out);
      if (e->ty1) { out += " : "; print_ty(e->ty1, out); }
      out += ")";
      return;
    case TermTag::Inr:
      out += "(inr "; print_tm(e->t1, out);
      if (e->ty1) { out += " : "; print_ty(e->ty1, out); }
      out += ")";
      return;
    case TermTag::Case:
      out += "(case "; print_tm(e->t1, out);
      out += " (inl " + e->x + " "; print_tm(e->t2, out); out += ")";
      out += " (inr " + e->y + " "; print_tm(e->t3, out); out += "))";
      return;
    case TermTag::UnitSplit:
      out += "(usplit "; print_tm(e->t1, out); out += " "; print_tm(e->t2, out); out += ")";
      return;
    case TermTag::PairV:
      out += "(pair "; print_tm(e->t1, out); out += " "; print_tm(e->t2, out); out += ")";
      return;
    case TermTag::Split:
      out += "(split "; print_tm(e->t1, out);
      out += " (" + e->x + " " + e->y + ") "; print_tm(e->t2, out); out += ")";
      return;
    case TermTag::RollMu:
      out += "(rollmu "; print_ty(e->ty1, out); out += " "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::UnrollMu:
      out += "(pmroll "; print_tm(e->t1, out);
      out += " (" + e->x + ") "; print_tm(e->t2, out); out += ")";
      return;
    case TermTag::Thunk:
      out += "(thunk "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::Force:
      out += "(force "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::RetV:
      out += "(ret "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::Bind:
      out += "(bind " + e->x + " "; print_tm(e->t1, out); out += " ";
      print_tm(e->t2, out); out += ")";
      return;
    case TermTag::Lam:
      out += "(lam (" + e->x + " "; print_ty(e->ty1, out); out += ") ";
      print_tm(e->t1, out); out += ")";
      return;
    case TermTag::App:
      out += "(app "; print_tm(e->t1, out); out += " "; print_tm(e->t2, out); out += ")";
      return;
    case TermTag::WithPair:
      out += "(wpair "; print_tm(e->t1, out); out += " "; print_tm(e->t2, out); out += ")";
      return;
    case TermTag::Fst:
      out += "(fst "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::Snd:
      out += "(snd "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::RollNu:
      out += "(rollnu "; print_ty(e->ty1, out); out += " "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::UnrollNu:
      out += "(unrollnu "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::UpCast:
      out += "(up "; print_ty(e->ty1, out); out += " "; print_ty(e->ty2, out);
      out += " "; print_tm(e->t1, out); out += ")";
      return;
    case TermTag::DnCast:
      out += "(dn "; print_ty(e->ty1, out); out += " "; print_ty(e->ty2, out);
      out += " "; print_tm(e->t1, out); out += ")";
      return;
  }
}
}  // namespace

std::string print_type(const TypePtr& t) {
  std::string out;
  print_ty(t, out);
  return out;
}

std::string print_term(const TermPtr& e) {
  std::string out;
  print_tm(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// s-expression reader
// ---------------------------------------------------------------------------

namespace {

struct Sexp {
  // atom if children empty and !is_list
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> children;
  SrcLoc loc;
};

struct Reader {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Reader(const std::string& s) : src(s) {}

  bool eof() const { return pos >= src.size(); }
  char peek() const { return src[pos]; }
  char next() {
    char c = src[pos++];
    if (c == '\n') { line++; col = 1; } else { col++; }
    return c;
  }
  SrcLoc here() const { return {line, col}; }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') next();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        next();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ';';
  }

  Sexp read() {
    skip_ws();
    if (eof()) fail(here(), "E_PARSE", "unexpected end of input");
    SrcLoc loc = here();
    if (peek() == '(') {
      next();
      Sexp s;
      s.is_list = true;
      s.loc = loc;
      while (true) {
        skip_ws();
        if (eof()) fail(loc, "E_PARSE", "unterminated list");
        if (peek() == ')') { next(); break; }
        s.children.push_back(read());
      }
      return s;
    }
    if (peek() == ')') fail(loc, "E_PARSE", "unexpected ')'");
    Sexp s;
    s.loc = loc;
    while (!eof() && atom_char(peek())) s.atom += next();
    if (s.atom.empty()) fail(loc, "E_PARSE", "empty atom");
    return s;
  }
};

// --- type parsing ------------------------------------------------------

// tyvars maps name -> true (value var) / false (computation var)
TypePtr parse_ty(const Sexp& s, std::map<std::string, bool>& tyvars) {
  if (!s.is_list) {
    if (s.atom == "?") return ty_dyn();
    if (s.atom == "dyncomp") return ty_codyn();
    if (s.atom == "0") return ty_zero();
    if (s.atom == "1") return ty_unit();
    if (s.atom == "top") return ty_top();
    auto it = tyvars.find(s.atom);
    if (it == tyvars.end())
      fail(s.loc, "E_PARSE", "unbound type variable '" + s.atom + "'");
    return it->second ? ty_vvar(s.atom) : ty_cvar(s.atom);
  }
  if (s.children.empty()) fail(s.loc, "E_PARSE", "empty type form");
  const Sexp& head = s.children[0];
  if (head.is_list) fail(head.loc, "E_PARSE", "expected type keyword");
  const std::string& k = head.atom;
  auto want = [&](size_t n) {
    if (s.children.size() != n + 1)
      fail(s.loc, "E_PARSE", "'" + k + "' expects " + std::to_string(n) + " argument(s)");
  };
  auto vt = [&](const Sexp& e) {
    TypePtr t = parse_ty(e, tyvars);
    if (!is_value_type(t)) fail(e.loc, "E_PARSE", "expected a value type");
    return t;
  };
  auto ct = [&](const Sexp& e) {
    TypePtr t = parse_ty(e, tyvars);
    if (!is_comp_type(t)) fail(e.loc, "E_PARSE", "expected a computation type");
    return t;
  };
  if (k == "+") { want(2); return ty_sum(vt(s.children[1]), vt(s.children[2])); }
  if (k == "*") { want(2); return ty_prod(vt(s.children[1]), vt(s.children[2])); }
  if (k == "U") { want(1); return ty_thunk(ct(s.children[1])); }
  if (k == "F") { want(1); return ty_ret(vt(s.children[1])); }
  if (k == "&") { want(2); return ty_with(ct(s.children[1]), ct(s.children[2])); }
  if (k == "->") { want(2); return ty_arrow(vt(s.children[1]), ct(s.children[2])); }
  if (k == "mu" || k == "nu") {
    want(2);
    if (s.children[1].is_list) fail(s.children[1].loc, "E_PARSE", "expected type variable");
    const std::string& x = s.children[1].atom;
    bool shadowed = tyvars.count(x);
    bool old = shadowed ? tyvars[x] : false;
    tyvars[x] = (k == "mu");
    TypePtr body = k == "mu" ? vt(s.children[2]) : ct(s.children[2]);
    if (shadowed) tyvars[x] = old; else tyvars.erase(x);
    return k == "mu" ? ty_mu(x, body) : ty_nu(x, body);
  }
  fail(head.loc, "E_PARSE", "unknown type keyword '" + k + "'");
}

// --- term parsing ------------------------------------------------------

const std::set<std::string> kKeywords = {
    "hole", "unit", "emptypair", "err", "abort", "inl", "inr", "case", "usplit",
    "pair", "split", "rollmu", "pmroll", "thunk", "force", "ret", "bind", "lam",
    "app", "wpair", "fst", "snd", "rollnu", "unrollnu", "up", "dn", "let"};

struct TermParser {
  NameGen gen;
  std::map<std::string, bool> no_tyvars;

  TypePtr ty(const Sexp& s) {
    std::map<std::string, bool> vars;
    return parse_ty(s, vars);
  }

  // optional trailing ": T" ascription starting at index i
  TypePtr opt_ascription(const Sexp& s, size_t i) {
    if (s.children.size() == i) return nullptr;
    if (s.children.size() == i + 2 && !s.children[i].is_list && s.children[i].atom == ":")
      return ty(s.children[i + 1]);
    fail(s.loc, "E_PARSE", "malformed ascription (expected ': T')");
  }

  std::string binder(const Sexp& s) {
    if (s.is_list) fail(s.loc, "E_PARSE", "expected variable name");
    if (kKeywords.count(s.atom) || s.atom == "?" || s.atom == ":")
      fail(s.loc, "E_PARSE", "reserved word '" + s.atom + "' used as variable");
    return s.atom;
  }

  TermPtr term(const Sexp& s, Renaming& ren) {
    if (!s.is_list) {
      if (s.atom == "hole") return mk_hole(s.loc);
      if (s.atom == "unit") return mk_unit(s.loc);
      if (s.atom == "emptypair") return mk_emptypair(s.loc);
      if (kKeywords.count(s.atom))
        fail(s.loc, "E_PARSE", "keyword '" + s.atom + "' is not a term");
      if (const auto* r = lookup(ren, s.atom)) return mk_var(*r, s.loc);
      return mk_var(s.atom, s.loc);
    }
    if (s.children.empty()) fail(s.loc, "E_PARSE", "empty form");
    const Sexp& head = s.children[0];
    if (head.is_list) fail(head.loc, "E_PARSE", "expected term keyword");
    const std::string& k = head.atom;
    auto want = [&](size_t n) {
      if (s.children.size() != n + 1)
        fail(s.loc, "E_PARSE", "'" + k + "' expects " + std::to_string(n) + " argument(s)");
    };
    auto sub = [&](size_t i) { return term(s.children[i], ren); };

    if (k == "err") { want(1); return mk_err(ty(s.children[1]), s.loc); }
    if (k == "abort" || k == "inl" || k == "inr") {
      if (s.children.size() < 2) fail(s.loc, "E_PARSE", "'" + k + "' expects an argument");
      TermPtr v = sub(1);
      TypePtr ann = opt_ascription(s, 2);
      if (k == "abort") return mk_abort(v, ann, s.loc);
      if (k == "inl") return mk_inl(v, ann, s.loc);
      return mk_inr(v, ann, s.loc);
    }
    if (k == "case") {
      want(3);
      const Sexp& lb = s.children[2];
      const Sexp& rb = s.children[3];
      auto branch = [&](const Sexp& b, const char* which) {
        if (!b.is_list || b.children.size() != 3 || b.children[0].is_list ||
            b.children[0].atom != which)
          fail(b.loc, "E_PARSE", std::string("expected (") + which + " x E) branch");
      };
      branch(lb, "inl");
      branch(rb, "inr");
      TermPtr scrut = sub(1);
      std::string x = binder(lb.children[1]);
      std::string fx = gen.fresh(x);
      ren.emplace_back(x, fx);
      TermPtr e1 = term(lb.children[2], ren);
      ren.pop_back();
      std::string y = binder(rb.children[1]);
      std::string fy = gen.fresh(y);
      ren.emplace_back(y, fy);
      TermPtr e2 = term(rb.children[2], ren);
      ren.pop_back();
      return mk_case(scrut, fx, e1, fy, e2, s.loc);
    }
    if (k == "usplit") { want(2); TermPtr a = sub(1); return mk_usplit(a, sub(2), s.loc); }
    if (k == "pair") { want(2); TermPtr a = sub(1); return mk_pair(a, sub(2), s.loc); }
    if (k == "split") {
      want(3);
      const Sexp& xs = s.children[2];
      if (!xs.is_list || xs.children.size() != 2)
        fail(xs.loc, "E_PARSE", "expected (x y) binder list");
      TermPtr scrut = sub(1);
      std::string x = binder(xs.children[0]);
      std::string y = binder(xs.children[1]);
      std::string fx = gen.fresh(x), fy = gen.fresh(y);
      ren.emplace_back(x, fx);
      ren.emplace_back(y, fy);
      TermPtr body = term(s.children[3], ren);
      ren.pop_back();
      ren.pop_back();
      return mk_split(scrut, fx, fy, body, s.loc);
    }
    if (k == "rollmu") { want(2); return mk_rollmu(ty(s.children[1]), sub(2), s.loc); }
    if (k == "pmroll") {
      want(3);
      const Sexp& xs = s.children[2];
      if (!xs.is_list || xs.children.size() != 1)
        fail(xs.loc, "E_PARSE", "expected (x) binder list");
      TermPtr scrut = sub(1);
      std::string x = binder(xs.children[0]);
      std::string fx = gen.fresh(x);
      ren.emplace_back(x, fx);
      TermPtr body = term(s.children[3], ren);
      ren.pop_back();
      return mk_pmroll(scrut, fx, body, s.loc);
    }
    if (k == "thunk") { want(1); return mk_thunk(sub(1), s.loc); }
    if (k == "force") { want(1); return mk_force(sub(1), s.loc); }
    if (k == "ret") { want(1); return mk_ret(sub(1), s.loc); }
    if (k == "bind") {
      want(3);
      std::string x = binder(s.children[1]);
      TermPtr m = sub(2);
      std::string fx = gen.fresh(x);
      ren.emplace_back(x, fx);
      TermPtr n = term(s.children[3], ren);
      ren.pop_back();
      return mk_bind(fx, m, n, s.loc);
    }
    if (k == "let") {
      // sugar: (let x V E) is E[V/x]
      want(3);
      std::string x = binder(s.children[1]);
      TermPtr v = sub(2);
      std::string fx = gen.fresh(x);
      ren.emplace_back(x, fx);
      TermPtr e = term(s.children[3], ren);
      ren.pop_back();
      return subst_value(e, fx, v);
    }
    if (k == "lam") {
      want(2);
      const Sexp& xa = s.children[1];
      if (!xa.is_list || xa.children.size() != 2)
        fail(xa.loc, "E_PARSE", "expected (x A) parameter");
      std::string x = binder(xa.children[0]);
      TypePtr a = ty(xa.children[1]);
      std::string fx = gen.fresh(x);
      ren.emplace_back(x, fx);
      TermPtr body = term(s.children[2], ren);
      ren.pop_back();
      return mk_lam(fx, a, body, s.loc);
    }
    if (k == "app") { want(2); TermPtr m = sub(1); return mk_app(m, sub(2), s.loc); }
    if (k == "wpair") { want(2); TermPtr a = sub(1); return mk_wpair(a, sub(2), s.loc); }
    if (k == "fst") { want(1); return mk_fst(sub(1), s.loc); }
    if (k == "snd") { want(1); return mk_snd(sub(1), s.loc); }
    if (k == "rollnu") { want(2); return mk_rollnu(ty(s.children[1]), sub(2), s.loc); }
    if (k == "unrollnu") { want(1); return mk_unrollnu(sub(1), s.loc); }
    if (k == "up") { want(3); return mk_up(ty(s.children[1]), ty(s.children[2]), sub(3), s.loc); }
    if (k == "dn") { want(3); return mk_dn(ty(s.children[1]), ty(s.children[2]), sub(3), s.loc); }
    fail(head.loc, "E_PARSE", "unknown term keyword '" + k + "'");
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  Reader r(text);
  Sexp s = r.read();
  r.skip_ws();
  if (!r.eof()) fail(r.here(), "E_PARSE", "trailing input after top-level form");
  TermParser p;
  Renaming ren;
  return p.term(s, ren);
}

TypePtr parse_type(const std::string& text) {
  Reader r(text);
  Sexp s = r.read();
  r.skip_ws();
  if (!r.eof()) fail(r.here(), "E_PARSE", "trailing input after type");
  std::map<std::string, bool> vars;
  return parse_ty(s, vars);
}

}  // namespace gtt
