#include "gtt/dynamism.hpp"

#include <cassert>
#include <sstream>

namespace gtt {

namespace {
DynDerivPtr mk_deriv(DynRule rule, TypePtr lhs, TypePtr rhs, DynDerivPtr d1 = nullptr,
                     DynDerivPtr d2 = nullptr) {
  auto d = std::make_shared<DynDeriv>();
  d->rule = rule;
  d->lhs = std::move(lhs);
  d->rhs = std::move(rhs);
  d->d1 = std::move(d1);
  d->d2 = std::move(d2);
  return d;
}
}  // namespace

bool is_value_deriv(const DynDerivPtr& d) {
  switch (d->rule) {
    case DynRule::VRefl:
    case DynRule::ZeroBot:
    case DynRule::ToDyn:
    case DynRule::UMon:
    case DynRule::SumMon:
    case DynRule::ProdMon:
      return true;
    default:
      return false;
  }
}

TypePtr floor_v(const TypePtr& a) {
  switch (a->tag) {
    case TypeTag::Unit:
      return ty_unit();
    case TypeTag::Prod:
      return ty_prod(ty_dyn(), ty_dyn());
    case TypeTag::Sum:
      return ty_sum(ty_dyn(), ty_dyn());
    case TypeTag::Thunk:
      return ty_thunk(ty_codyn());
    default:
      fail({}, "E_FLOOR", "floor undefined for " + print_type(a));
  }
}

TypePtr floor_c(const TypePtr& b) {
  switch (b->tag) {
    case TypeTag::Ret:
      return ty_ret(ty_dyn());
    case TypeTag::With:
      return ty_with(ty_codyn(), ty_codyn());
    case TypeTag::Arrow:
      return ty_arrow(ty_dyn(), ty_codyn());
    default:
      fail({}, "E_FLOOR", "floor undefined for " + print_type(b));
  }
}

DynDerivPtr derive_v(const TypePtr& a, const TypePtr& a2) {
  assert(is_value_type(a) && is_value_type(a2));
  if (a->tag == TypeTag::Zero)
    return (a2->tag == TypeTag::Zero || a2->tag == TypeTag::Dyn)
               ? mk_deriv(DynRule::ZeroBot, a, a2)
               : nullptr;
  if (a2->tag == TypeTag::Dyn) {
    if (a->tag == TypeTag::Dyn) return mk_deriv(DynRule::VRefl, a, a2);
    DynDerivPtr inner = derive_v(a, floor_v(a));
    return inner ? mk_deriv(DynRule::ToDyn, a, a2, inner) : nullptr;
  }
  if (a->tag != a2->tag) return nullptr;
  switch (a->tag) {
    case TypeTag::Unit:
      return mk_deriv(DynRule::VRefl, a, a2);
    case TypeTag::Sum: {
      DynDerivPtr d1 = derive_v(a->a, a2->a);
      DynDerivPtr d2 = derive_v(a->b, a2->b);
      return d1 && d2 ? mk_deriv(DynRule::SumMon, a, a2, d1, d2) : nullptr;
    }
    case TypeTag::Prod: {
      DynDerivPtr d1 = derive_v(a->a, a2->a);
      DynDerivPtr d2 = derive_v(a->b, a2->b);
      return d1 && d2 ? mk_deriv(DynRule::ProdMon, a, a2, d1, d2) : nullptr;
    }
    case TypeTag::Thunk: {
      DynDerivPtr d = derive_c(a->a, a2->a);
      return d ? mk_deriv(DynRule::UMon, a, a2, d) : nullptr;
    }
    default:
      return nullptr;  // Dyn ⊑ Dyn handled above; Mu/VVar are not GTT-stage
  }
}

DynDerivPtr derive_c(const TypePtr& b, const TypePtr& b2) {
  assert(is_comp_type(b) && is_comp_type(b2));
  if (b->tag == TypeTag::Top)
    return (b2->tag == TypeTag::Top || b2->tag == TypeTag::CoDyn)
               ? mk_deriv(DynRule::TopBot, b, b2)
               : nullptr;
  if (b2->tag == TypeTag::CoDyn) {
    if (b->tag == TypeTag::CoDyn) return mk_deriv(DynRule::CoDynRefl, b, b2);
    DynDerivPtr inner = derive_c(b, floor_c(b));
    return inner ? mk_deriv(DynRule::CToDyn, b, b2, inner) : nullptr;
  }
  if (b->tag != b2->tag) return nullptr;
  switch (b->tag) {
    case TypeTag::Ret: {
      DynDerivPtr d = derive_v(b->a, b2->a);
      return d ? mk_deriv(DynRule::FMon, b, b2, d) : nullptr;
    }
    case TypeTag::With: {
      DynDerivPtr d1 = derive_c(b->a, b2->a);
      DynDerivPtr d2 = derive_c(b->b, b2->b);
      return d1 && d2 ? mk_deriv(DynRule::WithMon, b, b2, d1, d2) : nullptr;
    }
    case TypeTag::Arrow: {
      DynDerivPtr d1 = derive_v(b->a, b2->a);
      DynDerivPtr d2 = derive_c(b->b, b2->b);
      return d1 && d2 ? mk_deriv(DynRule::ArrowMon, b, b2, d1, d2) : nullptr;
    }
    default:
      return nullptr;
  }
}

DynDerivPtr derive_refl_v(const TypePtr& a) { return derive_v(a, a); }
DynDerivPtr derive_refl_c(const TypePtr& b) { return derive_c(b, b); }

namespace {
const char* rule_name(DynRule r) {
  switch (r) {
    case DynRule::VRefl: return "Refl";
    case DynRule::ZeroBot: return "ZeroBot";
    case DynRule::ToDyn: return "ToDyn";
    case DynRule::UMon: return "UMon";
    case DynRule::SumMon: return "SumMon";
    case DynRule::ProdMon: return "ProdMon";
    case DynRule::CoDynRefl: return "Refl";
    case DynRule::TopBot: return "TopBot";
    case DynRule::CToDyn: return "ToDyn";
    case DynRule::FMon: return "FMon";
    case DynRule::WithMon: return "WithMon";
    case DynRule::ArrowMon: return "ArrowMon";
  }
  return "?";
}

void print_deriv_rec(const DynDerivPtr& d, int indent, std::string& out) {
  out.append(indent, ' ');
  out += rule_name(d->rule);
  out += ": ";
  out += print_type(d->lhs);
  out += " <= ";
  out += print_type(d->rhs);
  out += "\n";
  if (d->d1) print_deriv_rec(d->d1, indent + 2, out);
  if (d->d2) print_deriv_rec(d->d2, indent + 2, out);
}
}  // namespace

std::string print_deriv(const DynDerivPtr& d) {
  std::string out;
  print_deriv_rec(d, 0, out);
  return out;
}

}  // namespace gtt
