#ifndef GTT_DYNAMISM_HPP
#define GTT_DYNAMISM_HPP

#include <memory>
#include <string>

#include "gtt/syntax.hpp"

namespace gtt {

// Normalized type-dynamism derivations.  The rule system is syntax-directed:
// at most one derivation exists per type pair.
enum class DynRule {
  VRefl,      // A ⊑ A, A in {?, 1}
  ZeroBot,    // 0 ⊑ A, A in {?, 0}
  ToDyn,      // A ⊑ ?, via A ⊑ floor(A), A not in {0, ?}
  UMon,       // U B ⊑ U B'
  SumMon,     // A1+A2 ⊑ A1'+A2'
  ProdMon,    // A1×A2 ⊑ A1'×A2'
  CoDynRefl,  // ¿ ⊑ ¿
  TopBot,     // ⊤ ⊑ B, B in {¿, ⊤}
  CToDyn,     // B ⊑ ¿, via B ⊑ floor(B), B not in {⊤, ¿}
  FMon,       // F A ⊑ F A'
  WithMon,    // B1&B2 ⊑ B1'&B2'
  ArrowMon,   // A→B ⊑ A'→B' (both covariant)
};

struct DynDeriv;
using DynDerivPtr = std::shared_ptr<const DynDeriv>;

struct DynDeriv {
  DynRule rule;
  TypePtr lhs, rhs;  // conclusion
  DynDerivPtr d1, d2;
};

bool is_value_deriv(const DynDerivPtr& d);

// ground-type floor: the ground type with the argument's outer connective.
// Undefined (throws) for ? and 0 / ¿ and ⊤.
TypePtr floor_v(const TypePtr& a);
TypePtr floor_c(const TypePtr& b);

// Some(deriv) iff the dynamism holds; the derivation is unique.
DynDerivPtr derive_v(const TypePtr& a, const TypePtr& a2);
DynDerivPtr derive_c(const TypePtr& b, const TypePtr& b2);

// reflexivity derivations (always succeed on GTT-stage types)
DynDerivPtr derive_refl_v(const TypePtr& a);
DynDerivPtr derive_refl_c(const TypePtr& b);

std::string print_deriv(const DynDerivPtr& d);

}  // namespace gtt

#endif
