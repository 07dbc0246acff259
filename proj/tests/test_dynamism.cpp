#include <doctest.h>

#include "gtt/dynamism.hpp"
#include "gtt/harness.hpp"
#include "gtt/syntax.hpp"

using namespace gtt;

namespace {

// Independent oracle: count all derivations the normalized rules admit by
// trying every rule whose conclusion matches (exhaustive rule application).
int count_derivs_v(const TypePtr& a, const TypePtr& b);
int count_derivs_c(const TypePtr& a, const TypePtr& b);

int count_derivs_v(const TypePtr& a, const TypePtr& b) {
  int n = 0;
  // refl: A in {?, 1}
  if ((a->tag == TypeTag::Dyn || a->tag == TypeTag::Unit) && type_equal(a, b)) n++;
  // zero: 0 <= A, A in {?, 0}
  if (a->tag == TypeTag::Zero && (b->tag == TypeTag::Zero || b->tag == TypeTag::Dyn)) n++;
  // to-dyn: A <= ?, A not in {0, ?}, via A <= floor(A)
  if (b->tag == TypeTag::Dyn && a->tag != TypeTag::Dyn && a->tag != TypeTag::Zero) {
    switch (a->tag) {
      case TypeTag::Unit:
      case TypeTag::Prod:
      case TypeTag::Sum:
      case TypeTag::Thunk:
        n += count_derivs_v(a, floor_v(a));
        break;
      default:
        break;
    }
  }
  // monotonicity
  if (a->tag == TypeTag::Sum && b->tag == TypeTag::Sum)
    n += count_derivs_v(a->a, b->a) * count_derivs_v(a->b, b->b);
  if (a->tag == TypeTag::Prod && b->tag == TypeTag::Prod)
    n += count_derivs_v(a->a, b->a) * count_derivs_v(a->b, b->b);
  if (a->tag == TypeTag::Thunk && b->tag == TypeTag::Thunk)
    n += count_derivs_c(a->a, b->a);
  return n;
}

int count_derivs_c(const TypePtr& a, const TypePtr& b) {
  int n = 0;
  if (a->tag == TypeTag::CoDyn && b->tag == TypeTag::CoDyn) n++;
  if (a->tag == TypeTag::Top && (b->tag == TypeTag::Top || b->tag == TypeTag::CoDyn)) n++;
  if (b->tag == TypeTag::CoDyn && a->tag != TypeTag::CoDyn && a->tag != TypeTag::Top) {
    switch (a->tag) {
      case TypeTag::Ret:
      case TypeTag::With:
      case TypeTag::Arrow:
        n += count_derivs_c(a, floor_c(a));
        break;
      default:
        break;
    }
  }
  if (a->tag == TypeTag::Ret && b->tag == TypeTag::Ret)
    n += count_derivs_v(a->a, b->a);
  if (a->tag == TypeTag::With && b->tag == TypeTag::With)
    n += count_derivs_c(a->a, b->a) * count_derivs_c(a->b, b->b);
  if (a->tag == TypeTag::Arrow && b->tag == TypeTag::Arrow)
    n += count_derivs_v(a->a, b->a) * count_derivs_c(a->b, b->b);
  return n;
}

}  // namespace

TEST_CASE("floor examples") {
  CHECK(type_equal(floor_v(parse_type("(+ 1 1)")), parse_type("(+ ? ?)")));
  CHECK(type_equal(floor_v(parse_type("(U (-> 1 (F 1)))")), parse_type("(U dyncomp)")));
  CHECK_THROWS_AS(floor_v(ty_dyn()), Error);
  CHECK_THROWS_AS(floor_v(ty_zero()), Error);

  CHECK(type_equal(floor_c(parse_type("(F (* 1 1))")), parse_type("(F ?)")));
  CHECK(type_equal(floor_c(parse_type("(-> ? (F ?))")), parse_type("(-> ? dyncomp)")));
  CHECK_THROWS_AS(floor_c(ty_top()), Error);
  CHECK_THROWS_AS(floor_c(ty_codyn()), Error);
}

TEST_CASE("derivation examples") {
  DynDerivPtr d = derive_v(ty_zero(), ty_dyn());
  REQUIRE(d);
  CHECK(d->rule == DynRule::ZeroBot);

  d = derive_v(parse_type("(U (F 1))"), parse_type("(U (F ?))"));
  REQUIRE(d);
  CHECK(d->rule == DynRule::UMon);
  CHECK(d->d1->rule == DynRule::FMon);
  CHECK(d->d1->d1->rule == DynRule::ToDyn);
  CHECK(d->d1->d1->d1->rule == DynRule::VRefl);

  CHECK(!derive_v(ty_dyn(), ty_unit()));

  d = derive_c(ty_top(), ty_codyn());
  REQUIRE(d);
  CHECK(d->rule == DynRule::TopBot);

  d = derive_c(parse_type("(-> 1 (F 1))"), parse_type("(-> ? (F ?))"));
  REQUIRE(d);
  CHECK(d->rule == DynRule::ArrowMon);
  CHECK(d->d1->rule == DynRule::ToDyn);
  CHECK(d->d2->rule == DynRule::FMon);

  CHECK(!derive_c(parse_type("(F ?)"), parse_type("(F 1)")));
}

TEST_CASE("completeness: every GTT type is below the dynamic type") {
  TypeUniverse u = build_universe(3);
  for (auto& a : u.values) {
    DynDerivPtr d = derive_v(a, ty_dyn());
    CHECK_MESSAGE(d, "missing derivation ", print_type(a), " <= ?");
  }
  for (auto& b : u.comps) {
    DynDerivPtr d = derive_c(b, ty_codyn());
    CHECK_MESSAGE(d, "missing derivation ", print_type(b), " <= dyncomp");
  }
}

TEST_CASE("reflexivity and transitivity are admissible") {
  TypeUniverse u = build_universe(2);
  for (auto& a : u.values) CHECK(derive_v(a, a));
  for (auto& b : u.comps) CHECK(derive_c(b, b));

  for (auto& a : u.values)
    for (auto& b : u.values) {
      if (!derive_v(a, b)) continue;
      for (auto& c : u.values) {
        if (derive_v(b, c)) CHECK(derive_v(a, c));
      }
    }
  for (auto& a : u.comps)
    for (auto& b : u.comps) {
      if (!derive_c(a, b)) continue;
      for (auto& c : u.comps) {
        if (derive_c(b, c)) CHECK(derive_c(a, c));
      }
    }
}

TEST_CASE("determinism: exhaustive search finds exactly the one derivation") {
  TypeUniverse u = build_universe(2);
  for (auto& a : u.values)
    for (auto& b : u.values) {
      int n = count_derivs_v(a, b);
      DynDerivPtr d = derive_v(a, b);
      CHECK_MESSAGE(n == (d ? 1 : 0), print_type(a), " <= ", print_type(b), " admits ",
                    n, " derivations");
    }
  for (auto& a : u.comps)
    for (auto& b : u.comps) {
      int n = count_derivs_c(a, b);
      DynDerivPtr d = derive_c(a, b);
      CHECK_MESSAGE(n == (d ? 1 : 0), print_type(a), " <= ", print_type(b), " admits ",
                    n, " derivations");
    }
}

TEST_CASE("derivation conclusions are recoverable") {
  TypeUniverse u = build_universe(2);
  for (auto& a : u.values)
    for (auto& b : u.values)
      if (DynDerivPtr d = derive_v(a, b)) {
        CHECK(type_equal(d->lhs, a));
        CHECK(type_equal(d->rhs, b));
      }
}

TEST_CASE("derivation printing") {
  DynDerivPtr d = derive_v(parse_type("(U (F 1))"), parse_type("(U (F ?))"));
  std::string s = print_deriv(d);
  CHECK(s.find("UMon") != std::string::npos);
  CHECK(s.find("FMon") != std::string::npos);
  CHECK(s.find("ToDyn") != std::string::npos);
}
