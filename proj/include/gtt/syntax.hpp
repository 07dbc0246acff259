#ifndef GTT_SYNTAX_HPP
#define GTT_SYNTAX_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtt {

// ---------------------------------------------------------------------------
// source locations and errors
// ---------------------------------------------------------------------------

struct SrcLoc {
  int line = 0;
  int col = 0;
  bool known() const { return line > 0; }
};

// machine-readable error: "ERR <line>:<col> <code> <message>"
struct Error : std::runtime_error {
  SrcLoc loc;
  std::string code;
  std::string message;
  Error(SrcLoc l, std::string c, std::string m);
  std::string formatted() const;
};

[[noreturn]] void fail(SrcLoc loc, const std::string& code, const std::string& msg);

// ---------------------------------------------------------------------------
// types
//
// One grammar covers both GTT-level types (with ?/dyncomp) and CBPV*-level
// types (with mu/nu).  Polarity is a property of the tag.
// ---------------------------------------------------------------------------

enum class TypeTag {
  Dyn,    // ?
  Thunk,  // (U B)
  Zero,   // 0
  Sum,    // (+ A A)
  Unit,   // 1
  Prod,   // (* A A)
  Mu,     // (mu X A)
  VVar,   // X
  CoDyn,  // dyncomp
  Ret,    // (F A)
  Top,    // top
  With,   // (& B B)
  Arrow,  // (-> A B)
  Nu,     // (nu Y B)
  CVar,   // Y
};

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  TypeTag tag;
  std::string name;  // Mu/Nu binder, VVar/CVar name
  TypePtr a, b;
};

bool is_value_type(const TypePtr& t);
bool is_comp_type(const TypePtr& t);

TypePtr ty_dyn();
TypePtr ty_codyn();
TypePtr ty_unit();
TypePtr ty_zero();
TypePtr ty_top();
TypePtr ty_sum(TypePtr a, TypePtr b);
TypePtr ty_prod(TypePtr a, TypePtr b);
TypePtr ty_thunk(TypePtr b);
TypePtr ty_ret(TypePtr a);
TypePtr ty_with(TypePtr a, TypePtr b);
TypePtr ty_arrow(TypePtr a, TypePtr b);
TypePtr ty_mu(const std::string& x, TypePtr a);
TypePtr ty_nu(const std::string& y, TypePtr b);
TypePtr ty_vvar(const std::string& x);
TypePtr ty_cvar(const std::string& y);

TypePtr ty_bool();  // (+ 1 1)

// alpha-aware structural equality
bool type_equal(const TypePtr& s, const TypePtr& t);

// capture-avoiding substitution of w for type variable x
TypePtr subst_type(const TypePtr& t, const std::string& x, const TypePtr& w);

// one unrolling of a Mu/Nu type
TypePtr unroll_type(const TypePtr& t);

void free_type_vars(const TypePtr& t, std::set<std::string>& out);
bool type_closed(const TypePtr& t);

// ---------------------------------------------------------------------------
// terms
//
// Three sorts share one grammar: values, computations, and stacks
// (computations with a hole).  Stage validators below carve out GTT,
// CBPV*, and operational CBPV.
// ---------------------------------------------------------------------------

enum class TermTag {
  Var,        // x
  Hole,       // hole
  Err,        // (err B)
  Abort,      // (abort V) / (abort V : T)
  Inl,        // (inl V) / (inl V : A)
  Inr,        // (inr V) / (inr V : A)
  Case,       // (case V (inl x E) (inr y E))
  UnitV,      // unit
  UnitSplit,  // (usplit V E)
  PairV,      // (pair V V)
  Split,      // (split V (x y) E)
  RollMu,     // (rollmu A V)
  UnrollMu,   // (pmroll V (x) E)
  Thunk,      // (thunk M)
  Force,      // (force V)
  RetV,       // (ret V)
  Bind,       // (bind x M N)
  Lam,        // (lam (x A) M)
  App,        // (app M V)
  EmptyPair,  // emptypair
  WithPair,   // (wpair M M)
  Fst,        // (fst M)
  Snd,        // (snd M)
  RollNu,     // (rollnu B M)
  UnrollNu,   // (unrollnu M)
  UpCast,     // (up A A' V)
  DnCast,     // (dn B B' M)
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermTag tag;
  SrcLoc loc;
  std::string x, y;   // binder names (Case: x for inl, y for inr; Split: x, y)
  TypePtr ty1, ty2;   // annotations (casts carry two)
  TermPtr t1, t2, t3; // subterms
};

TermPtr mk_var(const std::string& x, SrcLoc loc = {});
TermPtr mk_hole(SrcLoc loc = {});
TermPtr mk_err(TypePtr b, SrcLoc loc = {});
TermPtr mk_abort(TermPtr v, TypePtr ann = nullptr, SrcLoc loc = {});
TermPtr mk_inl(TermPtr v, TypePtr ann = nullptr, SrcLoc loc = {});
TermPtr mk_inr(TermPtr v, TypePtr ann = nullptr, SrcLoc loc = {});
TermPtr mk_case(TermPtr scrut, const std::string& x1, TermPtr e1,
                const std::string& x2, TermPtr e2, SrcLoc loc = {});
TermPtr mk_unit(SrcLoc loc = {});
TermPtr mk_usplit(TermPtr scrut, TermPtr body, SrcLoc loc = {});
TermPtr mk_pair(TermPtr v1, TermPtr v2, SrcLoc loc = {});
TermPtr mk_split(TermPtr scrut, const std::string& x, const std::string& y,
                 TermPtr body, SrcLoc loc = {});
TermPtr mk_rollmu(TypePtr a, TermPtr v, SrcLoc loc = {});
TermPtr mk_pmroll(TermPtr scrut, const std::string& x, TermPtr body, SrcLoc loc = {});
TermPtr mk_thunk(TermPtr m, SrcLoc loc = {});
TermPtr mk_force(TermPtr v, SrcLoc loc = {});
TermPtr mk_ret(TermPtr v, SrcLoc loc = {});
TermPtr mk_bind(const std::string& x, TermPtr m, TermPtr n, SrcLoc loc = {});
TermPtr mk_lam(const std::string& x, TypePtr a, TermPtr m, SrcLoc loc = {});
TermPtr mk_app(TermPtr m, TermPtr v, SrcLoc loc = {});
TermPtr mk_emptypair(SrcLoc loc = {});
TermPtr mk_wpair(TermPtr m1, TermPtr m2, SrcLoc loc = {});
TermPtr mk_fst(TermPtr m, SrcLoc loc = {});
TermPtr mk_snd(TermPtr m, SrcLoc loc = {});
TermPtr mk_rollnu(TypePtr b, TermPtr m, SrcLoc loc = {});
TermPtr mk_unrollnu(TermPtr m, SrcLoc loc = {});
TermPtr mk_up(TypePtr a, TypePtr a2, TermPtr v, SrcLoc loc = {});
TermPtr mk_dn(TypePtr b, TypePtr b2, TermPtr m, SrcLoc loc = {});

TermPtr mk_true();   // (inl unit : (+ 1 1))
TermPtr mk_false();  // (inr unit : (+ 1 1))

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

void free_vars(const TermPtr& e, std::set<std::string>& out);
std::set<std::string> free_vars(const TermPtr& e);

// capture-avoiding substitution of value v for x
TermPtr subst_value(const TermPtr& body, const std::string& x, const TermPtr& v);

// textual replacement of the hole by m
TermPtr plug_stack(const TermPtr& stack, const TermPtr& m);

bool alpha_equal(const TermPtr& e1, const TermPtr& e2);

// fresh-name generation: "<base>%<k>", k above every suffix seen so far
class NameGen {
 public:
  NameGen() = default;
  explicit NameGen(uint64_t start) : next_(start) {}
  std::string fresh(const std::string& base);
  // bump the counter above every %-suffix occurring in e (binders and frees)
  void absorb(const TermPtr& e);
  uint64_t next() const { return next_; }

 private:
  uint64_t next_ = 0;
};

// rename every binder to a distinct fresh name
TermPtr alpha_freshen(const TermPtr& e, NameGen& gen);

// ---------------------------------------------------------------------------
// stages
// ---------------------------------------------------------------------------

enum class Stage { GTT, CBPVStar, CBPVOp };

struct StageFailure {
  SrcLoc loc;
  std::string reason;
};

// pass iff e satisfies the stage's syntactic restrictions; reports the
// first offending subterm otherwise
std::optional<StageFailure> stage_check(const TermPtr& e, Stage stage);
std::optional<StageFailure> stage_check_type(const TypePtr& t, Stage stage);

// true iff v is an operational value (intro forms only)
bool is_operational_value(const TermPtr& v);

// ---------------------------------------------------------------------------
// concrete syntax
// ---------------------------------------------------------------------------

std::string print_type(const TypePtr& t);
std::string print_term(const TermPtr& e);

// parse one top-level form; alpha-freshens binders
TermPtr parse_term(const std::string& text);
TypePtr parse_type(const std::string& text);

}  // namespace gtt

#endif
