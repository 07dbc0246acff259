#ifndef GTT_DYNINTERP_HPP
#define GTT_DYNINTERP_HPP

#include <string>

#include "gtt/syntax.hpp"

namespace gtt {

// Value ground types: 1, ?×?, ?+?, U dyncomp.
// Computation ground types: dyncomp & dyncomp, ? -> dyncomp, F ?.
enum class GroundV { Unit, Prod, Sum, Thunk };
enum class GroundC { With, Arrow, Ret };

GroundV ground_v_of(const TypePtr& ground);  // classify a floor result
GroundC ground_c_of(const TypePtr& ground);

// A dynamic type interpretation: closed mu/nu definitions of ? and dyncomp
// plus, per ground type, an embedding value and a projection stack forming
// an ep pair.
//
//   embed_v(G):   x : [[G]]  |- V : [[?]]        (x free)
//   project_v(G): hole : F [[?]] |- S : F [[G]]
//   embed_c(G):   z : U [[G]] |- V : U [[dyncomp]]  (z free)
//   project_c(G): hole : [[dyncomp]] |- S : [[G]]
struct Interp {
  std::string name;
  TypePtr val_dyn;
  TypePtr comp_dyn;

  std::string embed_var = "x";

  TermPtr embed_v(GroundV g) const;
  TermPtr project_v(GroundV g) const;
  TermPtr embed_c(GroundC g) const;
  TermPtr project_c(GroundC g) const;

  // embed_* terms with the free variable replaced by v
  TermPtr apply_embed_v(GroundV g, const TermPtr& v) const;
  TermPtr apply_embed_c(GroundC g, const TermPtr& v) const;

  // per-ground tables, indexed by the enums above
  TermPtr ev[4], pv[4], ec[3], pc[3];
};

const Interp& natural_interp();
const Interp& scheme_interp();
const Interp& interp_by_name(const std::string& name);

// homomorphic translation of a GTT type: ? and dyncomp replaced by the
// interpretation, compositional otherwise
TypePtr interp_type(const Interp& interp, const TypePtr& t);

}  // namespace gtt

#endif
