#ifndef GTT_ELABORATE_HPP
#define GTT_ELABORATE_HPP

#include <string>

#include "gtt/dyninterp.hpp"
#include "gtt/dynamism.hpp"
#include "gtt/syntax.hpp"

namespace gtt {

// A contract produced for an upcast: a complex value with one free variable.
struct UpcastContract {
  std::string var;  // x : [[A]]
  TermPtr value;    // |- value : [[A']]
};

// elaborates A <= A' to a complex value  x:[[A]] |- V : [[A']]
UpcastContract elab_upcast(const DynDerivPtr& d, const Interp& interp);

// elaborates B <= B' to a complex stack  hole:[[B']] |- S : [[B]]
TermPtr elab_dncast(const DynDerivPtr& d, const Interp& interp);

// congruence translation of a whole typed GTT term into CBPV*
TermPtr elab_term(const TermPtr& e, const Interp& interp);

}  // namespace gtt

#endif
