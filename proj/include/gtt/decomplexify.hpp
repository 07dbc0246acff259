#ifndef GTT_DECOMPLEXIFY_HPP
#define GTT_DECOMPLEXIFY_HPP

#include <string>

#include "gtt/syntax.hpp"

namespace gtt {

// CBPV* -> operational CBPV.
//
// A complex value V : A becomes a computation of type F A equivalent to
// ret V; a complex stack S with hole : B becomes a computation with a free
// thunk variable z : U B equivalent to S[force z]; computations keep their
// type.  The translation deliberately retains administrative redices.

TermPtr simp_value(const TermPtr& v);
TermPtr simp_comp(const TermPtr& m);
TermPtr simp_stack(const TermPtr& s, const std::string& z = "z");

}  // namespace gtt

#endif
