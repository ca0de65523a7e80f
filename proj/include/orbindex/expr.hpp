#pragma once

#include <string>

#include "orbindex/weyl.hpp"

namespace orbindex {

// Parses the CLI expression grammar into a Weyl element:
//   generators p1..pn, q1..qn, z1.., zb1..; h for the deformation parameter;
//   zeta(N) roots of unity; integer and rational literals; + - * ^ and
//   parentheses. Plain * is the commutative polynomial product; the Moyal
//   product is only taken by explicit star(a, b) calls.
// All expressions in one call share the generator space: pass the texts
// together so pair count and complex pairs are inferred consistently.
// Mixing p/q and z/zb on the same pair is a domain error.
std::vector<WeylElement> parse_weyl_exprs(const std::vector<std::string>& texts);

}  // namespace orbindex
