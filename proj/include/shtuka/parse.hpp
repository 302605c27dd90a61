#pragma once

#include "shtuka/matrix.hpp"
#include "shtuka/parabolic.hpp"

#include <string>

namespace shtuka {

// Literal grammars; all throw ParseError.
//   field      p=2,e=1,m=2[,mod=t^2+t+1]   (e, m default to 1)
//   coweight   [1,0,-1]      rational  [1/2,1/2,0]
//   perm       (1 3)(2 5 4)  or one-line [3,1,2], 1-based
//   element    w:(1 3)(2 5 4) t:[1,1,0,0,0]
//   series     1 + (t+1)*z^2 - z^-1 + O(z^5)
//   matrix     [a, b; c, d]  or  [[a, b], [c, d]]
//   parabolic  blocks=2,3 w=(2 3)
const FiniteField& parse_field(const std::string& s);
Coweight parse_coweight(const std::string& s);
RationalCoweight parse_rational_coweight(const std::string& s);
Perm parse_perm(const std::string& s, int n);
AffineWeyl parse_affine_weyl(const std::string& s);
Series parse_series(const std::string& s, const FiniteField& F);
Matrix parse_matrix(const std::string& s, const FiniteField& F);
ParabolicSpec parse_parabolic(const std::string& s, int n);

}  // namespace shtuka
