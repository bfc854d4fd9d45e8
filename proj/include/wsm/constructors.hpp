#ifndef WSM_CONSTRUCTORS_HPP
#define WSM_CONSTRUCTORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wsm/group.hpp"

namespace wsm
{

class ConstructorError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Symmetric group on n >= 1 points.
Group sym(std::uint64_t n);
/// Alternating group on n >= 1 points, from (1,2,3) and an n- or (n-1)-cycle.
Group alt(std::uint64_t n);
/// Cyclic group of order n >= 1 acting regularly.
Group cyclic(std::uint64_t n);
/// Dihedral group of order 2n on n points (n >= 3); n = 1, 2 give C2 and C2 x C2.
Group dihedral(std::uint64_t n);
/// (C_p)^n as n disjoint p-cycles.
Group elem_abelian(std::uint64_t p, std::uint64_t n);
/// Generalized quaternion group of order n = 2^k >= 8 in its regular action.
Group quaternion(std::uint64_t n);
Group direct(Group const &a, Group const &b);
/// Affine group x -> a x + b over GF(q), acting on the q field elements.
Group agl1(std::uint64_t q);

/// Evaluates a constructor expression such as "direct(sym(3),cyclic(4))".
Group build_from_source(std::string_view source);

} // namespace wsm

#endif // WSM_CONSTRUCTORS_HPP
