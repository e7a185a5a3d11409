#pragma once

#include "xsq/functors.hpp"

namespace xsq {

/// The triple (pi1, pi2, pi3) as abstract finite groups. Abelianness of
/// pi2 and pi3 is recorded from the computed groups, never assumed.
struct HomotopySignature {
  GroupPtr pi1, pi2, pi3;
  bool pi2_abelian = true;
  bool pi3_abelian = true;
  /// set when pi3 was reported as ker d2 without a level-3 quotient
  /// (depth-2 truncations)
  bool pi3_kernel_only = false;
};

/// Homology of the Moore complex: pi_n = (ker d_{n-1} cap NG_{n-1}) / d_n(NG_n).
/// Throws error{not_normal_image} when a divisor fails to be normal.
HomotopySignature homotopy_simplicial(const TruncatedSimplicialGroup& g);

/// pi1 = N/d1(M), pi2 = ker d1 / im d2, pi3 = ker d2.
HomotopySignature homotopy_two_crossed(const TwoCrossedModule& t);

/// pi1 = N/boundary(M), pi2 = ker boundary / im delta, pi3 = ker delta.
HomotopySignature homotopy_quadratic(const QuadraticModule& q);

/// Homology of the mapping-cone complex L -> M x| N -> P.
HomotopySignature homotopy_square(const CrossedSquare& s);

bool signatures_isomorphic(const HomotopySignature& a, const HomotopySignature& b,
                           int max_order = 64);

/// "C2", "C2xC4" for abelian groups of order <= 16; empty otherwise.
std::string abelian_structure_name(const GroupPtr& g);
/// One-line description: order, abelian flag, structure name when known.
std::string describe_group(const GroupPtr& g);
std::string describe_signature(const HomotopySignature& s);

}  // namespace xsq
