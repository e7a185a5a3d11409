#pragma once

#include "xsq/group.hpp"

namespace xsq {

GroupPtr trivial_group();
GroupPtr cyclic_group(int n);
/// Dihedral group of order 2n (symmetries of the n-gon), n >= 1.
GroupPtr dihedral_group(int n);
/// Symmetric group on n letters as lexicographically ordered permutations,
/// composed as (f*g)(x) = f(g(x)). n <= 5.
GroupPtr symmetric_group(int n);
GroupPtr quaternion_group();
GroupPtr klein_four_group();

/// Direct product with pairs (a,b) indexed a*|B|+b.
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

/// Looks up a builtin by its file-format name ("cyclic", "dihedral",
/// "symmetric", "quaternion8", "klein4"); n is ignored where fixed.
GroupPtr builtin_group(const std::string& kind, int n);

}  // namespace xsq
