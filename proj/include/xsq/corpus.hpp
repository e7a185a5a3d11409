#pragma once

#include "xsq/crossed.hpp"
#include "xsq/simplicial.hpp"

namespace xsq {

/// Commutator crossed square inside a parent group: M and N are normal
/// subgroups given by element lists, L = M cap N, all maps inclusions,
/// all actions conjugation, h(m,n) = [m,n].
CrossedSquare commutator_square(const GroupPtr& parent, const std::vector<int>& m_elements,
                                const std::vector<int>& n_elements);

/// Crossed module of a normal subgroup: inclusion with conjugation action.
CrossedModule inclusion_crossed_module(const GroupPtr& parent,
                                       const std::vector<int>& sub_elements);

// the built-in demo corpus
CrossedSquare demo_square_trivial_c2();
CrossedSquare demo_square_a3_s3();
CrossedSquare demo_square_c4_c2();
CrossedSquare demo_square_klein_diagonal();
CrossedModule demo_xmod_a3_s3();
CrossedModule demo_xmod_c4_c2();
TruncatedSimplicialGroup demo_nerve_a3_s3_depth3();

/// D4 commutator square with M = <r>, N = <r^2, s>: the smallest corpus
/// entry whose h-map is nontrivial. Used by tests, not in the demo list.
CrossedSquare square_d4_nontrivial_h();
/// Full commutator square of S3 (all corners S3); h nontrivial.
CrossedSquare square_s3_full();
/// Asymmetric square M = A3, N = S3 inside S3; h nontrivial.
CrossedSquare square_a3_s3_mixed();
/// Q8 square with M = <i>, N = <j>, L = {1,-1}; h nontrivial.
CrossedSquare square_q8_diagonal();

/// Truncated Eilenberg-MacLane-style tower with NG2 = C (abelian): levels
/// 1, 1, C, C^3, zero boundaries. G3 = D3 holds.
TruncatedSimplicialGroup k2_simplicial(const GroupPtr& c);
/// The same with an extra free level-3 factor mapping onto NG2, so that
/// G3 != D3.
TruncatedSimplicialGroup k2_simplicial_extended(const GroupPtr& c);

std::vector<std::string> demo_names();

}  // namespace xsq
