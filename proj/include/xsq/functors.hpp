#pragma once

#include "xsq/crossed.hpp"
#include "xsq/simplicial.hpp"

namespace xsq {

/// Mapping cone of a crossed square: the complex L -> M x| N -> P with
/// d2 l = (lam l^-1, lam' l), d1 (m,n) = mu(m) nu(n) and Peiffer lifting
/// {(m,n),(c,a)} = h(m, n a n^-1).
struct MappingCone {
  SemidirectProduct mn;  // M x| N, N acting through nu
  TwoCrossedModule tcm;
};
MappingCone mapping_cone(const CrossedSquare& s);
TwoCrossedModule two_crossed_from_square(const CrossedSquare& s);

/// Closed form of the Peiffer commutator <x,y> on the mapping cone; the
/// c-part of y never enters. x, y and the result are M x| N pair indices.
int mapping_cone_peiffer_commutator(const CrossedSquare& s, const MappingCone& mc, int x, int y);

/// The codiagonal of the binerve of the associated cat2-group, carried
/// both generically (matching-condition enumeration, the oracle) and in the
/// explicit tuple presentation with levels P, N x|(M x| P),
/// (L x|(N x| M)) x|(N x|(M x| P)). `ident[n]` maps generic level-n
/// elements to explicit tuple indices; both presentations are built
/// independently and agree under it.
struct SquareCodiagonal {
  Cat2FromSquare cat2;
  TruncatedBisimplicialGroup nerve2;
  Codiagonal nabla;
  TruncatedSimplicialGroup fast;
  std::vector<std::vector<int>> ident;  // per level 0..2
  // explicit tuple codecs
  int g1_index(int n, int m, int p) const;
  std::array<int, 3> g1_tuple(int idx) const;
  int g2_index(int l, int n, int m1, int n1, int m2, int p) const;
  std::array<int, 6> g2_tuple(int idx) const;
  GroupPtr squareL, squareM, squareN, squareP;
};
SquareCodiagonal codiagonal_of_square(const CrossedSquare& s);

/// Same 2-crossed module as two_crossed_from_square, recovered from the
/// Moore complex of the codiagonal through the tracked identifications
/// (ker d0 at level 1 is M x| N via (a,b,p) -> (b^-1, a^-1); the level-2
/// kernel intersection is L by its l-coordinate).
TwoCrossedModule two_crossed_from_square_via_codiagonal(const CrossedSquare& s);

/// Crossed square of a depth-3 simplicial group: corners NG2/d3(NG3), NG1,
/// ker d1, G1, h(x,y) = [s1 x, s1 y s0 y^-1] mod d3(NG3).
struct SimplicialSquare {
  CrossedSquare square;
  MaterializedSubgroup cornerM;  // NG1 inside G1
  MaterializedSubgroup cornerN;  // ker d1 inside G1
  MaterializedSubgroup ng2;      // NG2 inside G2
  QuotientResult top;            // NG2 group / d3(NG3)
};
SimplicialSquare square_from_simplicial(const TruncatedSimplicialGroup& g);

/// 2-crossed module NG2/d3(NG3 cap D3) -> NG1 -> NG0 with the degeneracy
/// lifting {x,y} = s0 x s1 y s0 x^-1 s1 x s1 y^-1 s1 x^-1. The top quotient
/// divides by d3(NG3 cap D3) by default; `full_boundary` divides by the
/// whole d3(NG3) instead (the two agree when G3 = D3).
struct SimplicialTwoCrossed {
  TwoCrossedModule tcm;
  MaterializedSubgroup ng1;  // inside G1
  MaterializedSubgroup ng2;  // inside G2
  QuotientResult top;        // NG2 group / boundary image
};
SimplicialTwoCrossed two_crossed_from_simplicial_full(const TruncatedSimplicialGroup& g,
                                                      bool full_boundary = false);
TwoCrossedModule two_crossed_from_simplicial(const TruncatedSimplicialGroup& g);

/// Quadratic module of a 2-crossed module: quotients by the normal closures
/// of the length-3 Peiffer commutators and their liftings, with omega
/// induced by the lifting. Throws error{omega_not_well_defined} when the
/// lifting fails to descend to classes.
struct TwoCrossedQuadratic {
  QuadraticModule qm;
  QuotientResult m_quot;  // C1 -> M
  QuotientResult l_quot;  // C2 -> L
};
TwoCrossedQuadratic quadratic_from_two_crossed_full(const TwoCrossedModule& t);
QuadraticModule quadratic_from_two_crossed(const TwoCrossedModule& t);

/// Quadratic module straight from a depth-3 simplicial group with G3 = D3;
/// throws error{hypothesis_g3_not_degenerate} otherwise.
QuadraticModule quadratic_from_simplicial(const TruncatedSimplicialGroup& g);

/// Composite of the two functors above.
QuadraticModule quadratic_from_square(const CrossedSquare& s);

/// The closed-form generator families for the lifting quotient of the
/// square's quadratic module; agrees with the composite path's closure.
Subgroup quadratic_square_lifting_closure(const CrossedSquare& s);
Subgroup composite_lifting_closure(const TwoCrossedModule& cone);

}  // namespace xsq
