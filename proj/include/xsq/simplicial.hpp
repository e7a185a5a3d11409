#pragma once

#include <map>

#include "xsq/crossed.hpp"
#include "xsq/group.hpp"

namespace xsq {

/// Levels 0..depth of a simplicial group with all faces and degeneracies
/// between them. face[n][i] : G_n -> G_{n-1} for 1 <= n <= depth,
/// degen[n][i] : G_n -> G_{n+1} for 0 <= n < depth.
struct TruncatedSimplicialGroup {
  int depth = 0;
  std::vector<GroupPtr> levels;
  std::vector<std::vector<Hom>> face;
  std::vector<std::vector<Hom>> degen;

  const GroupPtr& level(int n) const { return levels[n]; }
  const Hom& d(int n, int i) const { return face[n][i]; }
  const Hom& s(int n, int i) const { return degen[n][i]; }
};

/// All simplicial identities expressible within the truncation, with level
/// and element witnesses.
Report check_simplicial(const TruncatedSimplicialGroup& g);

/// Constant simplicial group at G: every level is G, all maps the identity.
TruncatedSimplicialGroup constant_simplicial(const GroupPtr& g, int depth);

/// NG_n = intersection of ker d_i for i < n, with boundary induced by the
/// last face. Terms are materialized as groups; boundary composites are
/// verified to vanish.
struct MooreComplex {
  std::vector<Subgroup> terms;                   // inside the level groups
  std::vector<MaterializedSubgroup> term_groups;  // materialized
  std::vector<Hom> boundary;  // boundary[n] : NG_n -> NG_{n-1}, defined for n >= 1
};
MooreComplex moore_complex(const TruncatedSimplicialGroup& g);

/// Nerve of a cat1-group: level n is the group of n-chains of composable
/// arrows, level 0 the object group im s. Chains are stored so elements
/// destructure into iterated semidirect coordinates.
struct Nerve {
  TruncatedSimplicialGroup g;
  Cat1Group cat1;
  std::vector<std::vector<std::vector<int>>> chains;  // chains[n][elt] = arrow tuple in G
  MaterializedSubgroup objects;                       // im s
};
Nerve nerve_cat1(const Cat1Group& c, int depth);

/// Sparse bisimplicial grid. Axis 1 (first index) and axis 2 (second index)
/// each carry a simplicial structure; all cross ops commute.
struct BisimplicialCell {
  GroupPtr group;
  int rows = 1, cols = 1;  // matrix shape max(a,1) x max(b,1)
  std::vector<std::vector<int>> elems;  // flattened matrices over the ambient group
};

struct TruncatedBisimplicialGroup {
  GroupPtr ambient;  // entries of all matrices live here
  std::map<std::pair<int, int>, BisimplicialCell> cells;
  // ops keyed by source cell; face1[{a,b}][i] : (a,b) -> (a-1,b), etc.
  std::map<std::pair<int, int>, std::vector<Hom>> face1, face2, degen1, degen2;

  bool has_cell(int a, int b) const { return cells.count({a, b}) > 0; }
  const BisimplicialCell& cell(int a, int b) const { return cells.at({a, b}); }
};

Report check_bisimplicial(const TruncatedBisimplicialGroup& b);

/// Nerves in both directions of a cat2-group; cells (a,b) for a,b <= 2 with
/// a+b <= 3. Axis 1 composes along (s2,t2), axis 2 along (s1,t1), so the
/// (1,0) cell is im s1 and the (0,1) cell is im s2.
TruncatedBisimplicialGroup binerve(const Cat2Group& k);

/// Codiagonal simplicial group, depth 2: level n is the subgroup of
/// prod_p cell(n-p, p) cut out by the matching condition
/// d0^(1) x_p = d_{p+1}^(2) x_{p+1}.
struct Codiagonal {
  TruncatedSimplicialGroup g;
  std::vector<std::vector<std::vector<int>>> tuples;  // tuples[n][elt] = cell element indices
};
Codiagonal codiagonal(const TruncatedBisimplicialGroup& b);

/// Extends a depth-2 truncation to depth 3 by the simplicial kernel:
/// G_3 = {(y0,y1,y2,y3) in G_2^4 : d_i y_j = d_{j-1} y_i for i < j} with
/// projection faces and the forced degeneracies. NG_3 of the result is the
/// intersection of the three level-2 face kernels, embedded via the last
/// slot, and d_3 restricts to the inclusion on it.
TruncatedSimplicialGroup coskeletal_extension(const TruncatedSimplicialGroup& g);

/// D_n: subgroup generated by all degeneracy images s_i(G_{n-1}).
Subgroup degenerate_subgroup(const TruncatedSimplicialGroup& g, int n);

/// A pair of disjoint degeneracy-index words. Only the pairings the
/// constructions need are supported: ((1),(0)) at level 2 and the six
/// level-3 generators.
struct PairingIndex {
  int n = 2;
  std::vector<int> alpha, beta;
};
std::vector<PairingIndex> supported_pairings(int n);

/// F_{alpha,beta}(x,y) = p([s_alpha x, s_beta y]) where p is the composite
/// projection p_j(z) = z s_j d_j(z)^-1 into the Moore term. x and y are
/// Moore-term elements of the appropriate levels, given as level-group
/// indices of NG_{n-#alpha} and NG_{n-#beta}.
int peiffer_pairing(const TruncatedSimplicialGroup& g, const MooreComplex& moore,
                    const PairingIndex& idx, int x, int y);

/// N_n: normal closure in G_n of all F_{alpha,beta} values.
Subgroup pairing_normal_subgroup(const TruncatedSimplicialGroup& g, int n);

}  // namespace xsq
