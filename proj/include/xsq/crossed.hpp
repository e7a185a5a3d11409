#pragma once

#include <array>

#include "xsq/group.hpp"

namespace xsq {

/// One failed axiom instance: the axiom's identifier and the element tuple
/// witnessing the failure.
struct Violation {
  std::string axiom;
  std::vector<int> witness;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string axiom, std::vector<int> witness) {
    violations.push_back({std::move(axiom), std::move(witness)});
  }
};

/// Homomorphism boundary: M -> N with an action of N on M satisfying
/// equivariance. The Peiffer identity is not required here.
struct PreCrossedModule {
  Hom boundary;  // M -> N
  Action act;    // N on M
  const GroupPtr& M() const { return boundary.dom; }
  const GroupPtr& N() const { return boundary.cod; }
};

struct CrossedModule {
  PreCrossedModule pcm;
  const GroupPtr& M() const { return pcm.M(); }
  const GroupPtr& N() const { return pcm.N(); }
};

/// Complex L -> M -> N with N-actions and a Peiffer lifting {-,-}: MxM -> L.
struct TwoCrossedModule {
  GroupPtr L, M, N;
  Hom d2;      // L -> M
  Hom d1;      // M -> N
  Action actM;  // N on M
  Action actL;  // N on L
  std::vector<int> lifting;  // |M| x |M| -> L index
  int lift(int m1, int m2) const { return lifting[m1 * M->n + m2]; }
  /// Derived action of M on L, {d2 l, m} * l, computed from the lifting.
  int m_act(int m, int l) const { return L->mul(lift(d2.map[l], m), l); }
};

/// Commutative square of groups with P-actions and the h-map M x N -> L.
struct CrossedSquare {
  GroupPtr L, M, N, P;
  Hom lam;   // lambda: L -> M
  Hom lamp;  // lambda': L -> N
  Hom mu;    // M -> P
  Hom nu;    // N -> P
  Action actL, actM, actN;  // P on L, M, N
  std::vector<int> h;       // |M| x |N| -> L index
  int hmap(int m, int n) const { return h[m * N->n + n]; }
  // induced actions through mu / nu
  int m_on_m(int m, int m2) const { return actM.apply(mu.map[m], m2); }
  int m_on_n(int m, int n) const { return actN.apply(mu.map[m], n); }
  int m_on_l(int m, int l) const { return actL.apply(mu.map[m], l); }
  int n_on_m(int n, int m) const { return actM.apply(nu.map[n], m); }
  int n_on_n(int n, int n2) const { return actN.apply(nu.map[n], n2); }
  int n_on_l(int n, int l) const { return actL.apply(nu.map[n], l); }
};

/// Nil(2) boundary M -> N with a quadratic refinement omega on C x C,
/// C = (M^cr)^ab. omega is stored as a full table on C x C; bilinearity
/// is a checked invariant.
struct QuadraticModule {
  GroupPtr L, M, N;
  Hom delta;     // L -> M
  Hom boundary;  // M -> N
  Action actM;   // N on M
  Action actL;   // N on L
  GroupPtr C;
  Hom q;  // M -> C
  std::vector<int> omega;  // |C| x |C| -> L index
  int om(int c1, int c2) const { return omega[c1 * C->n + c2]; }
};

struct Cat1Group {
  GroupPtr G;
  Hom s, t;  // endomorphisms of G
};

struct Cat2Group {
  GroupPtr G;
  Hom s1, t1, s2, t2;
};

// -- checkers ---------------------------------------------------------------

Report check_precrossed(const PreCrossedModule& p);
Report check_crossed_module(const CrossedModule& c);
Report check_two_crossed(const TwoCrossedModule& t);
Report check_crossed_square(const CrossedSquare& s);
Report check_quadratic(const QuadraticModule& q);
Report check_cat1(const Cat1Group& c);
Report check_cat2(const Cat2Group& c);

// -- Peiffer machinery --------------------------------------------------------

/// <x,y> = (^{d x} y) x y^-1 x^-1 in M.
int peiffer_commutator(const PreCrossedModule& p, int x, int y);

/// P2 = normal closure of all <x,y>; P3 = normal closure of all length-3
/// Peiffer commutators <<x,y>,z> and <x,<y,z>>.
std::pair<Subgroup, Subgroup> peiffer_subgroups(const PreCrossedModule& p);

// -- cat conversions ----------------------------------------------------------

/// G = M x| N with s(m,n) = (1,n), t(m,n) = (1, d(m) n).
Cat1Group cat1_from_crossed_module(const CrossedModule& c);

struct CrossedModuleFromCat1 {
  CrossedModule xm;
  MaterializedSubgroup kernel_part;  // ker s, the module group
  MaterializedSubgroup base_part;    // im s, the base group
};
/// Inverse construction: C = ker s, B = im s, boundary t|_C, conjugation
/// action. Throws error{not_cat1} when the input fails the cat1 axioms.
CrossedModuleFromCat1 crossed_module_from_cat1(const Cat1Group& k);

struct Cat2FromSquare {
  Cat2Group cat2;
  SemidirectProduct ln;     // L x| N
  SemidirectProduct mp;     // M x| P
  SemidirectProduct outer;  // (L x| N) x| (M x| P)
  // destructure a big-group element into (l, n, m, p)
  std::array<int, 4> split(int g) const;
  int join(int l, int n, int m, int p) const;
};
/// Big group (L x| N) x| (M x| P) with the four source/target endomorphisms.
Cat2FromSquare cat2_from_crossed_square(const CrossedSquare& s);

struct SquareFromCat2 {
  CrossedSquare square;
  MaterializedSubgroup cornerL, cornerM, cornerN, cornerP;  // subgroups of G
};
/// Corners ker/im intersections, conjugation actions, h = commutator in G.
SquareFromCat2 crossed_square_from_cat2(const Cat2Group& k);

}  // namespace xsq
