#include <doctest.h>

#include <algorithm>

#include "xsq/builtins.hpp"
#include "xsq/corpus.hpp"
#include "xsq/functors.hpp"
#include "xsq/homotopy.hpp"

using namespace xsq;

namespace {

std::vector<CrossedSquare> small_square_corpus() {
  return {demo_square_trivial_c2(), demo_square_c4_c2(), demo_square_klein_diagonal(),
          square_d4_nontrivial_h(), square_q8_diagonal(), square_a3_s3_mixed()};
}

bool two_crossed_equal(const TwoCrossedModule& a, const TwoCrossedModule& b) {
  return same_group(a.L, b.L) && same_group(a.M, b.M) && same_group(a.N, b.N) &&
         a.d2.map == b.d2.map && a.d1.map == b.d1.map && a.actM.table == b.actM.table &&
         a.actL.table == b.actL.table && a.lifting == b.lifting;
}

}  // namespace

TEST_CASE("mapping cone of the trivial square") {
  TwoCrossedModule t = two_crossed_from_square(demo_square_trivial_c2());
  CHECK(t.L->n == 1);
  CHECK(t.M->n == 1);
  CHECK(t.N->n == 2);
  CHECK(check_two_crossed(t).ok());
}

TEST_CASE("mapping cone of the inclusion square") {
  CrossedSquare sq = demo_square_a3_s3();
  MappingCone mc = mapping_cone(sq);
  CHECK(mc.tcm.M->n == 9);
  CHECK(mc.tcm.M->is_abelian());
  CHECK(check_two_crossed(mc.tcm).ok());
  // d1(m, n) = mu(m) nu(n)
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      CHECK(mc.tcm.d1.map[mc.mn.pair(m, n)] == sq.P->mul(sq.mu.map[m], sq.nu.map[n]));
}

TEST_CASE("mapping cone of the C4 -> C2 square") {
  TwoCrossedModule t = two_crossed_from_square(demo_square_c4_c2());
  CHECK(t.L->n == 1);
  CHECK(t.M->n == 4);
  CHECK(t.N->n == 2);
  CHECK(check_two_crossed(t).ok());
  CHECK(std::all_of(t.lifting.begin(), t.lifting.end(), [](int v) { return v == 0; }));
}

TEST_CASE("every corpus mapping cone passes the full axiom list") {
  for (const CrossedSquare& sq : small_square_corpus())
    CHECK(check_two_crossed(two_crossed_from_square(sq)).ok());
  CHECK(check_two_crossed(two_crossed_from_square(demo_square_a3_s3())).ok());
  CHECK(check_two_crossed(two_crossed_from_square(square_s3_full())).ok());
}

TEST_CASE("codiagonal path equals the mapping cone element-wise") {
  for (const CrossedSquare& sq : small_square_corpus()) {
    TwoCrossedModule direct = two_crossed_from_square(sq);
    TwoCrossedModule via = two_crossed_from_square_via_codiagonal(sq);
    CHECK(two_crossed_equal(direct, via));
  }
}

TEST_CASE("closed-form Peiffer commutator on the cone") {
  for (const CrossedSquare& sq :
       {demo_square_a3_s3(), square_d4_nontrivial_h(), demo_square_klein_diagonal()}) {
    MappingCone mc = mapping_cone(sq);
    const PreCrossedModule pcm{mc.tcm.d1, mc.tcm.actM};
    bool some_nontrivial = false;
    for (int x = 0; x < mc.tcm.M->n; ++x)
      for (int y = 0; y < mc.tcm.M->n; ++y) {
        const int closed = mapping_cone_peiffer_commutator(sq, mc, x, y);
        CHECK(closed == peiffer_commutator(pcm, x, y));
        some_nontrivial = some_nontrivial || closed != 0;
      }
    for (int z = 0; z < mc.tcm.M->n; ++z) {
      CHECK(mapping_cone_peiffer_commutator(sq, mc, 0, z) == 0);
      CHECK(mapping_cone_peiffer_commutator(sq, mc, z, 0) == 0);
    }
    if (sq.P->n == 8) CHECK(some_nontrivial);  // the D4 square has content here
  }
}

TEST_CASE("the c part never enters the closed form") {
  CrossedSquare sq = square_d4_nontrivial_h();
  MappingCone mc = mapping_cone(sq);
  for (int x = 0; x < mc.tcm.M->n; ++x)
    for (int a = 0; a < sq.N->n; ++a) {
      const int base = mapping_cone_peiffer_commutator(sq, mc, x, mc.mn.pair(0, a));
      for (int c = 1; c < sq.M->n; ++c)
        CHECK(mapping_cone_peiffer_commutator(sq, mc, x, mc.mn.pair(c, a)) == base);
    }
}

TEST_CASE("crossed square extracted from a depth-3 simplicial group") {
  // constant: all corners trivial except the base
  TruncatedSimplicialGroup cg = constant_simplicial(symmetric_group(3), 3);
  SimplicialSquare cs = square_from_simplicial(cg);
  CHECK(cs.square.L->n == 1);
  CHECK(cs.square.M->n == 1);
  CHECK(cs.square.N->n == 1);
  CHECK(cs.square.P->n == 6);
  CHECK(check_crossed_square(cs.square).ok());

  Nerve nv = nerve_cat1(cat1_from_crossed_module(demo_xmod_a3_s3()), 3);
  SimplicialSquare ns = square_from_simplicial(nv.g);
  CHECK(ns.square.L->n == 1);
  CHECK(ns.square.M->n == 3);
  CHECK(ns.square.N->n == 3);
  CHECK(ns.square.P->n == 18);
  CHECK(check_crossed_square(ns.square).ok());

  Nerve nc4 = nerve_cat1(cat1_from_crossed_module(demo_xmod_c4_c2()), 3);
  SimplicialSquare ns4 = square_from_simplicial(nc4.g);
  CHECK(check_crossed_square(ns4.square).ok());
  CHECK(std::all_of(ns4.square.h.begin(), ns4.square.h.end(), [](int v) { return v == 0; }));

  CHECK_THROWS_AS(square_from_simplicial(constant_simplicial(cyclic_group(2), 2)), error);

  // pure 3-type: everything concentrates in the L corner
  SimplicialSquare ks = square_from_simplicial(k2_simplicial(cyclic_group(2)));
  CHECK(ks.square.L->n == 2);
  CHECK(ks.square.M->n == 1);
  CHECK(ks.square.N->n == 1);
  CHECK(ks.square.P->n == 1);
  CHECK(check_crossed_square(ks.square).ok());
  HomotopySignature hk = homotopy_square(ks.square);
  CHECK(hk.pi1->n == 1);
  CHECK(hk.pi2->n == 1);
  CHECK(hk.pi3->n == 2);
}

TEST_CASE("two-crossed module extracted from a depth-3 simplicial group") {
  TruncatedSimplicialGroup cg = constant_simplicial(quaternion_group(), 3);
  TwoCrossedModule t = two_crossed_from_simplicial(cg);
  CHECK(t.L->n == 1);
  CHECK(t.M->n == 1);
  CHECK(t.N->n == 8);
  CHECK(check_two_crossed(t).ok());

  Nerve nv = nerve_cat1(cat1_from_crossed_module(demo_xmod_a3_s3()), 3);
  TwoCrossedModule tn = two_crossed_from_simplicial(nv.g);
  CHECK(tn.L->n == 1);
  CHECK(is_isomorphic(tn.M, cyclic_group(3)));
  CHECK(tn.N->n == 6);
  CHECK(check_two_crossed(tn).ok());

  Nerve nc4 = nerve_cat1(cat1_from_crossed_module(demo_xmod_c4_c2()), 3);
  TwoCrossedModule t4 = two_crossed_from_simplicial(nc4.g);
  CHECK(is_isomorphic(t4.M, cyclic_group(4)));
  CHECK(t4.N->n == 2);
  CHECK(check_two_crossed(t4).ok());

  // K(C,2): the whole story concentrates in the top term
  TwoCrossedModule tk = two_crossed_from_simplicial(k2_simplicial(cyclic_group(3)));
  CHECK(tk.L->n == 3);
  CHECK(tk.M->n == 1);
  CHECK(check_two_crossed(tk).ok());

  // extended tower: the extra level-3 factor is not degenerate, so the
  // quotient by d3(NG3 cap D3) keeps the full top term
  TwoCrossedModule te = two_crossed_from_simplicial(k2_simplicial_extended(cyclic_group(3)));
  CHECK(te.L->n == 3);
  CHECK(check_two_crossed(te).ok());
}

TEST_CASE("quadratic module from a 2-crossed module") {
  for (const GroupPtr& g : {cyclic_group(2), symmetric_group(3)}) {
    GroupPtr one = trivial_group();
    TwoCrossedModule t{one,
                       one,
                       g,
                       identity_hom(one),
                       trivial_hom(one, g),
                       trivial_action(g, one),
                       trivial_action(g, one),
                       {0}};
    QuadraticModule q = quadratic_from_two_crossed(t);
    CHECK(check_quadratic(q).ok());
    CHECK(q.L->n == 1);
    CHECK(q.M->n == 1);
  }

  // inclusion-square cone: brackets vanish, so both quotients are trivial
  TwoCrossedModule cone = two_crossed_from_square(demo_square_a3_s3());
  {
    const PreCrossedModule pcm{cone.d1, cone.actM};
    for (int x = 0; x < cone.M->n; ++x)
      for (int y = 0; y < cone.M->n; ++y) CHECK(peiffer_commutator(pcm, x, y) == 0);
  }
  TwoCrossedQuadratic tq = quadratic_from_two_crossed_full(cone);
  CHECK(check_quadratic(tq.qm).ok());
  CHECK(tq.qm.M->n == 9);
  CHECK(tq.qm.L->n == 3);
  CHECK(tq.m_quot.group->n == cone.M->n);  // P3 = 1
  CHECK(tq.l_quot.group->n == cone.L->n);  // P3' = 1

  TwoCrossedModule cd4 = two_crossed_from_square(square_d4_nontrivial_h());
  QuadraticModule qd4 = quadratic_from_two_crossed(cd4);
  CHECK(check_quadratic(qd4).ok());

  // full S3 square: P3 is nontrivial, the quotient does real work
  TwoCrossedModule cs3 = two_crossed_from_square(square_s3_full());
  TwoCrossedQuadratic qs3 = quadratic_from_two_crossed_full(cs3);
  CHECK(check_quadratic(qs3.qm).ok());
  CHECK(qs3.m_quot.group->n < cs3.M->n);
}

TEST_CASE("vanishing brackets force trivial closures") {
  TwoCrossedModule cone = two_crossed_from_square(demo_square_a3_s3());
  auto [p2, p3] = peiffer_subgroups({cone.d1, cone.actM});
  CHECK(p2.size() == 1);
  CHECK(p3.size() == 1);
  CHECK(composite_lifting_closure(cone).size() == 1);
}

TEST_CASE("quadratic module straight from a simplicial group") {
  TruncatedSimplicialGroup cg = constant_simplicial(symmetric_group(3), 3);
  QuadraticModule qc = quadratic_from_simplicial(cg);
  CHECK(check_quadratic(qc).ok());
  CHECK(qc.N->n == 6);
  CHECK(qc.M->n == 1);

  Nerve nv = nerve_cat1(cat1_from_crossed_module(demo_xmod_a3_s3()), 3);
  QuadraticModule qn = quadratic_from_simplicial(nv.g);
  CHECK(check_quadratic(qn).ok());
  CHECK(qn.L->n == 1);
  CHECK(is_isomorphic(qn.M, cyclic_group(3)));
  CHECK(qn.N->n == 6);

  Nerve nc4 = nerve_cat1(cat1_from_crossed_module(demo_xmod_c4_c2()), 3);
  QuadraticModule q4 = quadratic_from_simplicial(nc4.g);
  CHECK(check_quadratic(q4).ok());
  CHECK(q4.L->n == 1);
  CHECK(is_isomorphic(q4.M, cyclic_group(4)));
  CHECK(std::all_of(q4.omega.begin(), q4.omega.end(), [](int v) { return v == 0; }));

  QuadraticModule qk = quadratic_from_simplicial(k2_simplicial(cyclic_group(2)));
  CHECK(check_quadratic(qk).ok());
  CHECK(qk.L->n == 2);

  try {
    quadratic_from_simplicial(k2_simplicial_extended(cyclic_group(2)));
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == errc::hypothesis_g3_not_degenerate);
  }
  CHECK_THROWS_AS(quadratic_from_simplicial(constant_simplicial(cyclic_group(2), 2)), error);
}

TEST_CASE("composite path from squares to quadratic modules") {
  for (const CrossedSquare& sq : small_square_corpus()) {
    QuadraticModule q = quadratic_from_square(sq);
    CHECK(check_quadratic(q).ok());
    QuadraticModule composite = quadratic_from_two_crossed(two_crossed_from_square(sq));
    CHECK(same_group(q.L, composite.L));
    CHECK(same_group(q.M, composite.M));
    CHECK(q.omega == composite.omega);
    CHECK(q.delta.map == composite.delta.map);
    CHECK(q.boundary.map == composite.boundary.map);
  }
  QuadraticModule qa = quadratic_from_square(demo_square_a3_s3());
  CHECK(qa.M->n == 9);
  QuadraticModule q4 = quadratic_from_square(demo_square_c4_c2());
  CHECK(q4.L->n == 1);
  CHECK(is_isomorphic(q4.M, cyclic_group(4)));
  CHECK(image(q4.boundary).size() == 2);  // boundary onto C2
}

TEST_CASE("closed-form generator families match the composite lifting closure") {
  for (const CrossedSquare& sq :
       {demo_square_trivial_c2(), demo_square_a3_s3(), demo_square_c4_c2(),
        demo_square_klein_diagonal(), square_d4_nontrivial_h(), square_s3_full(),
        square_a3_s3_mixed(), square_q8_diagonal()}) {
    TwoCrossedModule cone = two_crossed_from_square(sq);
    Subgroup from_cone = composite_lifting_closure(cone);
    Subgroup closed_form = quadratic_square_lifting_closure(sq);
    CHECK(from_cone.elements == closed_form.elements);
  }
}

TEST_CASE("coskeletal extension feeds the depth-3 pipeline with a nontrivial top term") {
  CrossedSquare sq = demo_square_klein_diagonal();
  TruncatedSimplicialGroup nabla = codiagonal(binerve(cat2_from_crossed_square(sq).cat2)).g;
  TruncatedSimplicialGroup cosk = coskeletal_extension(nabla);
  CHECK(cosk.level(3)->n == 2048);
  CHECK(check_simplicial(cosk).ok());
  CHECK(degenerate_subgroup(cosk, 3).size() == cosk.level(3)->n);  // G3 = D3

  // the extracted square now has a nontrivial top corner and boundary
  SimplicialSquare ss = square_from_simplicial(cosk);
  CHECK(ss.square.L->n == 2);
  CHECK(ss.square.M->n == 4);
  CHECK(ss.square.N->n == 4);
  CHECK(ss.square.P->n == 16);
  CHECK(check_crossed_square(ss.square).ok());
  CHECK(std::any_of(ss.square.lam.map.begin(), ss.square.lam.map.end(),
                    [](int v) { return v != 0; }));

  TwoCrossedModule t = two_crossed_from_simplicial(cosk);
  CHECK(t.L->n == 2);
  CHECK(check_two_crossed(t).ok());
  QuadraticModule q = quadratic_from_simplicial(cosk);
  CHECK(q.L->n == 2);
  CHECK(check_quadratic(q).ok());

  // homotopy agrees with the square the tower came from, on every route
  HomotopySignature hs = homotopy_simplicial(cosk);
  CHECK(signatures_isomorphic(hs, homotopy_square(sq)));
  CHECK(signatures_isomorphic(hs, homotopy_two_crossed(t)));
  CHECK(signatures_isomorphic(hs, homotopy_quadratic(q)));
  CHECK(signatures_isomorphic(hs, homotopy_two_crossed(two_crossed_from_square(ss.square))));

  // the boundary congruences run with nontrivial level-2 Moore elements
  MooreComplex mc = moore_complex(cosk);
  REQUIRE(mc.term_groups[2].group->n == 2);
  const Group& G2 = *cosk.level(2);
  auto s2 = [&](int i, int x) { return cosk.s(2, i).map[x]; };
  auto s1 = [&](int i, int x) { return cosk.s(1, i).map[x]; };
  for (int a : mc.terms[2].elements)
    for (int b : mc.terms[2].elements) {
      const int f = peiffer_pairing(cosk, mc, PairingIndex{3, {0}, {1}}, a, b);
      const int lhs = cosk.d(3, 3).map[f];
      const int da = cosk.d(2, 2).map[a], db = cosk.d(2, 2).map[b];
      const int rhs = G2.mul(
          G2.mul(G2.comm(s1(0, da), s1(1, db)), G2.comm(s1(1, db), s1(1, da))), G2.comm(a, b));
      CHECK(lhs == rhs);
    }
  (void)s2;
}

TEST_CASE("two routes from simplicial groups to 2-crossed modules agree on homotopy") {
  for (const CrossedModule& xm : {demo_xmod_a3_s3(), demo_xmod_c4_c2()}) {
    Nerve nv = nerve_cat1(cat1_from_crossed_module(xm), 3);
    TwoCrossedModule direct = two_crossed_from_simplicial(nv.g);
    TwoCrossedModule viasq = two_crossed_from_square(square_from_simplicial(nv.g).square);
    CHECK(check_two_crossed(direct).ok());
    CHECK(check_two_crossed(viasq).ok());
    CHECK(signatures_isomorphic(homotopy_two_crossed(direct), homotopy_two_crossed(viasq)));
  }
}

TEST_CASE("both quadratic constructions agree on homotopy when G3 = D3") {
  std::vector<TruncatedSimplicialGroup> corpus;
  corpus.push_back(constant_simplicial(symmetric_group(3), 3));
  corpus.push_back(nerve_cat1(cat1_from_crossed_module(demo_xmod_a3_s3()), 3).g);
  corpus.push_back(nerve_cat1(cat1_from_crossed_module(demo_xmod_c4_c2()), 3).g);
  corpus.push_back(k2_simplicial(cyclic_group(2)));
  corpus.push_back(k2_simplicial(cyclic_group(3)));
  corpus.push_back(coskeletal_extension(
      codiagonal(binerve(cat2_from_crossed_square(demo_square_klein_diagonal()).cat2)).g));
  for (const auto& g : corpus) {
    REQUIRE(degenerate_subgroup(g, 3).size() == g.level(3)->n);
    QuadraticModule direct = quadratic_from_simplicial(g);
    QuadraticModule via = quadratic_from_two_crossed(two_crossed_from_simplicial(g));
    CHECK(signatures_isomorphic(homotopy_quadratic(direct), homotopy_quadratic(via)));
  }
}
