#include "xsq/corpus.hpp"

#include "xsq/builtins.hpp"

namespace xsq {

namespace {

MaterializedSubgroup closed_materialize(const GroupPtr& g, const std::vector<int>& elements,
                                        const std::string& name) {
  Subgroup s = subgroup_generated(g, elements);
  if (static_cast<int>(elements.size()) != s.size())
    throw error(errc::bad_structure, "element list is not a subgroup: " + name);
  return materialize(s, name);
}

Hom between_subgroups(const MaterializedSubgroup& from, const MaterializedSubgroup& to) {
  std::vector<int> m(from.group->n);
  for (int i = 0; i < from.group->n; ++i) {
    const int v = to.from_parent[from.to_parent[i]];
    if (v < 0) throw error(errc::bad_structure, "subgroup is not contained in the target");
    m[i] = v;
  }
  return make_hom(from.group, to.group, std::move(m));
}

}  // namespace

CrossedSquare commutator_square(const GroupPtr& parent, const std::vector<int>& m_elements,
                                const std::vector<int>& n_elements) {
  MaterializedSubgroup M = closed_materialize(parent, m_elements, "M");
  MaterializedSubgroup N = closed_materialize(parent, n_elements, "N");
  MaterializedSubgroup L = materialize(intersect(subgroup_generated(parent, m_elements),
                                                 subgroup_generated(parent, n_elements)),
                                       "L");
  std::vector<int> h(static_cast<size_t>(M.group->n) * N.group->n);
  for (int m = 0; m < M.group->n; ++m)
    for (int n = 0; n < N.group->n; ++n) {
      const int c = parent->comm(M.to_parent[m], N.to_parent[n]);
      const int v = L.from_parent[c];
      if (v < 0)
        throw error(errc::bad_structure, "commutator leaves the intersection; M or N not normal");
      h[m * N.group->n + n] = v;
    }
  return CrossedSquare{L.group,
                       M.group,
                       N.group,
                       parent,
                       between_subgroups(L, M),
                       between_subgroups(L, N),
                       M.inclusion,
                       N.inclusion,
                       conjugation_action(parent, L),
                       conjugation_action(parent, M),
                       conjugation_action(parent, N),
                       std::move(h)};
}

CrossedModule inclusion_crossed_module(const GroupPtr& parent,
                                       const std::vector<int>& sub_elements) {
  MaterializedSubgroup M = closed_materialize(parent, sub_elements, "M");
  return CrossedModule{{M.inclusion, conjugation_action(parent, M)}};
}

CrossedSquare demo_square_trivial_c2() {
  GroupPtr one = trivial_group();
  GroupPtr p = cyclic_group(2);
  return CrossedSquare{one,
                       one,
                       one,
                       p,
                       identity_hom(one),
                       identity_hom(one),
                       trivial_hom(one, p),
                       trivial_hom(one, p),
                       trivial_action(p, one),
                       trivial_action(p, one),
                       trivial_action(p, one),
                       {0}};
}

CrossedSquare demo_square_a3_s3() {
  return commutator_square(symmetric_group(3), {0, 3, 4}, {0, 3, 4});
}

CrossedSquare demo_square_c4_c2() {
  GroupPtr one = trivial_group();
  GroupPtr m = cyclic_group(4);
  GroupPtr p = cyclic_group(2);
  return CrossedSquare{one,
                       m,
                       one,
                       p,
                       trivial_hom(one, m),
                       identity_hom(one),
                       make_hom(m, p, {0, 1, 0, 1}),
                       trivial_hom(one, p),
                       trivial_action(p, one),
                       trivial_action(p, m),
                       trivial_action(p, one),
                       std::vector<int>(4, 0)};
}

CrossedSquare demo_square_klein_diagonal() {
  return commutator_square(klein_four_group(), {0, 1}, {0, 1});
}

CrossedModule demo_xmod_a3_s3() {
  return inclusion_crossed_module(symmetric_group(3), {0, 3, 4});
}

CrossedModule demo_xmod_c4_c2() {
  GroupPtr m = cyclic_group(4);
  GroupPtr n = cyclic_group(2);
  return CrossedModule{{make_hom(m, n, {0, 1, 0, 1}), trivial_action(n, m)}};
}

TruncatedSimplicialGroup demo_nerve_a3_s3_depth3() {
  return nerve_cat1(cat1_from_crossed_module(demo_xmod_a3_s3()), 3).g;
}

CrossedSquare square_d4_nontrivial_h() {
  // D4 indices: r^k = k, s r^k = 4 + k
  return commutator_square(dihedral_group(4), {0, 1, 2, 3}, {0, 2, 4, 6});
}

CrossedSquare square_s3_full() {
  return commutator_square(symmetric_group(3), {0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4, 5});
}

CrossedSquare square_a3_s3_mixed() {
  return commutator_square(symmetric_group(3), {0, 3, 4}, {0, 1, 2, 3, 4, 5});
}

CrossedSquare square_q8_diagonal() {
  // indices: 0:1 1:-1 2:i 3:-i 4:j 5:-j
  return commutator_square(quaternion_group(), {0, 1, 2, 3}, {0, 1, 4, 5});
}

namespace {

TruncatedSimplicialGroup k2_common(const GroupPtr& c, bool extended) {
  GroupPtr one = trivial_group();
  GroupPtr c3 = direct_product(direct_product(c, c), c);
  GroupPtr top = extended ? direct_product(c3, c) : c3;
  const int cn = c->n;
  // level-3 coordinates (a, b, cc[, e])
  auto enc3 = [&](int a, int b, int cc, int e) {
    const int base = (a * cn + b) * cn + cc;
    return extended ? base * cn + e : base;
  };
  auto dec3 = [&](int x) {
    std::array<int, 4> t{};
    if (extended) {
      t[3] = x % cn;
      x /= cn;
    }
    t[2] = x % cn;
    x /= cn;
    t[1] = x % cn;
    t[0] = x / cn;
    return t;
  };

  TruncatedSimplicialGroup g;
  g.depth = 3;
  g.levels = {one, one, c, top};
  g.face.resize(4);
  g.degen.resize(4);
  g.face[1] = {identity_hom(one), identity_hom(one)};
  g.face[2] = {trivial_hom(c, one), trivial_hom(c, one), trivial_hom(c, one)};
  {
    std::vector<int> d0(top->n), d1(top->n), d2(top->n), d3(top->n);
    for (int x = 0; x < top->n; ++x) {
      const auto [a, b, cc, e] = dec3(x);
      d0[x] = a;
      d1[x] = c->mul(a, b);
      d2[x] = c->mul(b, cc);
      d3[x] = extended ? c->mul(cc, e) : cc;
    }
    g.face[3] = {make_hom(top, c, std::move(d0)), make_hom(top, c, std::move(d1)),
                 make_hom(top, c, std::move(d2)), make_hom(top, c, std::move(d3))};
  }
  g.degen[0] = {trivial_hom(one, one)};
  g.degen[1] = {trivial_hom(one, c), trivial_hom(one, c)};
  {
    std::vector<int> s0(cn), s1(cn), s2(cn);
    for (int a = 0; a < cn; ++a) {
      s0[a] = enc3(a, 0, 0, 0);
      s1[a] = enc3(0, a, 0, 0);
      s2[a] = enc3(0, 0, a, 0);
    }
    g.degen[2] = {make_hom(c, top, std::move(s0)), make_hom(c, top, std::move(s1)),
                  make_hom(c, top, std::move(s2))};
  }
  return g;
}

}  // namespace

TruncatedSimplicialGroup k2_simplicial(const GroupPtr& c) { return k2_common(c, false); }
TruncatedSimplicialGroup k2_simplicial_extended(const GroupPtr& c) { return k2_common(c, true); }

std::vector<std::string> demo_names() {
  return {"trivial-c2",      "square-a3-s3", "square-c4-c2", "square-klein-diagonal",
          "xmod-a3-s3",      "xmod-c4-c2",   "nerve-a3-s3-depth3"};
}

}  // namespace xsq
