#include "xsq/functors.hpp"

#include <algorithm>
#include <numeric>

namespace xsq {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw error(errc::bad_structure, what);
}

void require_valid_square(const CrossedSquare& s) {
  Report r = check_crossed_square(s);
  if (!r.ok())
    throw error(errc::bad_structure, "input is not a crossed square: " + r.violations[0].axiom,
                r.violations[0].witness);
}

}  // namespace

// -- mapping cone ---------------------------------------------------------------

MappingCone mapping_cone(const CrossedSquare& s) {
  require_valid_square(s);
  // N acts on M via nu
  std::vector<int> nm(static_cast<size_t>(s.N->n) * s.M->n);
  for (int n = 0; n < s.N->n; ++n)
    for (int m = 0; m < s.M->n; ++m) nm[n * s.M->n + m] = s.n_on_m(n, m);
  SemidirectProduct mn = semidirect(make_action_flat(s.N, s.M, std::move(nm)));

  const GroupPtr MN = mn.result;
  std::vector<int> d2(s.L->n), d1(MN->n);
  for (int l = 0; l < s.L->n; ++l)
    d2[l] = mn.pair(s.M->inv(s.lam.map[l]), s.lamp.map[l]);
  for (int x = 0; x < MN->n; ++x) {
    auto [m, n] = mn.unpair(x);
    d1[x] = s.P->mul(s.mu.map[m], s.nu.map[n]);
  }
  // P acts on M x| N componentwise
  std::vector<int> act(static_cast<size_t>(s.P->n) * MN->n);
  for (int p = 0; p < s.P->n; ++p)
    for (int x = 0; x < MN->n; ++x) {
      auto [m, n] = mn.unpair(x);
      act[p * MN->n + x] = mn.pair(s.actM.apply(p, m), s.actN.apply(p, n));
    }
  std::vector<int> lift(static_cast<size_t>(MN->n) * MN->n);
  for (int x = 0; x < MN->n; ++x) {
    auto [m, n] = mn.unpair(x);
    for (int y = 0; y < MN->n; ++y) {
      auto [c, a] = mn.unpair(y);
      (void)c;
      lift[x * MN->n + y] = s.hmap(m, s.N->conj(n, a));
    }
  }
  MappingCone out;
  out.tcm = TwoCrossedModule{s.L,
                             MN,
                             s.P,
                             make_hom(s.L, MN, std::move(d2)),
                             make_hom(MN, s.P, std::move(d1)),
                             make_action_flat(s.P, MN, std::move(act)),
                             s.actL,
                             std::move(lift)};
  out.mn = std::move(mn);
  return out;
}

TwoCrossedModule two_crossed_from_square(const CrossedSquare& s) { return mapping_cone(s).tcm; }

int mapping_cone_peiffer_commutator(const CrossedSquare& s, const MappingCone& mc, int x, int y) {
  auto [m, n] = mc.mn.unpair(x);
  auto [c, a] = mc.mn.unpair(y);
  (void)c;
  // (^{nu(n a n^-1)} m . m^-1, ^{mu m}(n a n^-1) . (n a^-1 n^-1))
  const Group& M = *s.M;
  const Group& N = *s.N;
  const int nan = N.conj(n, a);
  const int mpart = M.mul(s.n_on_m(nan, m), M.inv(m));
  const int npart = N.mul(s.m_on_n(m, nan), N.conj(n, N.inv(a)));
  return mc.mn.pair(mpart, npart);
}

// -- codiagonal of a square -------------------------------------------------------

namespace {

struct FastCodec {
  int L, N, M, P;
  int g1(int n, int m, int p) const { return (n * M + m) * P + p; }
  std::array<int, 3> g1t(int i) const { return {i / (M * P), (i / P) % M, i % P}; }
  long long g2_count() const { return 1LL * L * N * M * N * M * P; }
  int g2(int l, int n, int m1, int n1, int m2, int p) const {
    return ((((l * N + n) * M + m1) * N + n1) * M + m2) * P + p;
  }
  std::array<int, 6> g2t(int i) const {
    const int p = i % P;
    i /= P;
    const int m2 = i % M;
    i /= M;
    const int n1 = i % N;
    i /= N;
    const int m1 = i % M;
    i /= M;
    const int n = i % N;
    i /= N;
    return {i, n, m1, n1, m2, p};
  }
};

}  // namespace

int SquareCodiagonal::g1_index(int n, int m, int p) const {
  FastCodec c{squareL->n, squareN->n, squareM->n, squareP->n};
  return c.g1(n, m, p);
}
std::array<int, 3> SquareCodiagonal::g1_tuple(int idx) const {
  FastCodec c{squareL->n, squareN->n, squareM->n, squareP->n};
  return c.g1t(idx);
}
int SquareCodiagonal::g2_index(int l, int n, int m1, int n1, int m2, int p) const {
  FastCodec c{squareL->n, squareN->n, squareM->n, squareP->n};
  return c.g2(l, n, m1, n1, m2, p);
}
std::array<int, 6> SquareCodiagonal::g2_tuple(int idx) const {
  FastCodec c{squareL->n, squareN->n, squareM->n, squareP->n};
  return c.g2t(idx);
}

SquareCodiagonal codiagonal_of_square(const CrossedSquare& sq) {
  SquareCodiagonal out;
  out.squareL = sq.L;
  out.squareM = sq.M;
  out.squareN = sq.N;
  out.squareP = sq.P;
  out.cat2 = cat2_from_crossed_square(sq);
  out.nerve2 = binerve(out.cat2.cat2);
  out.nabla = codiagonal(out.nerve2);

  const Group& L = *sq.L;
  const Group& M = *sq.M;
  const Group& N = *sq.N;
  const Group& P = *sq.P;
  const auto& lam = sq.lam.map;
  const auto& lamp = sq.lamp.map;
  const auto& mu = sq.mu.map;
  const auto& nu = sq.nu.map;
  FastCodec cod{L.n, N.n, M.n, P.n};

  // explicit level 1: N x| (M x| P)
  const int n1count = N.n * M.n * P.n;
  std::vector<int> t1(static_cast<size_t>(n1count) * n1count);
  for (int n = 0; n < N.n; ++n)
    for (int m = 0; m < M.n; ++m)
      for (int p = 0; p < P.n; ++p) {
        const int a = cod.g1(n, m, p);
        const int q = P.mul(mu[m], p);
        for (int n2 = 0; n2 < N.n; ++n2)
          for (int m2 = 0; m2 < M.n; ++m2)
            for (int p2 = 0; p2 < P.n; ++p2)
              t1[static_cast<size_t>(a) * n1count + cod.g1(n2, m2, p2)] =
                  cod.g1(N.mul(n, sq.actN.apply(q, n2)), M.mul(m, sq.actM.apply(p, m2)),
                         P.mul(p, p2));
      }
  GroupPtr G1e = internal_group(n1count, std::move(t1), "G1");

  // explicit level 2: (L x| (N x| M)) x| (N x| (M x| P))
  const long long n2ll = cod.g2_count();
  require(n2ll <= 10000, "explicit level-2 group too large to tabulate");
  const int n2count = static_cast<int>(n2ll);
  std::vector<int> t2(static_cast<size_t>(n2count) * n2count);
  for (int x = 0; x < n2count; ++x) {
    const auto [l, n, m1, nn1, m2, p] = cod.g2t(x);
    const int q = P.mul(mu[m2], p);
    const int m1q = P.mul(mu[m1], q);
    const int tw = P.mul(nu[N.mul(lamp[l], n)], m1q);
    for (int y = 0; y < n2count; ++y) {
      const auto [l2, nB, m1B, n1B, m2B, pB] = cod.g2t(y);
      const int lr = L.mul(
          l, sq.actL.apply(nu[n], L.mul(sq.actL.apply(m1q, l2), sq.hmap(m1, sq.actN.apply(q, nB)))));
      t2[static_cast<size_t>(x) * n2count + y] =
          cod.g2(lr, N.mul(n, sq.actN.apply(q, nB)), M.mul(m1, sq.actM.apply(q, m1B)),
                 N.mul(nn1, sq.actN.apply(tw, n1B)), M.mul(m2, sq.actM.apply(p, m2B)),
                 P.mul(p, pB));
    }
  }
  GroupPtr G2e = internal_group(n2count, std::move(t2), "G2");

  // explicit faces and degeneracies
  out.fast.depth = 2;
  out.fast.levels = {sq.P, G1e, G2e};
  out.fast.face.resize(3);
  out.fast.degen.resize(3);
  {
    std::vector<int> d0(n1count), d1(n1count);
    for (int i = 0; i < n1count; ++i) {
      const auto [n, m, p] = cod.g1t(i);
      d0[i] = P.mul(nu[n], P.mul(mu[m], p));
      d1[i] = p;
    }
    out.fast.face[1].push_back(make_hom(G1e, sq.P, std::move(d0)));
    out.fast.face[1].push_back(make_hom(G1e, sq.P, std::move(d1)));
    std::vector<int> s0(P.n);
    for (int p = 0; p < P.n; ++p) s0[p] = cod.g1(0, 0, p);
    out.fast.degen[0].push_back(make_hom(sq.P, G1e, std::move(s0)));
  }
  {
    std::vector<int> d0(n2count), d1(n2count), d2(n2count);
    for (int i = 0; i < n2count; ++i) {
      const auto [l, n, m1, n1, m2, p] = cod.g2t(i);
      d0[i] = cod.g1(n1, M.mul(lam[l], sq.actM.apply(nu[n], m1)), P.mul(nu[n], P.mul(mu[m2], p)));
      d1[i] = cod.g1(N.mul(n1, N.mul(lamp[l], n)), M.mul(m1, m2), p);
      d2[i] = cod.g1(n, m2, p);
    }
    out.fast.face[2].push_back(make_hom(G2e, G1e, std::move(d0)));
    out.fast.face[2].push_back(make_hom(G2e, G1e, std::move(d1)));
    out.fast.face[2].push_back(make_hom(G2e, G1e, std::move(d2)));
    std::vector<int> s0(n1count), s1(n1count);
    for (int i = 0; i < n1count; ++i) {
      const auto [n, m, p] = cod.g1t(i);
      s0[i] = cod.g2(0, 0, m, n, 0, p);
      s1[i] = cod.g2(0, n, 0, 0, m, p);
    }
    out.fast.degen[1].push_back(make_hom(G1e, G2e, std::move(s0)));
    out.fast.degen[1].push_back(make_hom(G1e, G2e, std::move(s1)));
  }

  // identifications between the generic and explicit presentations
  const auto split = [&](int g) { return out.cat2.split(g); };
  out.ident.resize(3);
  {
    const auto& c00 = out.nerve2.cell(0, 0);
    out.ident[0].resize(c00.group->n);
    for (int x = 0; x < c00.group->n; ++x) {
      const auto [l, n, m, p] = split(c00.elems[x][0]);
      require(l == 0 && n == 0 && m == 0, "degree-0 cell entry outside the base corner");
      out.ident[0][x] = p;
    }
  }
  {
    const auto& t1n = out.nabla.tuples[1];
    const auto& c10 = out.nerve2.cell(1, 0);
    const auto& c01 = out.nerve2.cell(0, 1);
    out.ident[1].resize(t1n.size());
    for (size_t x = 0; x < t1n.size(); ++x) {
      const auto [l0, n0, m, p] = split(c10.elems[t1n[x][0]][0]);
      require(l0 == 0 && n0 == 0, "(1,0) cell entry outside M x| P");
      const auto [l1, n, m1, p1] = split(c01.elems[t1n[x][1]][0]);
      require(l1 == 0 && m1 == 0, "(0,1) cell entry outside N x| P");
      require(p1 == P.mul(mu[m], p), "matching condition broken in level-1 tuple");
      out.ident[1][x] = cod.g1(n, m, p);
    }
  }
  {
    const auto& t2n = out.nabla.tuples[2];
    const auto& c20 = out.nerve2.cell(2, 0);
    const auto& c11 = out.nerve2.cell(1, 1);
    const auto& c02 = out.nerve2.cell(0, 2);
    out.ident[2].resize(t2n.size());
    for (size_t x = 0; x < t2n.size(); ++x) {
      const auto& e20 = c20.elems[t2n[x][0]];
      const auto [za, zb, m2, p] = split(e20[0]);
      require(za == 0 && zb == 0, "(2,0) first arrow outside M x| P");
      const auto [zc, zd, m1a, pb] = split(e20[1]);
      require(zc == 0 && zd == 0 && pb == P.mul(mu[m2], p), "(2,0) column not composable");
      const auto [l, n, m1, q] = split(c11.elems[t2n[x][1]][0]);
      require(m1 == m1a && q == P.mul(mu[m2], p), "level-2 matching broken at the square cell");
      const auto& e02 = c02.elems[t2n[x][2]];
      const auto [ze, n2, zf, pA] = split(e02[0]);
      require(ze == 0 && zf == 0 && n2 == N.mul(lamp[l], n) && pA == P.mul(mu[m1], q),
              "level-2 matching broken at the (0,2) cell");
      const auto [zg, n1, zh, pB] = split(e02[1]);
      require(zg == 0 && zh == 0 && pB == P.mul(nu[n2], pA), "(0,2) row not composable");
      out.ident[2][x] = cod.g2(l, n, m1, n1, m2, p);
    }
  }

  // cross-validation: the identifications are isomorphisms commuting with
  // every face and degeneracy
  for (int lvl = 0; lvl <= 2; ++lvl) {
    const auto& id = out.ident[lvl];
    require(static_cast<int>(id.size()) == out.fast.levels[lvl]->n,
            "presentation sizes differ at level " + std::to_string(lvl));
    std::vector<char> seen(id.size(), 0);
    for (int v : id) {
      require(!seen[v], "identification is not injective");
      seen[v] = 1;
    }
    const Group& A = *out.nabla.g.levels[lvl];
    const Group& B = *out.fast.levels[lvl];
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y)
        require(id[A.mul(x, y)] == B.mul(id[x], id[y]),
                "identification is not a homomorphism at level " + std::to_string(lvl));
  }
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < out.nabla.g.levels[n]->n; ++x)
        require(out.ident[n - 1][out.nabla.g.d(n, i).map[x]] ==
                    out.fast.d(n, i).map[out.ident[n][x]],
                "face maps disagree between presentations");
  for (int n = 0; n < 2; ++n)
    for (int i = 0; i <= n; ++i)
      for (int x = 0; x < out.nabla.g.levels[n]->n; ++x)
        require(out.ident[n + 1][out.nabla.g.s(n, i).map[x]] ==
                    out.fast.s(n, i).map[out.ident[n][x]],
                "degeneracy maps disagree between presentations");
  return out;
}

TwoCrossedModule two_crossed_from_square_via_codiagonal(const CrossedSquare& sq) {
  SquareCodiagonal sc = codiagonal_of_square(sq);
  MappingCone cone = mapping_cone(sq);  // target indexing: groups L, M x| N, P
  const TruncatedSimplicialGroup& g = sc.nabla.g;
  const Group& L = *sq.L;
  const Group& M = *sq.M;
  const Group& N = *sq.N;
  const Group& P = *sq.P;
  const GroupPtr MN = cone.mn.result;

  // NG1 = ker d0 at level 1, identified with M x| N by (n,m,p) -> (m^-1,n^-1)
  const Subgroup ng1 = kernel(g.d(1, 0));
  require(ng1.size() == MN->n, "level-1 Moore term has unexpected order");
  std::vector<int> fM(g.levels[1]->n, -1);
  std::vector<int> fM_inv(MN->n, -1);
  for (int x : ng1.elements) {
    const auto [n, m, p] = sc.g1_tuple(sc.ident[1][x]);
    require(p == P.inv(P.mul(sq.nu.map[n], sq.mu.map[m])), "kernel tuple has unexpected base");
    const int v = cone.mn.pair(M.inv(m), N.inv(n));
    fM[x] = v;
    require(fM_inv[v] == -1, "level-1 identification not injective");
    fM_inv[v] = x;
  }

  // ker d0 cap ker d1 at level 2, identified with L by the l coordinate
  Subgroup ktop = intersect(kernel(g.d(2, 0)), kernel(g.d(2, 1)));
  require(ktop.size() == L.n, "level-2 kernel intersection has unexpected order");
  std::vector<int> fL(g.levels[2]->n, -1);
  std::vector<int> fL_inv(L.n, -1);
  for (int z : ktop.elements) {
    const auto [l, n, m1, n1, m2, p] = sc.g2_tuple(sc.ident[2][z]);
    require(n == sq.lamp.map[L.inv(l)] && m1 == sq.lam.map[L.inv(l)] && n1 == 0 &&
                m2 == sq.lam.map[l] && p == 0,
            "level-2 kernel element has unexpected coordinates");
    fL[z] = l;
    require(fL_inv[l] == -1, "level-2 identification not injective");
    fL_inv[l] = z;
  }

  // transport the Moore-complex structure through the identifications
  std::vector<int> d2map(L.n), d1map(MN->n);
  for (int l = 0; l < L.n; ++l) d2map[l] = fM[g.d(2, 2).map[fL_inv[l]]];
  for (int v = 0; v < MN->n; ++v) d1map[v] = sc.ident[0][g.d(1, 1).map[fM_inv[v]]];

  const Hom& s00 = g.s(0, 0);
  const Hom& s10 = g.s(1, 0);
  const Hom& s11 = g.s(1, 1);
  std::vector<int> actMmap(static_cast<size_t>(P.n) * MN->n);
  std::vector<int> actLmap(static_cast<size_t>(P.n) * L.n);
  std::vector<int> p_to_nabla0(P.n, -1);
  for (int x = 0; x < g.levels[0]->n; ++x) p_to_nabla0[sc.ident[0][x]] = x;
  for (int p = 0; p < P.n; ++p) {
    const int lift1 = s00.map[p_to_nabla0[p]];
    for (int v = 0; v < MN->n; ++v) {
      const int y = g.levels[1]->conj(lift1, fM_inv[v]);
      require(fM[y] >= 0, "conjugation leaves the level-1 Moore term");
      actMmap[p * MN->n + v] = fM[y];
    }
    const int lift2 = s10.map[lift1];
    for (int l = 0; l < L.n; ++l) {
      const int z = g.levels[2]->conj(lift2, fL_inv[l]);
      require(fL[z] >= 0, "conjugation leaves the level-2 kernel");
      actLmap[p * L.n + l] = fL[z];
    }
  }

  std::vector<int> lift(static_cast<size_t>(MN->n) * MN->n);
  const Group& G2 = *g.levels[2];
  for (int xv = 0; xv < MN->n; ++xv) {
    const int x = fM_inv[xv];
    const int s0x = s10.map[x], s1x = s11.map[x];
    for (int yv = 0; yv < MN->n; ++yv) {
      const int y = fM_inv[yv];
      const int s1y = s11.map[y];
      int w = G2.mul(s0x, s1y);
      w = G2.mul(w, G2.inv(s0x));
      w = G2.mul(w, s1x);
      w = G2.mul(w, G2.inv(s1y));
      w = G2.mul(w, G2.inv(s1x));
      require(fL[w] >= 0, "degeneracy lifting left the level-2 kernel");
      lift[xv * MN->n + yv] = fL[w];
    }
  }

  return TwoCrossedModule{sq.L,
                          MN,
                          sq.P,
                          make_hom(sq.L, MN, std::move(d2map)),
                          make_hom(MN, sq.P, std::move(d1map)),
                          make_action_flat(sq.P, MN, std::move(actMmap)),
                          make_action_flat(sq.P, sq.L, std::move(actLmap)),
                          std::move(lift)};
}

// -- crossed square from a simplicial group ----------------------------------------

SimplicialSquare square_from_simplicial(const TruncatedSimplicialGroup& g) {
  if (g.depth < 3)
    throw error(errc::depth_too_shallow, "crossed square extraction needs depth 3");
  const GroupPtr G1 = g.level(1);
  const GroupPtr G2 = g.level(2);

  SimplicialSquare out;
  out.cornerM = materialize(kernel(g.d(1, 0)), "NG1");
  out.cornerN = materialize(kernel(g.d(1, 1)), "kerd1");
  out.ng2 = materialize(intersect(kernel(g.d(2, 0)), kernel(g.d(2, 1))), "NG2");

  Subgroup ng3 = intersect(kernel(g.d(3, 0)), kernel(g.d(3, 1)));
  ng3 = intersect(ng3, kernel(g.d(3, 2)));
  std::vector<int> bd;
  for (int z : ng3.elements) {
    const int v = out.ng2.from_parent[g.d(3, 3).map[z]];
    require(v >= 0, "d3 image leaves NG2");
    bd.push_back(v);
  }
  out.top = quotient(out.ng2.group, subgroup_generated(out.ng2.group, bd));
  const GroupPtr L = out.top.group;

  auto project = [&](int parent2) {
    const int v = out.ng2.from_parent[parent2];
    require(v >= 0, "element outside NG2");
    return out.top.projection.map[v];
  };

  // lambda and lambda' are both induced by d2, landing in the two kernels
  std::vector<int> lam(L->n), lamp(L->n);
  for (int li = 0; li < L->n; ++li) {
    int expected_m = -1, expected_n = -1;
    for (int zi = 0; zi < out.ng2.group->n; ++zi) {
      if (out.top.projection.map[zi] != li) continue;
      const int img = g.d(2, 2).map[out.ng2.to_parent[zi]];
      const int vm = out.cornerM.from_parent[img];
      const int vn = out.cornerN.from_parent[img];
      require(vm >= 0 && vn >= 0, "d2 image misses a corner");
      if (expected_m == -1) {
        expected_m = vm;
        expected_n = vn;
      } else {
        require(expected_m == vm && expected_n == vn, "boundary not constant on cosets");
      }
    }
    lam[li] = expected_m;
    lamp[li] = expected_n;
  }

  // P = G1 acts by conjugation; on L through the s1 lift
  auto conj_corner = [&](const MaterializedSubgroup& corner) {
    std::vector<int> flat(static_cast<size_t>(G1->n) * corner.group->n);
    for (int p = 0; p < G1->n; ++p)
      for (int x = 0; x < corner.group->n; ++x) {
        const int v = corner.from_parent[G1->conj(p, corner.to_parent[x])];
        require(v >= 0, "corner not normal in G1");
        flat[p * corner.group->n + x] = v;
      }
    return make_action_flat(G1, corner.group, std::move(flat));
  };
  std::vector<int> actl(static_cast<size_t>(G1->n) * L->n, -1);
  for (int p = 0; p < G1->n; ++p) {
    const int lifted = g.s(1, 1).map[p];
    for (int zi = 0; zi < out.ng2.group->n; ++zi) {
      const int w = G2->conj(lifted, out.ng2.to_parent[zi]);
      const int proj = project(w);
      const int li = out.top.projection.map[zi];
      int& slot = actl[p * L->n + li];
      require(slot == -1 || slot == proj, "L action not constant on cosets");
      slot = proj;
    }
  }

  std::vector<int> h(static_cast<size_t>(out.cornerM.group->n) * out.cornerN.group->n);
  const Hom& s0 = g.s(0, 0);
  const Hom& s1 = g.s(1, 1);
  const Hom& s1low = g.s(1, 0);
  for (int mi = 0; mi < out.cornerM.group->n; ++mi) {
    const int x = out.cornerM.to_parent[mi];
    for (int ni = 0; ni < out.cornerN.group->n; ++ni) {
      const int nbar = out.cornerN.to_parent[ni];
      // transport ker d1 back to NG1: y = nbar . s0(d0 nbar)^-1
      const int y = G1->mul(nbar, G1->inv(s0.map[g.d(1, 0).map[nbar]]));
      const int a = s1.map[x];
      const int b = G2->mul(s1.map[y], G2->inv(s1low.map[y]));
      h[mi * out.cornerN.group->n + ni] = project(G2->comm(a, b));
    }
  }

  out.square = CrossedSquare{L,
                             out.cornerM.group,
                             out.cornerN.group,
                             G1,
                             make_hom(L, out.cornerM.group, std::move(lam)),
                             make_hom(L, out.cornerN.group, std::move(lamp)),
                             out.cornerM.inclusion,
                             out.cornerN.inclusion,
                             make_action_flat(G1, L, std::move(actl)),
                             conj_corner(out.cornerM),
                             conj_corner(out.cornerN),
                             std::move(h)};
  return out;
}

// -- 2-crossed module from a simplicial group ---------------------------------------

SimplicialTwoCrossed two_crossed_from_simplicial_full(const TruncatedSimplicialGroup& g,
                                                      bool full_boundary) {
  if (g.depth < 3)
    throw error(errc::depth_too_shallow, "2-crossed module extraction needs depth 3");
  const GroupPtr G1 = g.level(1);
  const GroupPtr G2 = g.level(2);

  SimplicialTwoCrossed out;
  out.ng1 = materialize(kernel(g.d(1, 0)), "NG1");
  out.ng2 = materialize(intersect(kernel(g.d(2, 0)), kernel(g.d(2, 1))), "NG2");

  Subgroup ng3 = intersect(kernel(g.d(3, 0)), kernel(g.d(3, 1)));
  ng3 = intersect(ng3, kernel(g.d(3, 2)));
  const Subgroup d3 = degenerate_subgroup(g, 3);
  std::vector<int> bd;
  for (int z : ng3.elements)
    if (full_boundary || d3.contains(z)) {
      const int v = out.ng2.from_parent[g.d(3, 3).map[z]];
      require(v >= 0, "d3 image leaves NG2");
      bd.push_back(v);
    }
  out.top = quotient(out.ng2.group, subgroup_generated(out.ng2.group, bd));

  const GroupPtr L = out.top.group;
  const GroupPtr M = out.ng1.group;
  const GroupPtr N = g.level(0);

  auto project = [&](int parent2) {
    const int v = out.ng2.from_parent[parent2];
    require(v >= 0, "element outside NG2");
    return out.top.projection.map[v];
  };

  std::vector<int> d2map(L->n, -1);
  for (int zi = 0; zi < out.ng2.group->n; ++zi) {
    const int v = out.ng1.from_parent[g.d(2, 2).map[out.ng2.to_parent[zi]]];
    require(v >= 0, "Moore boundary leaves NG1");
    int& slot = d2map[out.top.projection.map[zi]];
    require(slot == -1 || slot == v, "boundary not constant on cosets");
    slot = v;
  }
  std::vector<int> d1map(M->n);
  for (int mi = 0; mi < M->n; ++mi) d1map[mi] = g.d(1, 1).map[out.ng1.to_parent[mi]];

  const Hom& s00 = g.s(0, 0);
  const Hom& s10 = g.s(1, 0);
  const Hom& s11 = g.s(1, 1);
  std::vector<int> actm(static_cast<size_t>(N->n) * M->n);
  std::vector<int> actl(static_cast<size_t>(N->n) * L->n, -1);
  for (int n = 0; n < N->n; ++n) {
    const int lift1 = s00.map[n];
    for (int mi = 0; mi < M->n; ++mi) {
      const int v = out.ng1.from_parent[G1->conj(lift1, out.ng1.to_parent[mi])];
      require(v >= 0, "conjugation leaves NG1");
      actm[n * M->n + mi] = v;
    }
    const int lift2 = s10.map[lift1];
    for (int zi = 0; zi < out.ng2.group->n; ++zi) {
      const int proj = project(G2->conj(lift2, out.ng2.to_parent[zi]));
      int& slot = actl[n * L->n + out.top.projection.map[zi]];
      require(slot == -1 || slot == proj, "L action not constant on cosets");
      slot = proj;
    }
  }

  std::vector<int> lift(static_cast<size_t>(M->n) * M->n);
  for (int xi = 0; xi < M->n; ++xi) {
    const int x = out.ng1.to_parent[xi];
    const int s0x = s10.map[x], s1x = s11.map[x];
    for (int yi = 0; yi < M->n; ++yi) {
      const int s1y = s11.map[out.ng1.to_parent[yi]];
      int w = G2->mul(s0x, s1y);
      w = G2->mul(w, G2->inv(s0x));
      w = G2->mul(w, s1x);
      w = G2->mul(w, G2->inv(s1y));
      w = G2->mul(w, G2->inv(s1x));
      lift[xi * M->n + yi] = project(w);
    }
  }

  out.tcm = TwoCrossedModule{L,
                             M,
                             N,
                             make_hom(L, M, std::move(d2map)),
                             make_hom(M, N, std::move(d1map)),
                             make_action_flat(N, M, std::move(actm)),
                             make_action_flat(N, L, std::move(actl)),
                             std::move(lift)};
  return out;
}

TwoCrossedModule two_crossed_from_simplicial(const TruncatedSimplicialGroup& g) {
  return two_crossed_from_simplicial_full(g).tcm;
}

// -- quadratic modules ---------------------------------------------------------------

Subgroup composite_lifting_closure(const TwoCrossedModule& t) {
  const PreCrossedModule pcm{t.d1, t.actM};
  std::vector<int> gens;
  for (int x = 0; x < t.M->n; ++x)
    for (int y = 0; y < t.M->n; ++y) {
      const int pxy = peiffer_commutator(pcm, x, y);
      for (int z = 0; z < t.M->n; ++z) {
        gens.push_back(t.lift(pxy, z));
        gens.push_back(t.lift(z, pxy));
      }
    }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return normal_closure(t.L, gens);
}

TwoCrossedQuadratic quadratic_from_two_crossed_full(const TwoCrossedModule& t) {
  const PreCrossedModule pcm{t.d1, t.actM};
  auto [p2, p3] = peiffer_subgroups(pcm);
  (void)p2;
  TwoCrossedQuadratic out;
  out.m_quot = quotient(t.M, p3);
  out.l_quot = quotient(t.L, composite_lifting_closure(t));
  const GroupPtr M = out.m_quot.group;
  const GroupPtr L = out.l_quot.group;
  const auto& qm = out.m_quot.projection.map;
  const auto& ql = out.l_quot.projection.map;

  std::vector<int> bnd(M->n, -1);
  for (int x = 0; x < t.M->n; ++x) {
    int& slot = bnd[qm[x]];
    require(slot == -1 || slot == t.d1.map[x], "d1 not constant on P3 cosets");
    slot = t.d1.map[x];
  }
  std::vector<int> del(L->n, -1);
  for (int l = 0; l < t.L->n; ++l) {
    int& slot = del[ql[l]];
    const int v = qm[t.d2.map[l]];
    require(slot == -1 || slot == v, "d2 does not descend to the quotients");
    slot = v;
  }
  std::vector<int> actm(static_cast<size_t>(t.N->n) * M->n, -1);
  std::vector<int> actl(static_cast<size_t>(t.N->n) * L->n, -1);
  for (int n = 0; n < t.N->n; ++n) {
    for (int x = 0; x < t.M->n; ++x) {
      int& slot = actm[n * M->n + qm[x]];
      const int v = qm[t.actM.apply(n, x)];
      require(slot == -1 || slot == v, "N-action does not descend to M");
      slot = v;
    }
    for (int l = 0; l < t.L->n; ++l) {
      int& slot = actl[n * L->n + ql[l]];
      const int v = ql[t.actL.apply(n, l)];
      require(slot == -1 || slot == v, "N-action does not descend to L");
      slot = v;
    }
  }
  Hom boundary = make_hom(M, t.N, std::move(bnd));
  Action actMq = make_action_flat(t.N, M, std::move(actm));

  // C = (M^cr)^ab: quotient by the Peiffer subgroup and all commutators
  const PreCrossedModule pcm_q{boundary, actMq};
  auto [q2sub, q3sub] = peiffer_subgroups(pcm_q);
  (void)q3sub;
  std::vector<int> cgens = q2sub.elements;
  {
    Subgroup comm = commutator_subgroup(M);
    cgens.insert(cgens.end(), comm.elements.begin(), comm.elements.end());
  }
  QuotientResult cq = quotient(M, normal_closure(M, cgens));
  const GroupPtr C = cq.group;

  // omega(q x, q y) = ql(lift(x, y)): verified well-defined on classes
  std::vector<int> omega(static_cast<size_t>(C->n) * C->n, -1);
  for (int x = 0; x < t.M->n; ++x) {
    const int cx = cq.projection.map[qm[x]];
    for (int y = 0; y < t.M->n; ++y) {
      const int cy = cq.projection.map[qm[y]];
      const int v = ql[t.lift(x, y)];
      int& slot = omega[cx * C->n + cy];
      if (slot != -1 && slot != v)
        throw error(errc::omega_not_well_defined,
                    "lifting is not constant on tensor classes", {x, y});
      slot = v;
    }
  }

  out.qm = QuadraticModule{L,
                           M,
                           t.N,
                           make_hom(L, M, std::move(del)),
                           std::move(boundary),
                           std::move(actMq),
                           make_action_flat(t.N, L, std::move(actl)),
                           C,
                           cq.projection,
                           std::move(omega)};
  return out;
}

QuadraticModule quadratic_from_two_crossed(const TwoCrossedModule& t) {
  return quadratic_from_two_crossed_full(t).qm;
}

QuadraticModule quadratic_from_simplicial(const TruncatedSimplicialGroup& g) {
  if (g.depth < 3)
    throw error(errc::depth_too_shallow, "quadratic extraction needs depth 3");
  const Subgroup d3sub = degenerate_subgroup(g, 3);
  if (d3sub.size() != g.level(3)->n)
    throw error(errc::hypothesis_g3_not_degenerate,
                "level 3 is not generated by degenerate elements");
  // top term NG2 / d3(NG3); since G3 = D3 this coincides with the quotient
  // by d3(NG3 cap D3) used on the 2-crossed route
  return quadratic_from_two_crossed(two_crossed_from_simplicial_full(g, true).tcm);
}

QuadraticModule quadratic_from_square(const CrossedSquare& s) {
  return quadratic_from_two_crossed(two_crossed_from_square(s));
}

Subgroup quadratic_square_lifting_closure(const CrossedSquare& s) {
  const Group& M = *s.M;
  const Group& N = *s.N;
  std::vector<int> gens;
  // h(^{nu(n a n^-1)} m . m^-1, w n' w^-1) with w = ^{mu m}(n a n^-1).(n a^-1 n^-1)
  for (int m = 0; m < M.n; ++m)
    for (int n = 0; n < N.n; ++n)
      for (int a = 0; a < N.n; ++a) {
        const int nan = N.conj(n, a);
        const int first = M.mul(s.n_on_m(nan, m), M.inv(m));
        const int w = N.mul(s.m_on_n(m, nan), N.conj(n, N.inv(a)));
        for (int n2 = 0; n2 < N.n; ++n2) gens.push_back(s.hmap(first, N.conj(w, n2)));
      }
  // h(m, ^{nu n}(^{mu c}(a n' a^-1).(a n'^-1 a^-1)))
  for (int m = 0; m < M.n; ++m)
    for (int n = 0; n < N.n; ++n)
      for (int c = 0; c < M.n; ++c)
        for (int a = 0; a < N.n; ++a)
          for (int n2 = 0; n2 < N.n; ++n2) {
            const int inner = N.mul(s.m_on_n(c, N.conj(a, n2)), N.conj(a, N.inv(n2)));
            gens.push_back(s.hmap(m, s.n_on_n(n, inner)));
          }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return normal_closure(s.L, gens);
}

}  // namespace xsq
