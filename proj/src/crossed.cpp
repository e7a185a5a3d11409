#include "xsq/crossed.hpp"

#include <algorithm>

namespace xsq {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw error(errc::bad_structure, what);
}

void check_structure(const PreCrossedModule& p) {
  require(same_group(p.act.actor, p.N()) && same_group(p.act.target, p.M()),
          "pre-crossed module action endpoints do not match the boundary");
}

}  // namespace

Report check_precrossed(const PreCrossedModule& p) {
  check_structure(p);
  Report r;
  const Group& M = *p.M();
  const Group& N = *p.N();
  const auto& d = p.boundary.map;
  for (int n = 0; n < N.n; ++n)
    for (int m = 0; m < M.n; ++m)
      if (d[p.act.apply(n, m)] != N.conj(n, d[m])) {
        r.add("equivariance", {n, m});
      }
  return r;
}

Report check_crossed_module(const CrossedModule& c) {
  Report r = check_precrossed(c.pcm);
  const Group& M = *c.M();
  const auto& d = c.pcm.boundary.map;
  for (int m = 0; m < M.n; ++m)
    for (int m2 = 0; m2 < M.n; ++m2)
      if (c.pcm.act.apply(d[m], m2) != M.conj(m, m2)) r.add("peiffer", {m, m2});
  return r;
}

int peiffer_commutator(const PreCrossedModule& p, int x, int y) {
  const Group& M = *p.M();
  const int ay = p.act.apply(p.boundary.map[x], y);
  return M.mul(M.mul(ay, x), M.mul(M.inv(y), M.inv(x)));
}

std::pair<Subgroup, Subgroup> peiffer_subgroups(const PreCrossedModule& p) {
  const GroupPtr& M = p.M();
  std::vector<int> gens2;
  for (int x = 0; x < M->n; ++x)
    for (int y = 0; y < M->n; ++y) gens2.push_back(peiffer_commutator(p, x, y));
  std::sort(gens2.begin(), gens2.end());
  gens2.erase(std::unique(gens2.begin(), gens2.end()), gens2.end());
  Subgroup p2 = normal_closure(M, gens2);

  std::vector<int> gens3;
  for (int x = 0; x < M->n; ++x)
    for (int y = 0; y < M->n; ++y) {
      const int xy = peiffer_commutator(p, x, y);
      for (int z = 0; z < M->n; ++z) {
        gens3.push_back(peiffer_commutator(p, xy, z));
        gens3.push_back(peiffer_commutator(p, z, xy));
      }
    }
  std::sort(gens3.begin(), gens3.end());
  gens3.erase(std::unique(gens3.begin(), gens3.end()), gens3.end());
  Subgroup p3 = normal_closure(M, gens3);
  return {std::move(p2), std::move(p3)};
}

// -- 2-crossed modules --------------------------------------------------------

Report check_two_crossed(const TwoCrossedModule& t) {
  require(same_group(t.d2.dom, t.L) && same_group(t.d2.cod, t.M), "d2 endpoints");
  require(same_group(t.d1.dom, t.M) && same_group(t.d1.cod, t.N), "d1 endpoints");
  require(same_group(t.actM.actor, t.N) && same_group(t.actM.target, t.M), "actM endpoints");
  require(same_group(t.actL.actor, t.N) && same_group(t.actL.target, t.L), "actL endpoints");
  require(static_cast<int>(t.lifting.size()) == t.M->n * t.M->n, "lifting table size");

  Report r;
  const Group& L = *t.L;
  const Group& M = *t.M;
  const Group& N = *t.N;
  const auto& d2 = t.d2.map;
  const auto& d1 = t.d1.map;

  for (int l = 0; l < L.n; ++l)
    if (d1[d2[l]] != 0) r.add("complex", {l});

  for (int n = 0; n < N.n; ++n) {
    for (int l = 0; l < L.n; ++l)
      if (d2[t.actL.apply(n, l)] != t.actM.apply(n, d2[l])) r.add("equivariance-d2", {n, l});
    for (int m = 0; m < M.n; ++m)
      if (d1[t.actM.apply(n, m)] != N.conj(n, d1[m])) r.add("equivariance-d1", {n, m});
  }

  // 2CM1: d2{m,m'} = (^{d1 m}m') m m'^-1 m^-1
  for (int m = 0; m < M.n; ++m)
    for (int m2 = 0; m2 < M.n; ++m2) {
      const int lhs = d2[t.lift(m, m2)];
      const int rhs =
          M.mul(M.mul(t.actM.apply(d1[m], m2), m), M.mul(M.inv(m2), M.inv(m)));
      if (lhs != rhs) r.add("2CM1", {m, m2});
    }

  // 2CM2: {d2 l, d2 l'} = [l', l]
  for (int l = 0; l < L.n; ++l)
    for (int l2 = 0; l2 < L.n; ++l2)
      if (t.lift(d2[l], d2[l2]) != L.comm(l2, l)) r.add("2CM2", {l, l2});

  // 2CM3 (i): {m m', m''} = ^{d1 m}{m', m''} . {m, m' m'' m'^-1}
  for (int m = 0; m < M.n; ++m)
    for (int m2 = 0; m2 < M.n; ++m2)
      for (int m3 = 0; m3 < M.n; ++m3) {
        const int lhs = t.lift(M.mul(m, m2), m3);
        const int rhs = L.mul(t.actL.apply(d1[m], t.lift(m2, m3)),
                              t.lift(m, M.conj(m2, m3)));
        if (lhs != rhs) r.add("2CM3(i)", {m, m2, m3});
      }

  // 2CM3 (ii): {m, m' m''} = {m, m'} . ^{m m' m^-1}{m, m''}  (derived action)
  for (int m = 0; m < M.n; ++m)
    for (int m2 = 0; m2 < M.n; ++m2)
      for (int m3 = 0; m3 < M.n; ++m3) {
        const int lhs = t.lift(m, M.mul(m2, m3));
        const int rhs = L.mul(t.lift(m, m2), t.m_act(M.conj(m, m2), t.lift(m, m3)));
        if (lhs != rhs) r.add("2CM3(ii)", {m, m2, m3});
      }

  // 2CM4 (a): {d2 l, m} = ^{m}l . l^-1
  for (int l = 0; l < L.n; ++l)
    for (int m = 0; m < M.n; ++m)
      if (t.lift(d2[l], m) != L.mul(t.m_act(m, l), L.inv(l))) r.add("2CM4(a)", {l, m});

  // 2CM4 (b): {m, d2 l} = (^{d1 m}l) . ^{m}(l^-1)
  for (int l = 0; l < L.n; ++l)
    for (int m = 0; m < M.n; ++m)
      if (t.lift(m, d2[l]) !=
          L.mul(t.actL.apply(d1[m], l), t.m_act(m, L.inv(l))))
        r.add("2CM4(b)", {l, m});

  // 2CM5: ^n{m, m'} = {^n m, ^n m'}
  for (int n = 0; n < N.n; ++n)
    for (int m = 0; m < M.n; ++m)
      for (int m2 = 0; m2 < M.n; ++m2)
        if (t.actL.apply(n, t.lift(m, m2)) !=
            t.lift(t.actM.apply(n, m), t.actM.apply(n, m2)))
          r.add("2CM5", {n, m, m2});

  // derived action of M on L must itself be an action by automorphisms
  {
    bool action_ok = true;
    for (int m = 0; m < M.n && action_ok; ++m) {
      std::vector<char> seen(L.n, 0);
      for (int l = 0; l < L.n; ++l) {
        const int v = t.m_act(m, l);
        if (seen[v]) {
          r.add("derived-action-bijective", {m, l});
          action_ok = false;
          break;
        }
        seen[v] = 1;
      }
      for (int l = 0; l < L.n && action_ok; ++l)
        for (int l2 = 0; l2 < L.n; ++l2)
          if (t.m_act(m, L.mul(l, l2)) != L.mul(t.m_act(m, l), t.m_act(m, l2))) {
            r.add("derived-action-multiplicative", {m, l, l2});
            action_ok = false;
            break;
          }
    }
    for (int m = 0; m < M.n && action_ok; ++m)
      for (int m2 = 0; m2 < M.n && action_ok; ++m2)
        for (int l = 0; l < L.n && action_ok; ++l)
          if (t.m_act(M.mul(m, m2), l) != t.m_act(m, t.m_act(m2, l))) {
            r.add("derived-action-composition", {m, m2, l});
            action_ok = false;
          }
    if (action_ok) {
      // (L, M, d2) with the derived action is a crossed module
      for (int m = 0; m < M.n; ++m)
        for (int l = 0; l < L.n; ++l)
          if (d2[t.m_act(m, l)] != M.conj(m, d2[l])) r.add("derived-precrossed", {m, l});
      for (int l = 0; l < L.n; ++l)
        for (int l2 = 0; l2 < L.n; ++l2)
          if (t.m_act(d2[l], l2) != L.conj(l, l2)) r.add("derived-peiffer", {l, l2});
    }
  }
  return r;
}

// -- crossed squares ----------------------------------------------------------

namespace {

// action pulled back along a homomorphism into the actor
Action pullback_action(const GroupPtr& actor, const Hom& along, const Action& base) {
  std::vector<int> flat(static_cast<size_t>(actor->n) * base.target->n);
  for (int a = 0; a < actor->n; ++a)
    for (int x = 0; x < base.target->n; ++x)
      flat[a * base.target->n + x] = base.apply(along.map[a], x);
  return Action{actor, base.target, std::move(flat)};
}

void merge_report(Report& into, const Report& from, const std::string& prefix) {
  for (const auto& v : from.violations) into.add(prefix + " " + v.axiom, v.witness);
}

}  // namespace

Report check_crossed_square(const CrossedSquare& s) {
  require(same_group(s.lam.dom, s.L) && same_group(s.lam.cod, s.M), "lambda endpoints");
  require(same_group(s.lamp.dom, s.L) && same_group(s.lamp.cod, s.N), "lambda' endpoints");
  require(same_group(s.mu.dom, s.M) && same_group(s.mu.cod, s.P), "mu endpoints");
  require(same_group(s.nu.dom, s.N) && same_group(s.nu.cod, s.P), "nu endpoints");
  require(same_group(s.actL.actor, s.P) && same_group(s.actL.target, s.L), "P-action on L");
  require(same_group(s.actM.actor, s.P) && same_group(s.actM.target, s.M), "P-action on M");
  require(same_group(s.actN.actor, s.P) && same_group(s.actN.target, s.N), "P-action on N");
  require(static_cast<int>(s.h.size()) == s.M->n * s.N->n, "h table size");

  Report r;
  const Group& L = *s.L;
  const Group& M = *s.M;
  const Group& N = *s.N;
  const Group& P = *s.P;

  for (int l = 0; l < L.n; ++l)
    if (s.mu.map[s.lam.map[l]] != s.nu.map[s.lamp.map[l]]) r.add("square-commutes", {l});

  merge_report(r, check_crossed_module({{s.mu, s.actM}}), "(i) mu");
  merge_report(r, check_crossed_module({{s.nu, s.actN}}), "(i) nu");
  merge_report(r, check_crossed_module({{compose(s.mu, s.lam), s.actL}}), "(i) mu-lambda");
  merge_report(r, check_crossed_module({{s.lam, pullback_action(s.M, s.mu, s.actL)}}),
               "(i) lambda");
  merge_report(r, check_crossed_module({{s.lamp, pullback_action(s.N, s.nu, s.actL)}}),
               "(i) lambda'");

  for (int p = 0; p < P.n; ++p)
    for (int l = 0; l < L.n; ++l) {
      if (s.lam.map[s.actL.apply(p, l)] != s.actM.apply(p, s.lam.map[l]))
        r.add("(i) lambda-equivariance", {p, l});
      if (s.lamp.map[s.actL.apply(p, l)] != s.actN.apply(p, s.lamp.map[l]))
        r.add("(i) lambda'-equivariance", {p, l});
    }

  // (ii) h(m m', n) = h(^m m', ^m n) h(m, n)
  for (int m = 0; m < M.n; ++m)
    for (int m2 = 0; m2 < M.n; ++m2)
      for (int n = 0; n < N.n; ++n)
        if (s.hmap(M.mul(m, m2), n) !=
            L.mul(s.hmap(s.m_on_m(m, m2), s.m_on_n(m, n)), s.hmap(m, n)))
          r.add("(ii)", {m, m2, n});

  // (iii) h(m, n n') = h(m, n) h(^n m, ^n n')
  for (int m = 0; m < M.n; ++m)
    for (int n = 0; n < N.n; ++n)
      for (int n2 = 0; n2 < N.n; ++n2)
        if (s.hmap(m, N.mul(n, n2)) !=
            L.mul(s.hmap(m, n), s.hmap(s.n_on_m(n, m), s.n_on_n(n, n2))))
          r.add("(iii)", {m, n, n2});

  // (iv) lambda h(m,n) = m ^n(m^-1)
  for (int m = 0; m < M.n; ++m)
    for (int n = 0; n < N.n; ++n)
      if (s.lam.map[s.hmap(m, n)] != M.mul(m, s.n_on_m(n, M.inv(m)))) r.add("(iv)", {m, n});

  // (v) lambda' h(m,n) = (^m n) n^-1
  for (int m = 0; m < M.n; ++m)
    for (int n = 0; n < N.n; ++n)
      if (s.lamp.map[s.hmap(m, n)] != N.mul(s.m_on_n(m, n), N.inv(n))) r.add("(v)", {m, n});

  // (vi) h(lambda l, n) = l ^n(l^-1)
  for (int l = 0; l < L.n; ++l)
    for (int n = 0; n < N.n; ++n)
      if (s.hmap(s.lam.map[l], n) != L.mul(l, s.n_on_l(n, L.inv(l)))) r.add("(vi)", {l, n});

  // (vii) h(m, lambda' l) = (^m l) l^-1
  for (int m = 0; m < M.n; ++m)
    for (int l = 0; l < L.n; ++l)
      if (s.hmap(m, s.lamp.map[l]) != L.mul(s.m_on_l(m, l), L.inv(l))) r.add("(vii)", {m, l});

  // (viii) h(^p m, ^p n) = ^p h(m,n)
  for (int p = 0; p < P.n; ++p)
    for (int m = 0; m < M.n; ++m)
      for (int n = 0; n < N.n; ++n)
        if (s.hmap(s.actM.apply(p, m), s.actN.apply(p, n)) != s.actL.apply(p, s.hmap(m, n)))
          r.add("(viii)", {p, m, n});

  return r;
}

// -- quadratic modules --------------------------------------------------------

Report check_quadratic(const QuadraticModule& q) {
  require(same_group(q.delta.dom, q.L) && same_group(q.delta.cod, q.M), "delta endpoints");
  require(same_group(q.boundary.dom, q.M) && same_group(q.boundary.cod, q.N),
          "boundary endpoints");
  require(same_group(q.actM.actor, q.N) && same_group(q.actM.target, q.M), "actM endpoints");
  require(same_group(q.actL.actor, q.N) && same_group(q.actL.target, q.L), "actL endpoints");
  require(same_group(q.q.dom, q.M) && same_group(q.q.cod, q.C), "q endpoints");
  require(static_cast<int>(q.omega.size()) == q.C->n * q.C->n, "omega table size");

  Report r;
  const Group& L = *q.L;
  const Group& M = *q.M;
  const Group& N = *q.N;
  const Group& C = *q.C;
  const PreCrossedModule pcm{q.boundary, q.actM};

  merge_report(r, check_precrossed(pcm), "QM1 pre-crossed");

  // QM1: nil(2), i.e. length-3 Peiffer commutators vanish
  for (int x = 0; x < M.n; ++x)
    for (int y = 0; y < M.n; ++y) {
      const int xy = peiffer_commutator(pcm, x, y);
      for (int z = 0; z < M.n; ++z) {
        if (peiffer_commutator(pcm, xy, z) != 0) r.add("QM1 nil(2)", {x, y, z});
        if (peiffer_commutator(pcm, z, xy) != 0) r.add("QM1 nil(2)", {z, x, y});
      }
    }

  // QM1: C is the abelianized associated crossed module (M^cr)^ab, i.e.
  // ker q must match the canonical quotient and q must be onto.
  {
    auto [p2, p3] = peiffer_subgroups(pcm);
    (void)p3;
    Subgroup commutators = commutator_subgroup(q.M);
    std::vector<int> gens = p2.elements;
    gens.insert(gens.end(), commutators.elements.begin(), commutators.elements.end());
    Subgroup ker_canonical = normal_closure(q.M, gens);
    Subgroup ker_q = kernel(q.q);
    if (ker_q.elements != ker_canonical.elements) r.add("QM1 C-kernel", {});
    Subgroup im_q = image(q.q);
    if (im_q.size() != C.n) r.add("QM1 C-onto", {});
    if (static_cast<size_t>(C.n) * ker_canonical.elements.size() != static_cast<size_t>(M.n))
      r.add("QM1 C-order", {});
  }

  // QM2: boundary . delta = 1 and delta omega lifts the Peiffer commutator
  for (int l = 0; l < L.n; ++l)
    if (q.boundary.map[q.delta.map[l]] != 0) r.add("QM2 complex", {l});
  for (int x = 0; x < M.n; ++x)
    for (int y = 0; y < M.n; ++y)
      if (q.delta.map[q.om(q.q.map[x], q.q.map[y])] != peiffer_commutator(pcm, x, y))
        r.add("QM2 lift", {x, y});

  // QM3: equivariance of the whole diagram and the action formula
  for (int n = 0; n < N.n; ++n)
    for (int l = 0; l < L.n; ++l)
      if (q.delta.map[q.actL.apply(n, l)] != q.actM.apply(n, q.delta.map[l]))
        r.add("QM3 delta-equivariance", {n, l});
  // induced N-action on C: well-defined and omega-equivariant
  {
    std::vector<int> c_rep(C.n, -1);
    for (int x = 0; x < M.n; ++x)
      if (c_rep[q.q.map[x]] == -1) c_rep[q.q.map[x]] = x;
    bool induced_ok = true;
    for (int n = 0; n < N.n && induced_ok; ++n)
      for (int x = 0; x < M.n; ++x)
        if (q.q.map[q.actM.apply(n, x)] != q.q.map[q.actM.apply(n, c_rep[q.q.map[x]])]) {
          r.add("QM3 C-action", {n, x});
          induced_ok = false;
          break;
        }
    if (induced_ok)
      for (int n = 0; n < N.n; ++n)
        for (int c1 = 0; c1 < C.n; ++c1)
          for (int c2 = 0; c2 < C.n; ++c2) {
            const int nc1 = q.q.map[q.actM.apply(n, c_rep[c1])];
            const int nc2 = q.q.map[q.actM.apply(n, c_rep[c2])];
            if (q.actL.apply(n, q.om(c1, c2)) != q.om(nc1, nc2))
              r.add("QM3 omega-equivariance", {n, c1, c2});
          }
  }
  // ^{d x}a = omega(x (x) delta a . delta a (x) x) a
  for (int x = 0; x < M.n; ++x)
    for (int a = 0; a < L.n; ++a) {
      const int cx = q.q.map[x];
      const int cda = q.q.map[q.delta.map[a]];
      const int rhs = L.mul(L.mul(q.om(cx, cda), q.om(cda, cx)), a);
      if (q.actL.apply(q.boundary.map[x], a) != rhs) r.add("QM3 formula", {x, a});
    }

  // QM4: omega(delta a (x) delta b) = [b, a]
  for (int a = 0; a < L.n; ++a)
    for (int b = 0; b < L.n; ++b)
      if (q.om(q.q.map[q.delta.map[a]], q.q.map[q.delta.map[b]]) != L.comm(b, a))
        r.add("QM4", {a, b});

  // omega is bi-multiplicative, so it factors through C (x) C
  for (int c1 = 0; c1 < C.n; ++c1)
    for (int c2 = 0; c2 < C.n; ++c2)
      for (int c3 = 0; c3 < C.n; ++c3) {
        if (q.om(C.mul(c1, c2), c3) != L.mul(q.om(c1, c3), q.om(c2, c3)))
          r.add("omega-bilinear-left", {c1, c2, c3});
        if (q.om(c1, C.mul(c2, c3)) != L.mul(q.om(c1, c2), q.om(c1, c3)))
          r.add("omega-bilinear-right", {c1, c2, c3});
      }

  return r;
}

// -- cat1 / cat2 ---------------------------------------------------------------

Report check_cat1(const Cat1Group& c) {
  require(same_group(c.s.dom, c.G) && same_group(c.s.cod, c.G), "s endpoints");
  require(same_group(c.t.dom, c.G) && same_group(c.t.cod, c.G), "t endpoints");
  Report r;
  const Group& G = *c.G;
  for (int x = 0; x < G.n; ++x) {
    if (c.s.map[c.t.map[x]] != c.t.map[x]) r.add("st=t", {x});
    if (c.t.map[c.s.map[x]] != c.s.map[x]) r.add("ts=s", {x});
    if (c.s.map[c.s.map[x]] != c.s.map[x]) r.add("s-idempotent", {x});
    if (c.t.map[c.t.map[x]] != c.t.map[x]) r.add("t-idempotent", {x});
  }
  const Subgroup ks = kernel(c.s), kt = kernel(c.t);
  for (int x : ks.elements)
    for (int y : kt.elements)
      if (G.comm(x, y) != 0) r.add("[ker s,ker t]=1", {x, y});
  return r;
}

Report check_cat2(const Cat2Group& c) {
  Report r;
  merge_report(r, check_cat1({c.G, c.s1, c.t1}), "first");
  merge_report(r, check_cat1({c.G, c.s2, c.t2}), "second");
  const Group& G = *c.G;
  for (int x = 0; x < G.n; ++x) {
    if (c.s1.map[c.s2.map[x]] != c.s2.map[c.s1.map[x]]) r.add("s1s2=s2s1", {x});
    if (c.t1.map[c.t2.map[x]] != c.t2.map[c.t1.map[x]]) r.add("t1t2=t2t1", {x});
    if (c.s1.map[c.t2.map[x]] != c.t2.map[c.s1.map[x]]) r.add("s1t2=t2s1", {x});
    if (c.s2.map[c.t1.map[x]] != c.t1.map[c.s2.map[x]]) r.add("s2t1=t1s2", {x});
  }
  return r;
}

Cat1Group cat1_from_crossed_module(const CrossedModule& c) {
  Report r = check_crossed_module(c);
  if (!r.ok())
    throw error(errc::bad_structure, "input is not a crossed module: " + r.violations[0].axiom,
                r.violations[0].witness);
  SemidirectProduct sp = semidirect(c.pcm.act);
  const GroupPtr G = sp.result;
  const auto& d = c.pcm.boundary.map;
  std::vector<int> smap(G->n), tmap(G->n);
  for (int x = 0; x < G->n; ++x) {
    auto [m, n] = sp.unpair(x);
    smap[x] = sp.pair(0, n);
    tmap[x] = sp.pair(0, c.N()->mul(d[m], n));
  }
  return Cat1Group{G, make_hom(G, G, std::move(smap)), make_hom(G, G, std::move(tmap))};
}

CrossedModuleFromCat1 crossed_module_from_cat1(const Cat1Group& k) {
  Report r = check_cat1(k);
  if (!r.ok())
    throw error(errc::not_cat1, "cat1 axiom fails: " + r.violations[0].axiom,
                r.violations[0].witness);
  CrossedModuleFromCat1 out;
  out.kernel_part = materialize(kernel(k.s), "ker s");
  out.base_part = materialize(image(k.s), "im s");
  const auto& C = out.kernel_part;
  const auto& B = out.base_part;
  std::vector<int> bnd(C.group->n);
  for (int ci = 0; ci < C.group->n; ++ci) {
    const int img = k.t.map[C.to_parent[ci]];
    const int bi = B.from_parent[img];
    require(bi >= 0, "t does not map ker s into im s");
    bnd[ci] = bi;
  }
  std::vector<int> act(static_cast<size_t>(B.group->n) * C.group->n);
  for (int bi = 0; bi < B.group->n; ++bi)
    for (int ci = 0; ci < C.group->n; ++ci) {
      const int im = C.from_parent[k.G->conj(B.to_parent[bi], C.to_parent[ci])];
      require(im >= 0, "conjugation leaves ker s");
      act[bi * C.group->n + ci] = im;
    }
  out.xm = CrossedModule{{make_hom(C.group, B.group, std::move(bnd)),
                          make_action_flat(B.group, C.group, std::move(act))}};
  return out;
}

std::array<int, 4> Cat2FromSquare::split(int g) const {
  auto [lni, mpi] = outer.unpair(g);
  auto [l, n] = ln.unpair(lni);
  auto [m, p] = mp.unpair(mpi);
  return {l, n, m, p};
}

int Cat2FromSquare::join(int l, int n, int m, int p) const {
  return outer.pair(ln.pair(l, n), mp.pair(m, p));
}

Cat2FromSquare cat2_from_crossed_square(const CrossedSquare& s) {
  Report r = check_crossed_square(s);
  if (!r.ok())
    throw error(errc::bad_structure, "input is not a crossed square: " + r.violations[0].axiom,
                r.violations[0].witness);

  // N acts on L via nu
  Action n_on_l = pullback_action(s.N, s.nu, s.actL);
  SemidirectProduct ln = semidirect(make_action_flat(s.N, s.L, n_on_l.table));
  SemidirectProduct mp = semidirect(s.actM);  // M x| P with the P-action on M

  // (m,p) acts on (l,n) by (^{mu m}(^p l) . h(m, ^p n), ^p n)
  const int mpn = mp.result->n, lnn = ln.result->n;
  std::vector<int> act(static_cast<size_t>(mpn) * lnn);
  for (int m = 0; m < s.M->n; ++m)
    for (int p = 0; p < s.P->n; ++p)
      for (int l = 0; l < s.L->n; ++l)
        for (int n = 0; n < s.N->n; ++n) {
          const int pl = s.actL.apply(p, l);
          const int pn = s.actN.apply(p, n);
          const int l2 = s.L->mul(s.m_on_l(m, pl), s.hmap(m, pn));
          act[mp.pair(m, p) * lnn + ln.pair(l, n)] = ln.pair(l2, pn);
        }
  SemidirectProduct big = semidirect(make_action_flat(mp.result, ln.result, std::move(act)));

  const GroupPtr G = big.result;
  std::vector<int> s1(G->n), t1(G->n), s2(G->n), t2(G->n);
  for (int g = 0; g < G->n; ++g) {
    auto [lni, mpi] = big.unpair(g);
    auto [l, n] = ln.unpair(lni);
    auto [m, p] = mp.unpair(mpi);
    s1[g] = big.pair(ln.pair(0, 0), mp.pair(m, p));
    t1[g] = big.pair(ln.pair(0, 0),
                     mp.pair(s.M->mul(s.lam.map[l], s.n_on_m(n, m)), s.P->mul(s.nu.map[n], p)));
    s2[g] = big.pair(ln.pair(0, n), mp.pair(0, p));
    t2[g] = big.pair(ln.pair(0, s.N->mul(s.lamp.map[l], n)),
                     mp.pair(0, s.P->mul(s.mu.map[m], p)));
  }
  Cat2FromSquare out;
  out.ln = std::move(ln);
  out.mp = std::move(mp);
  out.outer = std::move(big);
  out.cat2 = Cat2Group{G, make_hom(G, G, std::move(s1)), make_hom(G, G, std::move(t1)),
                       make_hom(G, G, std::move(s2)), make_hom(G, G, std::move(t2))};
  return out;
}

SquareFromCat2 crossed_square_from_cat2(const Cat2Group& k) {
  Report r = check_cat2(k);
  if (!r.ok())
    throw error(errc::not_cat2, "cat2 axiom fails: " + r.violations[0].axiom,
                r.violations[0].witness);

  const Subgroup ks1 = kernel(k.s1), ks2 = kernel(k.s2);
  const Subgroup is1 = image(k.s1), is2 = image(k.s2);
  SquareFromCat2 out;
  out.cornerL = materialize(intersect(ks1, ks2), "L");
  out.cornerM = materialize(intersect(is1, ks2), "M");
  out.cornerN = materialize(intersect(ks1, is2), "N");
  out.cornerP = materialize(intersect(is1, is2), "P");
  const auto& L = out.cornerL;
  const auto& M = out.cornerM;
  const auto& N = out.cornerN;
  const auto& P = out.cornerP;

  auto restrict_hom = [&](const Hom& f, const MaterializedSubgroup& dom,
                          const MaterializedSubgroup& cod, const char* what) {
    std::vector<int> m(dom.group->n);
    for (int i = 0; i < dom.group->n; ++i) {
      const int v = cod.from_parent[f.map[dom.to_parent[i]]];
      require(v >= 0, std::string("restriction leaves the corner: ") + what);
      m[i] = v;
    }
    return make_hom(dom.group, cod.group, std::move(m));
  };
  auto conj_action = [&](const MaterializedSubgroup& target) {
    std::vector<int> flat(static_cast<size_t>(P.group->n) * target.group->n);
    for (int p = 0; p < P.group->n; ++p)
      for (int x = 0; x < target.group->n; ++x) {
        const int v = target.from_parent[k.G->conj(P.to_parent[p], target.to_parent[x])];
        require(v >= 0, "corner is not stable under conjugation by the base");
        flat[p * target.group->n + x] = v;
      }
    return make_action_flat(P.group, target.group, std::move(flat));
  };

  std::vector<int> h(static_cast<size_t>(M.group->n) * N.group->n);
  for (int m = 0; m < M.group->n; ++m)
    for (int n = 0; n < N.group->n; ++n) {
      const int c = k.G->comm(M.to_parent[m], N.to_parent[n]);
      const int v = L.from_parent[c];
      require(v >= 0, "commutator h-map leaves the L corner");
      h[m * N.group->n + n] = v;
    }

  out.square = CrossedSquare{L.group,
                             M.group,
                             N.group,
                             P.group,
                             restrict_hom(k.t1, L, M, "lambda"),
                             restrict_hom(k.t2, L, N, "lambda'"),
                             restrict_hom(k.t2, M, P, "mu"),
                             restrict_hom(k.t1, N, P, "nu"),
                             conj_action(L),
                             conj_action(M),
                             conj_action(N),
                             std::move(h)};
  return out;
}

}  // namespace xsq
