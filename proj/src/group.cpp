#include "xsq/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace xsq {

int Group::pow(int a, int e) const {
  if (e < 0) return pow(inv(a), -e);
  int r = 0, b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int Group::element_order(int a) const {
  int x = a, k = 1;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool Group::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

namespace {

void derive_inverses(Group& g) {
  g.inverse.assign(g.n, -1);
  for (int a = 0; a < g.n; ++a) {
    for (int b = 0; b < g.n; ++b) {
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inverse[a] = b;
        break;
      }
    }
    if (g.inverse[a] == -1)
      throw error(errc::no_inverse, "element " + std::to_string(a) + " has no two-sided inverse",
                  {a});
  }
}

}  // namespace

GroupPtr make_group(const std::vector<std::vector<int>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw error(errc::parse_error, "empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw error(errc::parse_error, "multiplication table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw error(errc::parse_error, "table entry out of range");
  }

  int e = -1;
  for (int cand = 0; cand < n && e == -1; ++cand) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if (table[cand][a] != a || table[a][cand] != a) ok = false;
    if (ok) e = cand;
  }
  if (e == -1) throw error(errc::no_identity, "table has no two-sided identity");

  // Relabel so the identity sits at index 0.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (e != 0) std::swap(perm[0], perm[e]);  // perm is an involution here

  auto g = std::make_shared<Group>();
  g->n = n;
  g->name = std::move(name);
  g->table.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->table[perm[a] * n + perm[b]] = perm[table[a][b]];

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
          throw error(errc::non_associative,
                      "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                          "," + std::to_string(c) + ")",
                      {a, b, c});

  derive_inverses(*g);
  return g;
}

GroupPtr internal_group(int n, std::vector<int> flat_table, std::string name) {
  auto g = std::make_shared<Group>();
  g->n = n;
  g->table = std::move(flat_table);
  g->name = std::move(name);
  for (int a = 0; a < n; ++a)
    if (g->mul(0, a) != a || g->mul(a, 0) != a)
      throw error(errc::no_identity, "index 0 is not an identity in internal group " + g->name);
  derive_inverses(*g);
  return g;
}

Hom make_hom(GroupPtr dom, GroupPtr cod, std::vector<int> map) {
  if (static_cast<int>(map.size()) != dom->n)
    throw error(errc::not_homomorphism, "map length does not match domain order");
  for (int v : map)
    if (v < 0 || v >= cod->n) throw error(errc::not_homomorphism, "map value out of range");
  if (map[0] != 0) throw error(errc::not_homomorphism, "identity is not preserved", {0});
  for (int x = 0; x < dom->n; ++x)
    for (int y = 0; y < dom->n; ++y)
      if (map[dom->mul(x, y)] != cod->mul(map[x], map[y]))
        throw error(errc::not_homomorphism,
                    "multiplicativity fails at (" + std::to_string(x) + "," + std::to_string(y) +
                        ")",
                    {x, y});
  return Hom{std::move(dom), std::move(cod), std::move(map)};
}

Action make_action_flat(GroupPtr actor, GroupPtr target, std::vector<int> flat) {
  const int an = actor->n, tn = target->n;
  if (static_cast<int>(flat.size()) != an * tn)
    throw error(errc::not_action, "action table has wrong dimensions");
  for (int v : flat)
    if (v < 0 || v >= tn) throw error(errc::not_action, "action entry out of range");

  for (int g = 0; g < an; ++g) {
    const int* row = flat.data() + static_cast<size_t>(g) * tn;
    std::vector<char> seen(tn, 0);
    for (int x = 0; x < tn; ++x) {
      if (seen[row[x]])
        throw error(errc::row_not_automorphism, "row " + std::to_string(g) + " is not a bijection",
                    {g});
      seen[row[x]] = 1;
    }
    for (int x = 0; x < tn; ++x)
      for (int y = 0; y < tn; ++y)
        if (row[target->mul(x, y)] != target->mul(row[x], row[y]))
          throw error(errc::row_not_automorphism,
                      "row " + std::to_string(g) + " is not multiplicative at (" +
                          std::to_string(x) + "," + std::to_string(y) + ")",
                      {g, x, y});
  }
  for (int x = 0; x < tn; ++x)
    if (flat[x] != x)
      throw error(errc::not_action, "identity actor element acts nontrivially", {0, x});
  for (int g1 = 0; g1 < an; ++g1)
    for (int g2 = 0; g2 < an; ++g2) {
      const int g12 = actor->mul(g1, g2);
      for (int x = 0; x < tn; ++x)
        if (flat[g12 * tn + x] != flat[g1 * tn + flat[g2 * tn + x]])
          throw error(errc::not_action, "composition law fails", {g1, g2, x});
    }
  return Action{std::move(actor), std::move(target), std::move(flat)};
}

Action make_action(GroupPtr actor, GroupPtr target, const std::vector<std::vector<int>>& table) {
  if (static_cast<int>(table.size()) != actor->n)
    throw error(errc::not_action, "action table has wrong number of rows");
  std::vector<int> flat;
  flat.reserve(static_cast<size_t>(actor->n) * target->n);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != target->n)
      throw error(errc::not_action, "action row has wrong length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return make_action_flat(std::move(actor), std::move(target), std::move(flat));
}

Action trivial_action(GroupPtr actor, GroupPtr target) {
  std::vector<int> flat(static_cast<size_t>(actor->n) * target->n);
  for (int g = 0; g < actor->n; ++g)
    for (int x = 0; x < target->n; ++x) flat[g * target->n + x] = x;
  return Action{std::move(actor), std::move(target), std::move(flat)};
}

Action conjugation_action(GroupPtr g, const MaterializedSubgroup& sub) {
  const int tn = sub.group->n;
  std::vector<int> flat(static_cast<size_t>(g->n) * tn);
  for (int a = 0; a < g->n; ++a)
    for (int x = 0; x < tn; ++x) {
      const int y = g->conj(a, sub.to_parent[x]);
      const int yi = sub.from_parent[y];
      if (yi < 0)
        throw error(errc::not_normal, "conjugation leaves the subgroup", {a, sub.to_parent[x]});
      flat[a * tn + x] = yi;
    }
  return make_action_flat(g, sub.group, std::move(flat));
}

SemidirectProduct semidirect(const Action& act) {
  const GroupPtr k = act.target, a = act.actor;
  const int kn = k->n, an = a->n, n = kn * an;
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int k1 = 0; k1 < kn; ++k1)
    for (int a1 = 0; a1 < an; ++a1)
      for (int k2 = 0; k2 < kn; ++k2)
        for (int a2 = 0; a2 < an; ++a2) {
          const int kk = k->mul(k1, act.apply(a1, k2));
          const int aa = a->mul(a1, a2);
          table[(k1 * an + a1) * n + (k2 * an + a2)] = kk * an + aa;
        }
  std::string nm = (k->name.empty() || a->name.empty()) ? "" : k->name + ":" + a->name;
  GroupPtr res = internal_group(n, std::move(table), std::move(nm));

  std::vector<int> ki(kn), ai(an), pr(n);
  for (int x = 0; x < kn; ++x) ki[x] = x * an;
  for (int x = 0; x < an; ++x) ai[x] = x;
  for (int x = 0; x < n; ++x) pr[x] = x % an;
  SemidirectProduct s;
  s.result = res;
  s.kernel = k;
  s.actor = a;
  s.kernel_injection = make_hom(k, res, std::move(ki));
  s.actor_injection = make_hom(a, res, std::move(ai));
  s.projection = make_hom(res, a, std::move(pr));
  return s;
}

// -- subgroups -------------------------------------------------------------

Subgroup trivial_subgroup(GroupPtr g) {
  Subgroup s;
  s.parent = std::move(g);
  s.elements = {0};
  s.mask.assign(s.parent->n, 0);
  s.mask[0] = 1;
  return s;
}

Subgroup full_subgroup(GroupPtr g) {
  Subgroup s;
  s.parent = std::move(g);
  s.elements.resize(s.parent->n);
  std::iota(s.elements.begin(), s.elements.end(), 0);
  s.mask.assign(s.parent->n, 1);
  return s;
}

namespace {

Subgroup close_under(GroupPtr g, const std::vector<int>& gens, bool with_conjugation) {
  std::vector<char> mask(g->n, 0);
  std::vector<int> members;
  std::vector<int> work;
  auto add = [&](int x) {
    if (!mask[x]) {
      mask[x] = 1;
      members.push_back(x);
      work.push_back(x);
    }
  };
  add(0);
  for (int x : gens) {
    if (x < 0 || x >= g->n) throw error(errc::parse_error, "generator index out of range");
    add(x);
  }
  while (!work.empty()) {
    const int x = work.back();
    work.pop_back();
    add(g->inv(x));
    // products against everything currently in the subgroup
    for (size_t i = 0; i < members.size(); ++i) {
      add(g->mul(x, members[i]));
      add(g->mul(members[i], x));
    }
    if (with_conjugation)
      for (int c = 0; c < g->n; ++c) add(g->conj(c, x));
  }
  std::sort(members.begin(), members.end());
  Subgroup s;
  s.parent = std::move(g);
  s.elements = std::move(members);
  s.mask = std::move(mask);
  return s;
}

}  // namespace

Subgroup subgroup_generated(GroupPtr g, const std::vector<int>& gens) {
  return close_under(std::move(g), gens, false);
}

Subgroup normal_closure(GroupPtr g, const std::vector<int>& gens) {
  return close_under(std::move(g), gens, true);
}

std::optional<std::pair<int, int>> normality_witness(const Subgroup& s) {
  const Group& g = *s.parent;
  for (int c = 0; c < g.n; ++c)
    for (int x : s.elements)
      if (!s.contains(g.conj(c, x))) return std::make_pair(c, x);
  return std::nullopt;
}

Subgroup kernel(const Hom& h) {
  Subgroup s;
  s.parent = h.dom;
  s.mask.assign(h.dom->n, 0);
  for (int x = 0; x < h.dom->n; ++x)
    if (h.map[x] == 0) {
      s.mask[x] = 1;
      s.elements.push_back(x);
    }
  return s;
}

Subgroup image(const Hom& h) {
  Subgroup s;
  s.parent = h.cod;
  s.mask.assign(h.cod->n, 0);
  for (int x = 0; x < h.dom->n; ++x) s.mask[h.map[x]] = 1;
  for (int y = 0; y < h.cod->n; ++y)
    if (s.mask[y]) s.elements.push_back(y);
  return s;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!same_group(a.parent, b.parent))
    throw error(errc::bad_structure, "intersecting subgroups of different parents");
  Subgroup s;
  s.parent = a.parent;
  s.mask.assign(a.parent->n, 0);
  for (int x : a.elements)
    if (b.contains(x)) {
      s.mask[x] = 1;
      s.elements.push_back(x);
    }
  return s;
}

Subgroup commutator_subgroup(GroupPtr g) {
  std::vector<int> gens;
  for (int a = 0; a < g->n; ++a)
    for (int b = 0; b < g->n; ++b) gens.push_back(g->comm(a, b));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return normal_closure(std::move(g), gens);
}

MaterializedSubgroup materialize(const Subgroup& s, std::string name) {
  const int m = s.size();
  std::vector<int> from_parent(s.parent->n, -1);
  for (int i = 0; i < m; ++i) from_parent[s.elements[i]] = i;
  std::vector<int> table(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const int p = s.parent->mul(s.elements[i], s.elements[j]);
      if (from_parent[p] < 0)
        throw error(errc::bad_structure, "subset is not closed under multiplication");
      table[i * m + j] = from_parent[p];
    }
  MaterializedSubgroup out;
  out.group = internal_group(m, std::move(table), std::move(name));
  out.to_parent = s.elements;
  out.from_parent = std::move(from_parent);
  out.inclusion = make_hom(out.group, s.parent, s.elements);
  return out;
}

QuotientResult quotient(GroupPtr g, const Subgroup& n) {
  if (!same_group(g, n.parent)) throw error(errc::bad_structure, "subgroup of a different group");
  if (auto w = normality_witness(n))
    throw error(errc::not_normal,
                "subgroup is not normal: conjugating " + std::to_string(w->second) + " by " +
                    std::to_string(w->first) + " leaves it",
                {w->first, w->second});

  const int gn = g->n;
  std::vector<int> coset_of(gn, -1);
  std::vector<int> reps;
  for (int x = 0; x < gn; ++x) {
    if (coset_of[x] != -1) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(x);  // x is the smallest member, cosets discovered in order
    for (int h : n.elements) coset_of[g->mul(x, h)] = c;
  }
  const int qn = static_cast<int>(reps.size());
  std::vector<int> table(static_cast<size_t>(qn) * qn);
  for (int a = 0; a < qn; ++a)
    for (int b = 0; b < qn; ++b) table[a * qn + b] = coset_of[g->mul(reps[a], reps[b])];
  GroupPtr q = internal_group(qn, std::move(table), g->name.empty() ? "" : g->name + "/N");
  QuotientResult out;
  out.group = q;
  out.projection = make_hom(std::move(g), q, std::move(coset_of));
  out.reps = std::move(reps);
  return out;
}

QuotientResult abelianization(GroupPtr g) { return quotient(g, commutator_subgroup(g)); }

// -- isomorphism -----------------------------------------------------------

namespace {

struct Fingerprint {
  int order = 0;
  bool abelian = false;
  std::vector<int> order_histogram;       // index d: count of elements of order d
  std::vector<int> class_size_histogram;  // sorted conjugacy class sizes
  int center_size = 0;
  int derived_size = 0;

  bool operator==(const Fingerprint& o) const {
    return order == o.order && abelian == o.abelian && order_histogram == o.order_histogram &&
           class_size_histogram == o.class_size_histogram && center_size == o.center_size &&
           derived_size == o.derived_size;
  }
};

Fingerprint fingerprint(const Group& g) {
  Fingerprint f;
  f.order = g.n;
  f.abelian = g.is_abelian();
  f.order_histogram.assign(g.n + 1, 0);
  for (int x = 0; x < g.n; ++x) ++f.order_histogram[g.element_order(x)];
  std::vector<char> seen(g.n, 0);
  for (int x = 0; x < g.n; ++x) {
    if (seen[x]) continue;
    int size = 0;
    for (int c = 0; c < g.n; ++c) {
      const int y = g.conj(c, x);
      if (!seen[y]) {
        seen[y] = 1;
        ++size;
      }
    }
    f.class_size_histogram.push_back(size);
  }
  std::sort(f.class_size_histogram.begin(), f.class_size_histogram.end());
  for (int x = 0; x < g.n; ++x) {
    bool central = true;
    for (int y = 0; y < g.n && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) ++f.center_size;
  }
  std::vector<char> der(g.n, 0);
  {
    std::vector<int> gens;
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) gens.push_back(g.comm(a, b));
    // cheap closure just for the size
    std::vector<int> members{0};
    der[0] = 1;
    std::vector<int> work{0};
    for (int x : gens)
      if (!der[x]) {
        der[x] = 1;
        members.push_back(x);
        work.push_back(x);
      }
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      for (size_t i = 0; i < members.size(); ++i) {
        for (int z : {g.mul(x, members[i]), g.mul(members[i], x), g.inv(x)})
          if (!der[z]) {
            der[z] = 1;
            members.push_back(z);
            work.push_back(z);
          }
      }
    }
    f.derived_size = static_cast<int>(members.size());
  }
  return f;
}

// Greedy generating sequence: each element enlarges the closure.
std::vector<int> generating_sequence(const Group& g) {
  std::vector<int> gens;
  std::vector<char> closed(g.n, 0);
  closed[0] = 1;
  int closed_count = 1;
  while (closed_count < g.n) {
    int pick = -1;
    for (int x = 1; x < g.n; ++x)
      if (!closed[x]) {
        pick = x;
        break;
      }
    gens.push_back(pick);
    // extend closure
    std::vector<int> members;
    for (int x = 0; x < g.n; ++x)
      if (closed[x]) members.push_back(x);
    std::vector<int> work{pick};
    if (!closed[pick]) {
      closed[pick] = 1;
      members.push_back(pick);
      ++closed_count;
    }
    while (!work.empty()) {
      int x = work.back();
      work.pop_back();
      for (size_t i = 0; i < members.size(); ++i)
        for (int z : {g.mul(x, members[i]), g.mul(members[i], x), g.inv(x)})
          if (!closed[z]) {
            closed[z] = 1;
            members.push_back(z);
            work.push_back(z);
            ++closed_count;
          }
    }
  }
  return gens;
}

struct IsoSearch {
  const Group& a;
  const Group& b;
  std::vector<int> gens;
  std::vector<int> map;   // a-index -> b-index or -1
  std::vector<char> used;  // b-index already an image

  bool extend(size_t gi) {
    if (gi == gens.size()) return true;
    const int gen = gens[gi];
    const int want = a.element_order(gen);
    for (int cand = 0; cand < b.n; ++cand) {
      if (used[cand] || b.element_order(cand) != want) continue;
      auto saved_map = map;
      auto saved_used = used;
      if (assign(gen, cand) && extend(gi + 1)) return true;
      map = std::move(saved_map);
      used = std::move(saved_used);
    }
    return false;
  }

  // Add gen -> cand and close the partial map under products; fail on clash.
  bool assign(int gen, int cand) {
    std::vector<int> work;
    auto put = [&](int x, int y) -> bool {
      if (map[x] != -1) return map[x] == y;
      if (used[y]) return false;
      map[x] = y;
      used[y] = 1;
      work.push_back(x);
      return true;
    };
    if (!put(gen, cand)) return false;
    std::vector<int> known;
    for (int x = 0; x < a.n; ++x)
      if (map[x] != -1) known.push_back(x);
    while (!work.empty()) {
      const int x = work.back();
      work.pop_back();
      for (size_t i = 0; i < known.size(); ++i) {
        const int k = known[i];
        if (!put(a.mul(x, k), b.mul(map[x], map[k]))) return false;
        if (!put(a.mul(k, x), b.mul(map[k], map[x]))) return false;
      }
      if (std::find(known.begin(), known.end(), x) == known.end()) known.push_back(x);
    }
    return true;
  }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const GroupPtr& a, const GroupPtr& b,
                                                 int max_order) {
  if (a->n != b->n) return std::nullopt;
  if (a->n > max_order)
    throw error(errc::order_too_large,
                "group order " + std::to_string(a->n) + " exceeds isomorphism bound " +
                    std::to_string(max_order));
  if (!(fingerprint(*a) == fingerprint(*b))) return std::nullopt;
  IsoSearch s{*a, *b, generating_sequence(*a), std::vector<int>(a->n, -1),
              std::vector<char>(b->n, 0)};
  s.map[0] = 0;
  s.used[0] = 1;
  if (s.extend(0)) return s.map;
  return std::nullopt;
}

bool is_isomorphic(const GroupPtr& a, const GroupPtr& b, int max_order) {
  return find_isomorphism(a, b, max_order).has_value();
}

// -- helpers ---------------------------------------------------------------

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  return a->n == b->n && a->table == b->table;
}

Hom identity_hom(GroupPtr g) {
  std::vector<int> m(g->n);
  std::iota(m.begin(), m.end(), 0);
  return Hom{g, g, std::move(m)};
}

Hom compose(const Hom& f, const Hom& g) {
  if (!same_group(g.cod, f.dom)) throw error(errc::bad_structure, "non-composable homomorphisms");
  std::vector<int> m(g.dom->n);
  for (int x = 0; x < g.dom->n; ++x) m[x] = f.map[g.map[x]];
  return Hom{g.dom, f.cod, std::move(m)};
}

bool hom_equal(const Hom& f, const Hom& g) {
  return same_group(f.dom, g.dom) && same_group(f.cod, g.cod) && f.map == g.map;
}

Hom trivial_hom(GroupPtr dom, GroupPtr cod) {
  const int n = dom->n;
  return Hom{std::move(dom), std::move(cod), std::vector<int>(n, 0)};
}

}  // namespace xsq
