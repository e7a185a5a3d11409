#include "xsq/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace xsq {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw error(errc::bad_structure, what);
}

/// Indexes tuples with bounded entries by mixed-radix key for O(1) lookup.
class TupleIndex {
 public:
  explicit TupleIndex(std::vector<int> bases) : bases_(std::move(bases)) {
    long long total = 1;
    for (int b : bases_) {
      total *= b;
      require(total > 0 && total < 80'000'000, "tuple space too large to index");
    }
    lookup_.assign(static_cast<size_t>(total), -1);
  }

  long long key(const std::vector<int>& t) const {
    long long k = 0;
    for (size_t i = 0; i < bases_.size(); ++i) k = k * bases_[i] + t[i];
    return k;
  }

  int insert(const std::vector<int>& t) {
    const int idx = static_cast<int>(elems.size());
    lookup_[key(t)] = idx;
    elems.push_back(t);
    return idx;
  }

  int find(const std::vector<int>& t) const { return lookup_[key(t)]; }

  int size() const { return static_cast<int>(elems.size()); }

  std::vector<std::vector<int>> elems;

 private:
  std::vector<int> bases_;
  std::vector<int> lookup_;
};

using TupleMul = std::function<void(const std::vector<int>&, const std::vector<int>&,
                                    std::vector<int>&)>;

GroupPtr group_from_tuples(const TupleIndex& ti, const TupleMul& mul, std::string name) {
  const int n = ti.size();
  require(n > 0, "empty element list for tuple group");
  require(n <= 10000, "tuple group too large to tabulate: " + name);
  std::vector<int> table(static_cast<size_t>(n) * n);
  std::vector<int> prod(ti.elems[0].size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mul(ti.elems[i], ti.elems[j], prod);
      const int k = ti.find(prod);
      require(k >= 0, "tuple set not closed under multiplication");
      table[i * n + j] = k;
    }
  return internal_group(n, std::move(table), std::move(name));
}

}  // namespace

// -- simplicial identity suite ------------------------------------------------

Report check_simplicial(const TruncatedSimplicialGroup& g) {
  Report r;
  const int depth = g.depth;
  require(static_cast<int>(g.levels.size()) == depth + 1, "level count");
  for (int n = 1; n <= depth; ++n)
    require(static_cast<int>(g.face[n].size()) == n + 1, "face count at level " + std::to_string(n));
  for (int n = 0; n < depth; ++n)
    require(static_cast<int>(g.degen[n].size()) == n + 1,
            "degeneracy count at level " + std::to_string(n));
  for (int n = 1; n <= depth; ++n)
    for (const Hom& h : g.face[n])
      require(same_group(h.dom, g.levels[n]) && same_group(h.cod, g.levels[n - 1]),
              "face endpoints at level " + std::to_string(n));
  for (int n = 0; n < depth; ++n)
    for (const Hom& h : g.degen[n])
      require(same_group(h.dom, g.levels[n]) && same_group(h.cod, g.levels[n + 1]),
              "degeneracy endpoints at level " + std::to_string(n));

  auto tag = [](const std::string& id, int n) { return id + " @" + std::to_string(n); };

  // d_i d_j = d_{j-1} d_i for i < j
  for (int n = 2; n <= depth; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        for (int x = 0; x < g.level(n)->n; ++x)
          if (g.d(n - 1, i).map[g.d(n, j).map[x]] != g.d(n - 1, j - 1).map[g.d(n, i).map[x]]) {
            r.add(tag("d" + std::to_string(i) + "d" + std::to_string(j), n), {x});
            break;
          }

  // s_i s_j = s_{j+1} s_i for i <= j
  for (int n = 0; n + 2 <= depth; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        for (int x = 0; x < g.level(n)->n; ++x)
          if (g.s(n + 1, i).map[g.s(n, j).map[x]] != g.s(n + 1, j + 1).map[g.s(n, i).map[x]]) {
            r.add(tag("s" + std::to_string(i) + "s" + std::to_string(j), n), {x});
            break;
          }

  // d_i s_j relations, maps G_n -> G_n through G_{n+1}
  for (int n = 0; n < depth; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const std::string id = "d" + std::to_string(i) + "s" + std::to_string(j);
        for (int x = 0; x < g.level(n)->n; ++x) {
          const int lhs = g.d(n + 1, i).map[g.s(n, j).map[x]];
          int rhs;
          if (i == j || i == j + 1) {
            rhs = x;
          } else if (i < j) {
            if (n < 1) continue;
            rhs = g.s(n - 1, j - 1).map[g.d(n, i).map[x]];
          } else {  // i > j + 1
            if (n < 1) continue;
            rhs = g.s(n - 1, j).map[g.d(n, i - 1).map[x]];
          }
          if (lhs != rhs) {
            r.add(tag(id, n), {x});
            break;
          }
        }
      }
  return r;
}

TruncatedSimplicialGroup constant_simplicial(const GroupPtr& g, int depth) {
  TruncatedSimplicialGroup out;
  out.depth = depth;
  out.levels.assign(depth + 1, g);
  out.face.resize(depth + 1);
  out.degen.resize(depth + 1);
  for (int n = 1; n <= depth; ++n) out.face[n].assign(n + 1, identity_hom(g));
  for (int n = 0; n < depth; ++n) out.degen[n].assign(n + 1, identity_hom(g));
  return out;
}

// -- Moore complex -------------------------------------------------------------

MooreComplex moore_complex(const TruncatedSimplicialGroup& g) {
  MooreComplex mc;
  mc.terms.push_back(full_subgroup(g.level(0)));
  for (int n = 1; n <= g.depth; ++n) {
    Subgroup t = kernel(g.d(n, 0));
    for (int i = 1; i < n; ++i) t = intersect(t, kernel(g.d(n, i)));
    mc.terms.push_back(std::move(t));
  }
  for (int n = 0; n <= g.depth; ++n)
    mc.term_groups.push_back(materialize(mc.terms[n], "NG" + std::to_string(n)));

  mc.boundary.resize(g.depth + 1, Hom{});
  for (int n = 1; n <= g.depth; ++n) {
    const auto& dom = mc.term_groups[n];
    const auto& cod = mc.term_groups[n - 1];
    std::vector<int> m(dom.group->n);
    for (int x = 0; x < dom.group->n; ++x) {
      const int v = cod.from_parent[g.d(n, n).map[dom.to_parent[x]]];
      require(v >= 0, "Moore boundary leaves the Moore term");
      m[x] = v;
    }
    mc.boundary[n] = make_hom(dom.group, cod.group, std::move(m));
  }
  for (int n = 2; n <= g.depth; ++n)
    for (int x = 0; x < mc.term_groups[n].group->n; ++x)
      require(mc.boundary[n - 1].map[mc.boundary[n].map[x]] == 0,
              "Moore boundaries do not compose to the identity");
  return mc;
}

// -- nerve of a cat1-group ------------------------------------------------------

Nerve nerve_cat1(const Cat1Group& c, int depth) {
  {
    Report r = check_cat1(c);
    if (!r.ok())
      throw error(errc::not_cat1, "cat1 axiom fails: " + r.violations[0].axiom,
                  r.violations[0].witness);
  }
  require(depth >= 1 && depth <= 3, "nerve depth must be 1..3");
  const GroupPtr G = c.G;
  const auto& s = c.s.map;
  const auto& t = c.t.map;
  // composite of composable arrows: (g after f) = g s(g)^-1 f
  auto comp = [&](int g_next, int f_prev) {
    return G->mul(G->mul(g_next, G->inv(s[g_next])), f_prev);
  };

  Nerve nv;
  nv.cat1 = c;
  nv.objects = materialize(image(c.s), "obj");
  nv.chains.resize(depth + 1);

  nv.g.depth = depth;
  nv.g.levels.resize(depth + 1);
  nv.g.face.resize(depth + 1);
  nv.g.degen.resize(depth + 1);
  nv.g.levels[0] = nv.objects.group;

  // chain lists per level; level 0 chains are empty tuples standing for objects
  std::vector<TupleIndex> idx;
  idx.reserve(depth + 1);
  idx.emplace_back(std::vector<int>{});  // unused placeholder shape
  for (int n = 1; n <= depth; ++n) {
    idx.emplace_back(std::vector<int>(n, G->n));
    if (n == 1) {
      std::vector<int> tup(1);
      for (int g1 = 0; g1 < G->n; ++g1) {
        tup[0] = g1;
        idx[n].insert(tup);
      }
    } else {
      for (const auto& chain : idx[n - 1].elems)
        for (int gn = 0; gn < G->n; ++gn)
          if (s[gn] == t[chain[n - 2]]) {
            std::vector<int> tup = chain;
            tup.push_back(gn);
            idx[n].insert(tup);
          }
    }
    TupleMul mul = [&](const std::vector<int>& a, const std::vector<int>& b,
                       std::vector<int>& out) {
      for (size_t i = 0; i < a.size(); ++i) out[i] = G->mul(a[i], b[i]);
    };
    nv.g.levels[n] = group_from_tuples(idx[n], mul, "N" + std::to_string(n));
    nv.chains[n] = idx[n].elems;
  }

  // faces and degeneracies
  for (int n = 1; n <= depth; ++n) {
    nv.g.face[n].clear();
    for (int i = 0; i <= n; ++i) {
      std::vector<int> m(nv.g.levels[n]->n);
      for (int x = 0; x < nv.g.levels[n]->n; ++x) {
        const auto& ch = idx[n].elems[x];
        if (n == 1) {
          m[x] = nv.objects.from_parent[i == 0 ? t[ch[0]] : s[ch[0]]];
        } else {
          std::vector<int> out;
          out.reserve(n - 1);
          if (i == 0) {
            out.assign(ch.begin() + 1, ch.end());
          } else if (i == n) {
            out.assign(ch.begin(), ch.end() - 1);
          } else {
            out.assign(ch.begin(), ch.end());
            out[i - 1] = comp(out[i], out[i - 1]);
            out.erase(out.begin() + i);
          }
          m[x] = idx[n - 1].find(out);
          require(m[x] >= 0, "nerve face left the chain set");
        }
      }
      nv.g.face[n].push_back(make_hom(nv.g.levels[n], nv.g.levels[n - 1], std::move(m)));
    }
  }
  for (int n = 0; n < depth; ++n) {
    nv.g.degen[n].clear();
    for (int i = 0; i <= n; ++i) {
      std::vector<int> m(nv.g.levels[n]->n);
      for (int x = 0; x < nv.g.levels[n]->n; ++x) {
        if (n == 0) {
          m[x] = idx[1].find({nv.objects.to_parent[x]});
        } else {
          const auto& ch = idx[n].elems[x];
          std::vector<int> out = ch;
          if (i == 0)
            out.insert(out.begin(), s[ch[0]]);
          else
            out.insert(out.begin() + i, t[ch[i - 1]]);
          m[x] = idx[n + 1].find(out);
        }
        require(m[x] >= 0, "nerve degeneracy left the chain set");
      }
      nv.g.degen[n].push_back(make_hom(nv.g.levels[n], nv.g.levels[n + 1], std::move(m)));
    }
  }
  return nv;
}

// -- binerve ---------------------------------------------------------------------

namespace {

struct AxisMaps {
  const std::vector<int>* s;
  const std::vector<int>* t;
};

}  // namespace

TruncatedBisimplicialGroup binerve(const Cat2Group& k) {
  {
    Report r = check_cat2(k);
    if (!r.ok())
      throw error(errc::not_cat2, "cat2 axiom fails: " + r.violations[0].axiom,
                  r.violations[0].witness);
  }
  const GroupPtr G = k.G;
  // axis 1 composes along (s2,t2); axis 2 along (s1,t1)
  const AxisMaps ax1{&k.s2.map, &k.t2.map};
  const AxisMaps ax2{&k.s1.map, &k.t1.map};
  std::vector<char> in_im1(G->n, 0), in_im2(G->n, 0);
  for (int x = 0; x < G->n; ++x) {
    in_im1[k.s1.map[x]] = 1;
    in_im2[k.s2.map[x]] = 1;
  }

  TruncatedBisimplicialGroup b;
  b.ambient = G;

  const std::vector<std::pair<int, int>> shape = {{0, 0}, {1, 0}, {0, 1}, {2, 0},
                                                  {1, 1}, {0, 2}, {2, 1}, {1, 2}};
  std::map<std::pair<int, int>, TupleIndex> indices;

  auto entry_ok = [&](int a, int bb, int g) {
    if (a == 0 && !in_im2[g]) return false;
    if (bb == 0 && !in_im1[g]) return false;
    return true;
  };

  for (auto [a, bb] : shape) {
    const int rows = std::max(a, 1), cols = std::max(bb, 1);
    const int count = rows * cols;
    TupleIndex ti(std::vector<int>(count, G->n));
    std::vector<int> m(count, 0);
    // odometer over all matrices with constraint filtering
    while (true) {
      bool ok = true;
      for (int e = 0; e < count && ok; ++e) ok = entry_ok(a, bb, m[e]);
      for (int r = 0; r + 1 < a && ok; ++r)  // column composability (axis 1)
        for (int c = 0; c < cols && ok; ++c)
          ok = (*ax1.t)[m[r * cols + c]] == (*ax1.s)[m[(r + 1) * cols + c]];
      for (int c = 0; c + 1 < bb && ok; ++c)  // row composability (axis 2)
        for (int r = 0; r < rows && ok; ++r)
          ok = (*ax2.t)[m[r * cols + c]] == (*ax2.s)[m[r * cols + c + 1]];
      if (ok) ti.insert(m);
      int e = count - 1;
      while (e >= 0 && m[e] == G->n - 1) m[e--] = 0;
      if (e < 0) break;
      ++m[e];
    }
    TupleMul mul = [&G](const std::vector<int>& x, const std::vector<int>& y,
                        std::vector<int>& out) {
      for (size_t i = 0; i < x.size(); ++i) out[i] = G->mul(x[i], y[i]);
    };
    BisimplicialCell cell;
    cell.rows = rows;
    cell.cols = cols;
    cell.group = group_from_tuples(
        ti, mul, "B" + std::to_string(a) + std::to_string(bb));
    cell.elems = ti.elems;
    b.cells[{a, bb}] = std::move(cell);
    indices.emplace(std::make_pair(a, bb), std::move(ti));
  }

  auto comp_arrow = [&](const AxisMaps& ax, int g_next, int f_prev) {
    return G->mul(G->mul(g_next, G->inv((*ax.s)[g_next])), f_prev);
  };

  // face along an axis: degree (extent) drops from `deg` to deg-1
  auto build_face = [&](int a, int bb, bool axis1, int i) {
    const AxisMaps& ax = axis1 ? ax1 : ax2;
    const int ta = axis1 ? a - 1 : a;
    const int tb = axis1 ? bb : bb - 1;
    const auto& src = b.cells.at({a, bb});
    const auto& dst_idx = indices.at({ta, tb});
    const int deg = axis1 ? a : bb;
    const int lines = axis1 ? src.cols : src.rows;  // lines orthogonal to the axis
    std::vector<int> m(src.group->n);
    for (int x = 0; x < src.group->n; ++x) {
      const auto& e = src.elems[x];
      std::vector<int> out;
      if (deg == 1) {
        out.resize(lines);
        for (int l = 0; l < lines; ++l)
          out[l] = (i == 0 ? (*ax.t)[e[l]] : (*ax.s)[e[l]]);
      } else {  // deg == 2: two slots along the axis per line
        out.resize(lines);
        auto at = [&](int slot, int l) { return axis1 ? e[slot * src.cols + l] : e[l * src.cols + slot]; };
        for (int l = 0; l < lines; ++l) {
          if (i == 0)
            out[l] = at(1, l);
          else if (i == 1)
            out[l] = comp_arrow(ax, at(1, l), at(0, l));
          else
            out[l] = at(0, l);
        }
      }
      const int v = dst_idx.find(out);
      require(v >= 0, "bisimplicial face left the cell");
      m[x] = v;
    }
    return make_hom(src.group, b.cells.at({ta, tb}).group, std::move(m));
  };

  auto build_degen = [&](int a, int bb, bool axis1, int i) {
    const AxisMaps& ax = axis1 ? ax1 : ax2;
    const int ta = axis1 ? a + 1 : a;
    const int tb = axis1 ? bb : bb + 1;
    const auto& src = b.cells.at({a, bb});
    const auto& dst_idx = indices.at({ta, tb});
    const int deg = axis1 ? a : bb;
    const int lines = axis1 ? src.cols : src.rows;
    std::vector<int> m(src.group->n);
    for (int x = 0; x < src.group->n; ++x) {
      const auto& e = src.elems[x];
      std::vector<int> out;
      if (deg == 0) {
        out = e;  // identity arrows are the object elements themselves
      } else {   // deg == 1 -> two slots along the axis per line
        out.resize(2 * lines);
        auto put = [&](int slot, int l, int v) {
          if (axis1)
            out[slot * lines + l] = v;
          else
            out[l * 2 + slot] = v;
        };
        for (int l = 0; l < lines; ++l) {
          if (i == 0) {
            put(0, l, (*ax.s)[e[l]]);
            put(1, l, e[l]);
          } else {
            put(0, l, e[l]);
            put(1, l, (*ax.t)[e[l]]);
          }
        }
      }
      const int v = dst_idx.find(out);
      require(v >= 0, "bisimplicial degeneracy left the cell");
      m[x] = v;
    }
    return make_hom(src.group, b.cells.at({ta, tb}).group, std::move(m));
  };

  for (auto [a, bb] : shape) {
    if (a >= 1 && b.has_cell(a - 1, bb)) {
      auto& v = b.face1[{a, bb}];
      for (int i = 0; i <= a; ++i) v.push_back(build_face(a, bb, true, i));
    }
    if (bb >= 1 && b.has_cell(a, bb - 1)) {
      auto& v = b.face2[{a, bb}];
      for (int i = 0; i <= bb; ++i) v.push_back(build_face(a, bb, false, i));
    }
    if (b.has_cell(a + 1, bb)) {
      auto& v = b.degen1[{a, bb}];
      for (int i = 0; i <= a; ++i) v.push_back(build_degen(a, bb, true, i));
    }
    if (b.has_cell(a, bb + 1)) {
      auto& v = b.degen2[{a, bb}];
      for (int i = 0; i <= bb; ++i) v.push_back(build_degen(a, bb, false, i));
    }
  }
  return b;
}

Report check_bisimplicial(const TruncatedBisimplicialGroup& b) {
  Report r;
  auto tag = [](const std::string& id, int a, int bb) {
    return id + " @(" + std::to_string(a) + "," + std::to_string(bb) + ")";
  };

  auto check_endpoints = [&](const std::map<std::pair<int, int>, std::vector<Hom>>& ops,
                             int da, int db, const char* what) {
    for (const auto& [key, homs] : ops) {
      auto [a, bb] = key;
      require(b.has_cell(a, bb) && b.has_cell(a + da, bb + db),
              std::string(what) + " between missing cells");
      for (const Hom& h : homs)
        require(same_group(h.dom, b.cell(a, bb).group) &&
                    same_group(h.cod, b.cell(a + da, bb + db).group),
                std::string(what) + " endpoints");
    }
  };
  check_endpoints(b.face1, -1, 0, "axis-1 face");
  check_endpoints(b.face2, 0, -1, "axis-2 face");
  check_endpoints(b.degen1, 1, 0, "axis-1 degeneracy");
  check_endpoints(b.degen2, 0, 1, "axis-2 degeneracy");

  auto get = [&](const std::map<std::pair<int, int>, std::vector<Hom>>& ops, int a, int bb)
      -> const std::vector<Hom>* {
    auto it = ops.find({a, bb});
    return it == ops.end() ? nullptr : &it->second;
  };

  for (const auto& [key, cell] : b.cells) {
    auto [a, bb] = key;
    const int n = cell.group->n;
    // single-axis simplicial identities (only the d-d and d-s forms reach
    // within this truncation; s-s needs two levels up)
    for (int axis = 1; axis <= 2; ++axis) {
      const auto& faces = axis == 1 ? b.face1 : b.face2;
      const auto& degens = axis == 1 ? b.degen1 : b.degen2;
      const int deg = axis == 1 ? a : bb;
      const auto* f = get(faces, a, bb);
      if (f && deg >= 2) {
        auto [pa, pb] = axis == 1 ? std::pair<int, int>{a - 1, bb} : std::pair<int, int>{a, bb - 1};
        const auto* f2 = get(faces, pa, pb);
        if (f2)
          for (int j = 1; j <= deg; ++j)
            for (int i = 0; i < j; ++i)
              for (int x = 0; x < n; ++x)
                if ((*f2)[i].map[(*f)[j].map[x]] != (*f2)[j - 1].map[(*f)[i].map[x]]) {
                  r.add(tag("axis" + std::to_string(axis) + " dd", a, bb), {i, j, x});
                  break;
                }
      }
      const auto* sdeg = get(degens, a, bb);
      if (sdeg) {
        auto [ua, ub] = axis == 1 ? std::pair<int, int>{a + 1, bb} : std::pair<int, int>{a, bb + 1};
        const auto* fup = get(axis == 1 ? b.face1 : b.face2, ua, ub);
        if (fup)
          for (int j = 0; j <= deg; ++j)
            for (int i = 0; i <= deg + 1; ++i)
              for (int x = 0; x < n; ++x) {
                const int lhs = (*fup)[i].map[(*sdeg)[j].map[x]];
                int rhs = -1;
                if (i == j || i == j + 1) {
                  rhs = x;
                } else if (i < j) {
                  const auto* fh = get(faces, a, bb);
                  const auto* sl = get(degens, axis == 1 ? a - 1 : a, axis == 1 ? bb : bb - 1);
                  if (!fh || !sl) continue;
                  rhs = (*sl)[j - 1].map[(*fh)[i].map[x]];
                } else {
                  const auto* fh = get(faces, a, bb);
                  const auto* sl = get(degens, axis == 1 ? a - 1 : a, axis == 1 ? bb : bb - 1);
                  if (!fh || !sl) continue;
                  rhs = (*sl)[j].map[(*fh)[i - 1].map[x]];
                }
                if (lhs != rhs) {
                  r.add(tag("axis" + std::to_string(axis) + " ds", a, bb), {i, j, x});
                  break;
                }
              }
      }
    }
    // cross-axis commuting, both orders of every available op pair
    const auto* f1 = get(b.face1, a, bb);
    const auto* f2 = get(b.face2, a, bb);
    const auto* s1 = get(b.degen1, a, bb);
    const auto* s2 = get(b.degen2, a, bb);
    if (f1 && f2) {
      const auto* f2after = get(b.face2, a - 1, bb);
      const auto* f1after = get(b.face1, a, bb - 1);
      if (f2after && f1after)
        for (size_t i = 0; i < f1->size(); ++i)
          for (size_t j = 0; j < f2->size(); ++j)
            for (int x = 0; x < n; ++x)
              if ((*f2after)[j].map[(*f1)[i].map[x]] != (*f1after)[i].map[(*f2)[j].map[x]]) {
                r.add(tag("commute d1d2", a, bb), {static_cast<int>(i), static_cast<int>(j), x});
                break;
              }
    }
    if (f1 && s2) {
      const auto* s2after = get(b.degen2, a - 1, bb);
      const auto* f1after = get(b.face1, a, bb + 1);
      if (s2after && f1after)
        for (size_t i = 0; i < f1->size(); ++i)
          for (size_t j = 0; j < s2->size(); ++j)
            for (int x = 0; x < n; ++x)
              if ((*s2after)[j].map[(*f1)[i].map[x]] != (*f1after)[i].map[(*s2)[j].map[x]]) {
                r.add(tag("commute d1s2", a, bb), {static_cast<int>(i), static_cast<int>(j), x});
                break;
              }
    }
    if (s1 && f2) {
      const auto* f2after = get(b.face2, a + 1, bb);
      const auto* s1after = get(b.degen1, a, bb - 1);
      if (f2after && s1after)
        for (size_t i = 0; i < s1->size(); ++i)
          for (size_t j = 0; j < f2->size(); ++j)
            for (int x = 0; x < n; ++x)
              if ((*f2after)[j].map[(*s1)[i].map[x]] != (*s1after)[i].map[(*f2)[j].map[x]]) {
                r.add(tag("commute s1d2", a, bb), {static_cast<int>(i), static_cast<int>(j), x});
                break;
              }
    }
    if (s1 && s2) {
      const auto* s2after = get(b.degen2, a + 1, bb);
      const auto* s1after = get(b.degen1, a, bb + 1);
      if (s2after && s1after)
        for (size_t i = 0; i < s1->size(); ++i)
          for (size_t j = 0; j < s2->size(); ++j)
            for (int x = 0; x < n; ++x)
              if ((*s2after)[j].map[(*s1)[i].map[x]] != (*s1after)[i].map[(*s2)[j].map[x]]) {
                r.add(tag("commute s1s2", a, bb), {static_cast<int>(i), static_cast<int>(j), x});
                break;
              }
    }
  }
  return r;
}

// -- codiagonal ------------------------------------------------------------------

Codiagonal codiagonal(const TruncatedBisimplicialGroup& b) {
  for (auto [a, bb] : {std::pair<int, int>{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}})
    require(b.has_cell(a, bb), "codiagonal needs the grid through total degree 2");

  const auto& c00 = b.cell(0, 0);
  const auto& c10 = b.cell(1, 0);
  const auto& c01 = b.cell(0, 1);
  const auto& c20 = b.cell(2, 0);
  const auto& c11 = b.cell(1, 1);
  const auto& c02 = b.cell(0, 2);

  const Hom& d0_10 = b.face1.at({1, 0})[0];
  const Hom& d1_10 = b.face1.at({1, 0})[1];
  const Hom& d0_01 = b.face2.at({0, 1})[0];
  const Hom& d1_01 = b.face2.at({0, 1})[1];
  const Hom& d0_20 = b.face1.at({2, 0})[0];
  const Hom& d1_20 = b.face1.at({2, 0})[1];
  const Hom& d2_20 = b.face1.at({2, 0})[2];
  const Hom& d0v_11 = b.face1.at({1, 1})[0];
  const Hom& d1v_11 = b.face1.at({1, 1})[1];
  const Hom& d0h_11 = b.face2.at({1, 1})[0];
  const Hom& d1h_11 = b.face2.at({1, 1})[1];
  const Hom& d0_02 = b.face2.at({0, 2})[0];
  const Hom& d1_02 = b.face2.at({0, 2})[1];
  const Hom& d2_02 = b.face2.at({0, 2})[2];

  Codiagonal out;
  out.g.depth = 2;
  out.g.levels.resize(3);
  out.g.face.resize(3);
  out.g.degen.resize(3);
  out.tuples.resize(3);

  out.g.levels[0] = c00.group;
  out.tuples[0].resize(c00.group->n);
  for (int x = 0; x < c00.group->n; ++x) out.tuples[0][x] = {x};

  // level 1: pairs (x0, x1) with d0^1 x0 = d1^2 x1
  TupleIndex t1(std::vector<int>{c10.group->n, c01.group->n});
  for (int x0 = 0; x0 < c10.group->n; ++x0)
    for (int x1 = 0; x1 < c01.group->n; ++x1)
      if (d0_10.map[x0] == d1_01.map[x1]) t1.insert({x0, x1});
  if (t1.size() == 0) throw error(errc::matching_condition_empty, "empty matching set at level 1");
  {
    TupleMul mul = [&](const std::vector<int>& x, const std::vector<int>& y,
                       std::vector<int>& o) {
      o[0] = c10.group->mul(x[0], y[0]);
      o[1] = c01.group->mul(x[1], y[1]);
    };
    out.g.levels[1] = group_from_tuples(t1, mul, "Nabla1");
  }
  out.tuples[1] = t1.elems;

  // level 2: triples with the two matching conditions
  TupleIndex t2(std::vector<int>{c20.group->n, c11.group->n, c02.group->n});
  for (int x0 = 0; x0 < c20.group->n; ++x0)
    for (int x1 = 0; x1 < c11.group->n; ++x1) {
      if (d0_20.map[x0] != d1h_11.map[x1]) continue;
      for (int x2 = 0; x2 < c02.group->n; ++x2)
        if (d0v_11.map[x1] == d2_02.map[x2]) t2.insert({x0, x1, x2});
    }
  if (t2.size() == 0) throw error(errc::matching_condition_empty, "empty matching set at level 2");
  {
    TupleMul mul = [&](const std::vector<int>& x, const std::vector<int>& y,
                       std::vector<int>& o) {
      o[0] = c20.group->mul(x[0], y[0]);
      o[1] = c11.group->mul(x[1], y[1]);
      o[2] = c02.group->mul(x[2], y[2]);
    };
    out.g.levels[2] = group_from_tuples(t2, mul, "Nabla2");
  }
  out.tuples[2] = t2.elems;

  // faces and degeneracies from the axis ops
  {
    std::vector<int> m0(out.g.levels[1]->n), m1(out.g.levels[1]->n);
    for (int x = 0; x < out.g.levels[1]->n; ++x) {
      const auto& e = t1.elems[x];
      m0[x] = d0_01.map[e[1]];
      m1[x] = d1_10.map[e[0]];
    }
    out.g.face[1].push_back(make_hom(out.g.levels[1], out.g.levels[0], std::move(m0)));
    out.g.face[1].push_back(make_hom(out.g.levels[1], out.g.levels[0], std::move(m1)));
  }
  {
    std::vector<int> m0(out.g.levels[2]->n), m1(out.g.levels[2]->n), m2(out.g.levels[2]->n);
    for (int x = 0; x < out.g.levels[2]->n; ++x) {
      const auto& e = t2.elems[x];
      m0[x] = t1.find({d0h_11.map[e[1]], d0_02.map[e[2]]});
      m1[x] = t1.find({d1_20.map[e[0]], d1_02.map[e[2]]});
      m2[x] = t1.find({d2_20.map[e[0]], d1v_11.map[e[1]]});
      require(m0[x] >= 0 && m1[x] >= 0 && m2[x] >= 0, "codiagonal face left the matching set");
    }
    out.g.face[2].push_back(make_hom(out.g.levels[2], out.g.levels[1], std::move(m0)));
    out.g.face[2].push_back(make_hom(out.g.levels[2], out.g.levels[1], std::move(m1)));
    out.g.face[2].push_back(make_hom(out.g.levels[2], out.g.levels[1], std::move(m2)));
  }
  {
    const Hom& s0_1 = b.degen1.at({0, 0})[0];
    const Hom& s0_2 = b.degen2.at({0, 0})[0];
    std::vector<int> m(out.g.levels[0]->n);
    for (int x = 0; x < out.g.levels[0]->n; ++x) {
      m[x] = t1.find({s0_1.map[x], s0_2.map[x]});
      require(m[x] >= 0, "codiagonal degeneracy left the matching set");
    }
    out.g.degen[0].push_back(make_hom(out.g.levels[0], out.g.levels[1], std::move(m)));
  }
  {
    const Hom& s0v_10 = b.degen1.at({1, 0})[0];
    const Hom& s1v_10 = b.degen1.at({1, 0})[1];
    const Hom& s0h_10 = b.degen2.at({1, 0})[0];
    const Hom& s0v_01 = b.degen1.at({0, 1})[0];
    const Hom& s0h_01 = b.degen2.at({0, 1})[0];
    const Hom& s1h_01 = b.degen2.at({0, 1})[1];
    std::vector<int> m0(out.g.levels[1]->n), m1(out.g.levels[1]->n);
    for (int x = 0; x < out.g.levels[1]->n; ++x) {
      const auto& e = t1.elems[x];
      m0[x] = t2.find({s0v_10.map[e[0]], s0h_10.map[e[0]], s0h_01.map[e[1]]});
      m1[x] = t2.find({s1v_10.map[e[0]], s0v_01.map[e[1]], s1h_01.map[e[1]]});
      require(m0[x] >= 0 && m1[x] >= 0, "codiagonal degeneracy left the matching set");
    }
    out.g.degen[1].push_back(make_hom(out.g.levels[1], out.g.levels[2], std::move(m0)));
    out.g.degen[1].push_back(make_hom(out.g.levels[1], out.g.levels[2], std::move(m1)));
  }
  return out;
}

// -- degeneracies and pairings ------------------------------------------------------

TruncatedSimplicialGroup coskeletal_extension(const TruncatedSimplicialGroup& g) {
  require(g.depth == 2, "coskeletal extension starts from depth 2");
  const GroupPtr G1 = g.level(1);
  const GroupPtr G2 = g.level(2);
  const auto& d0 = g.d(2, 0).map;
  const auto& d1 = g.d(2, 1).map;
  const auto& d2 = g.d(2, 2).map;

  // fibers of the face maps, keyed by the constrained values
  std::vector<std::vector<int>> fiber0(G1->n);
  std::map<std::pair<int, int>, std::vector<int>> fiber01;
  std::map<std::tuple<int, int, int>, std::vector<int>> fiber012;
  for (int y = 0; y < G2->n; ++y) {
    fiber0[d0[y]].push_back(y);
    fiber01[{d0[y], d1[y]}].push_back(y);
    fiber012[{d0[y], d1[y], d2[y]}].push_back(y);
  }

  std::vector<std::array<int, 4>> elems;
  std::map<std::array<int, 4>, int> index;
  for (int y0 = 0; y0 < G2->n; ++y0)
    for (int y1 : fiber0[d0[y0]]) {
      auto it2 = fiber01.find({d1[y0], d1[y1]});
      if (it2 == fiber01.end()) continue;
      for (int y2 : it2->second) {
        auto it3 = fiber012.find({d2[y0], d2[y1], d2[y2]});
        if (it3 == fiber012.end()) continue;
        for (int y3 : it3->second) {
          index.emplace(std::array<int, 4>{y0, y1, y2, y3},
                        static_cast<int>(elems.size()));
          elems.push_back({y0, y1, y2, y3});
        }
      }
    }
  const int n3 = static_cast<int>(elems.size());
  require(n3 > 0 && elems[0] == std::array<int, 4>{0, 0, 0, 0},
          "simplicial kernel must contain the identity first");
  require(n3 <= 10000, "simplicial kernel too large to tabulate");

  std::vector<int> table(static_cast<size_t>(n3) * n3);
  for (int i = 0; i < n3; ++i)
    for (int j = 0; j < n3; ++j) {
      std::array<int, 4> prod;
      for (int k = 0; k < 4; ++k) prod[k] = G2->mul(elems[i][k], elems[j][k]);
      auto it = index.find(prod);
      require(it != index.end(), "simplicial kernel not closed under multiplication");
      table[i * n3 + j] = it->second;
    }
  GroupPtr G3 = internal_group(n3, std::move(table), "cosk3");

  TruncatedSimplicialGroup out = g;
  out.depth = 3;
  out.levels.push_back(G3);
  out.face.resize(4);
  out.degen.resize(4);
  for (int i = 0; i < 4; ++i) {
    std::vector<int> m(n3);
    for (int x = 0; x < n3; ++x) m[x] = elems[x][i];
    out.face[3].push_back(make_hom(G3, G2, std::move(m)));
  }
  // degeneracies determined by the face relations they must satisfy
  const auto& s0low = g.s(1, 0).map;
  const auto& s1low = g.s(1, 1).map;
  auto degen_into = [&](int which) {
    std::vector<int> m(G2->n);
    for (int x = 0; x < G2->n; ++x) {
      std::array<int, 4> t;
      if (which == 0)
        t = {x, x, s0low[d1[x]], s0low[d2[x]]};
      else if (which == 1)
        t = {s0low[d0[x]], x, x, s1low[d2[x]]};
      else
        t = {s1low[d0[x]], s1low[d1[x]], x, x};
      auto it = index.find(t);
      require(it != index.end(), "degeneracy misses the simplicial kernel");
      m[x] = it->second;
    }
    return make_hom(G2, G3, std::move(m));
  };
  out.degen[2] = {degen_into(0), degen_into(1), degen_into(2)};
  return out;
}

Subgroup degenerate_subgroup(const TruncatedSimplicialGroup& g, int n) {
  require(n >= 1 && n <= g.depth, "degenerate subgroup needs 1 <= n <= depth");
  std::vector<int> gens;
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < g.level(n - 1)->n; ++x) gens.push_back(g.s(n - 1, i).map[x]);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup_generated(g.level(n), gens);
}

std::vector<PairingIndex> supported_pairings(int n) {
  if (n == 2) return {{2, {1}, {0}}};
  if (n == 3)
    return {{3, {1, 0}, {2}}, {3, {2, 0}, {1}}, {3, {0}, {2, 1}},
            {3, {0}, {1}},    {3, {0}, {2}},    {3, {1}, {2}}};
  return {};
}

namespace {

bool same_pairing(const PairingIndex& a, const PairingIndex& b) {
  return a.n == b.n && a.alpha == b.alpha && a.beta == b.beta;
}

int apply_degeneracy_word(const TruncatedSimplicialGroup& g, const std::vector<int>& word,
                          int start_level, int x) {
  // word = (i_r, ..., i_1); apply s_{i_1} first
  int level = start_level;
  int v = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    v = g.s(level, *it).map[v];
    ++level;
  }
  return v;
}

}  // namespace

int peiffer_pairing(const TruncatedSimplicialGroup& g, const MooreComplex& moore,
                    const PairingIndex& idx, int x, int y) {
  const auto supported = supported_pairings(idx.n);
  const bool ok = std::any_of(supported.begin(), supported.end(),
                              [&](const PairingIndex& p) { return same_pairing(p, idx); });
  if (!ok) throw error(errc::unsupported_pairing, "pairing outside the supported list");
  require(idx.n <= g.depth, "pairing level exceeds the truncation depth");

  const int la = idx.n - static_cast<int>(idx.alpha.size());
  const int lb = idx.n - static_cast<int>(idx.beta.size());
  if (x < 0 || x >= g.level(la)->n || !moore.terms[la].contains(x))
    throw error(errc::element_not_in_moore, "first argument is not in the Moore term", {x});
  if (y < 0 || y >= g.level(lb)->n || !moore.terms[lb].contains(y))
    throw error(errc::element_not_in_moore, "second argument is not in the Moore term", {y});

  const Group& Gn = *g.level(idx.n);
  const int sx = apply_degeneracy_word(g, idx.alpha, la, x);
  const int sy = apply_degeneracy_word(g, idx.beta, lb, y);
  int v = Gn.comm(sx, sy);
  for (int j = 0; j < idx.n; ++j) {
    const int dj = g.d(idx.n, j).map[v];
    v = Gn.mul(v, Gn.inv(g.s(idx.n - 1, j).map[dj]));
  }
  require(moore.terms[idx.n].contains(v), "projection missed the Moore term");
  return v;
}

Subgroup pairing_normal_subgroup(const TruncatedSimplicialGroup& g, int n) {
  require(n >= 2 && n <= g.depth, "pairing subgroup needs 2 <= n <= depth");
  MooreComplex moore = moore_complex(g);
  std::vector<int> values;
  for (const auto& idx : supported_pairings(n)) {
    const int la = n - static_cast<int>(idx.alpha.size());
    const int lb = n - static_cast<int>(idx.beta.size());
    for (int x : moore.terms[la].elements)
      for (int y : moore.terms[lb].elements) values.push_back(peiffer_pairing(g, moore, idx, x, y));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return normal_closure(g.level(n), values);
}

}  // namespace xsq
