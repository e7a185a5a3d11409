#include "xsq/homotopy.hpp"

#include <algorithm>
#include <map>

#include "xsq/builtins.hpp"

namespace xsq {

namespace {

Subgroup image_as_subgroup(const GroupPtr& parent, const std::vector<int>& values) {
  Subgroup s;
  s.parent = parent;
  s.mask.assign(parent->n, 0);
  for (int v : values) s.mask[v] = 1;
  for (int x = 0; x < parent->n; ++x)
    if (s.mask[x]) s.elements.push_back(x);
  return s;
}

/// Quotient of `num` (a materialized subgroup of some ambient group) by the
/// image values given in ambient coordinates; checks normality.
GroupPtr subquotient(const MaterializedSubgroup& num, const std::vector<int>& image_parent,
                     const char* what) {
  std::vector<int> inside;
  for (int v : image_parent) {
    const int i = num.from_parent[v];
    if (i < 0)
      throw error(errc::not_normal_image, std::string(what) + ": image leaves the kernel", {v});
    inside.push_back(i);
  }
  Subgroup div = subgroup_generated(num.group, image_as_subgroup(num.group, inside).elements);
  if (auto w = normality_witness(div))
    throw error(errc::not_normal_image, std::string(what) + ": image is not normal",
                {w->first, w->second});
  return quotient(num.group, div).group;
}

}  // namespace

HomotopySignature homotopy_simplicial(const TruncatedSimplicialGroup& g) {
  MooreComplex mc = moore_complex(g);
  HomotopySignature out;

  {
    std::vector<int> img;
    if (g.depth >= 1)
      for (int x = 0; x < mc.term_groups[1].group->n; ++x)
        img.push_back(g.d(1, 1).map[mc.term_groups[1].to_parent[x]]);
    MaterializedSubgroup whole = materialize(full_subgroup(g.level(0)), "NG0");
    out.pi1 = subquotient(whole, img, "pi1");
  }

  if (g.depth >= 1) {
    Subgroup z = intersect(kernel(g.d(1, 1)), mc.terms[1]);
    MaterializedSubgroup zm = materialize(z, "Z1");
    std::vector<int> img;
    if (g.depth >= 2)
      for (int x = 0; x < mc.term_groups[2].group->n; ++x)
        img.push_back(g.d(2, 2).map[mc.term_groups[2].to_parent[x]]);
    out.pi2 = subquotient(zm, img, "pi2");
  } else {
    out.pi2 = trivial_group();
  }

  if (g.depth >= 2) {
    Subgroup z = intersect(kernel(g.d(2, 2)), mc.terms[2]);
    MaterializedSubgroup zm = materialize(z, "Z2");
    if (g.depth >= 3) {
      std::vector<int> img;
      for (int x = 0; x < mc.term_groups[3].group->n; ++x)
        img.push_back(g.d(3, 3).map[mc.term_groups[3].to_parent[x]]);
      out.pi3 = subquotient(zm, img, "pi3");
    } else {
      out.pi3 = zm.group;
      out.pi3_kernel_only = true;
    }
  } else {
    out.pi3 = trivial_group();
  }

  out.pi2_abelian = out.pi2->is_abelian();
  out.pi3_abelian = out.pi3->is_abelian();
  return out;
}

namespace {

HomotopySignature homotopy_of_complex(const GroupPtr& bottom, const Hom& d1, const Hom& d2) {
  // bottom <- M <- L with maps d1 : M -> bottom, d2 : L -> M
  HomotopySignature out;
  {
    MaterializedSubgroup whole = materialize(full_subgroup(bottom), "N");
    out.pi1 = subquotient(whole, d1.map, "pi1");
  }
  {
    MaterializedSubgroup z = materialize(kernel(d1), "ker d1");
    std::vector<int> img;
    for (int l = 0; l < d2.dom->n; ++l) img.push_back(d2.map[l]);
    out.pi2 = subquotient(z, img, "pi2");
  }
  out.pi3 = materialize(kernel(d2), "ker d2").group;
  out.pi2_abelian = out.pi2->is_abelian();
  out.pi3_abelian = out.pi3->is_abelian();
  return out;
}

}  // namespace

HomotopySignature homotopy_two_crossed(const TwoCrossedModule& t) {
  return homotopy_of_complex(t.N, t.d1, t.d2);
}

HomotopySignature homotopy_quadratic(const QuadraticModule& q) {
  return homotopy_of_complex(q.N, q.boundary, q.delta);
}

HomotopySignature homotopy_square(const CrossedSquare& s) {
  return homotopy_two_crossed(two_crossed_from_square(s));
}

bool signatures_isomorphic(const HomotopySignature& a, const HomotopySignature& b,
                           int max_order) {
  return is_isomorphic(a.pi1, b.pi1, max_order) && is_isomorphic(a.pi2, b.pi2, max_order) &&
         is_isomorphic(a.pi3, b.pi3, max_order);
}

// -- descriptions ----------------------------------------------------------------

namespace {

std::vector<int> order_histogram(const Group& g) {
  std::vector<int> h(g.n + 1, 0);
  for (int x = 0; x < g.n; ++x) ++h[g.element_order(x)];
  return h;
}

// all multisets of prime powers (elementary divisors) with the given product
void elementary_divisor_sets(int n, int min_factor, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
  if (n == 1) {
    out.push_back(cur);
    return;
  }
  for (int d = min_factor; d <= n; ++d) {
    if (n % d != 0) continue;
    // d must be a prime power
    int m = d, p = 0;
    for (int f = 2; f * f <= m; ++f)
      if (m % f == 0) {
        p = f;
        break;
      }
    if (p == 0) p = m;
    while (m % p == 0) m /= p;
    if (m != 1) continue;
    cur.push_back(d);
    elementary_divisor_sets(n / d, d, cur, out);
    cur.pop_back();
  }
}

std::vector<int> invariant_factors(std::vector<int> elementary) {
  // group by prime, sort descending, zip into a divisibility chain
  std::map<int, std::vector<int>> by_prime;
  for (int d : elementary) {
    int p = 2;
    while (d % p != 0) ++p;
    by_prime[p].push_back(d);
  }
  size_t k = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    k = std::max(k, v.size());
  }
  std::vector<int> factors(k, 1);
  for (auto& [p, v] : by_prime)
    for (size_t i = 0; i < v.size(); ++i) factors[i] *= v[i];
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace

std::string abelian_structure_name(const GroupPtr& g) {
  if (g->n == 1) return "1";
  if (!g->is_abelian() || g->n > 16) return "";
  const std::vector<int> hist = order_histogram(*g);
  std::vector<std::vector<int>> candidates;
  std::vector<int> cur;
  elementary_divisor_sets(g->n, 2, cur, candidates);
  for (const auto& type : candidates) {
    GroupPtr model = cyclic_group(type[0]);
    for (size_t i = 1; i < type.size(); ++i) model = direct_product(model, cyclic_group(type[i]));
    if (order_histogram(*model) == hist) {
      std::string name;
      for (int f : invariant_factors(type)) {
        if (!name.empty()) name += "x";
        name += "C" + std::to_string(f);
      }
      return name;
    }
  }
  return "";
}

std::string describe_group(const GroupPtr& g) {
  std::string s = "order " + std::to_string(g->n);
  s += g->is_abelian() ? ", abelian" : ", nonabelian";
  const std::string name = abelian_structure_name(g);
  if (!name.empty()) {
    s += ", " + name;
  } else if (g->n > 1) {
    // element-order fingerprint: order:count pairs
    const std::vector<int> hist = order_histogram(*g);
    std::string fp;
    for (int d = 1; d <= g->n; ++d)
      if (hist[d] > 0) fp += (fp.empty() ? "" : " ") + std::to_string(d) + ":" +
                             std::to_string(hist[d]);
    s += ", orders {" + fp + "}";
  }
  return s;
}

std::string describe_signature(const HomotopySignature& s) {
  auto one = [](const GroupPtr& g) {
    const std::string n = abelian_structure_name(g);
    return n.empty() ? describe_group(g) : n;
  };
  std::string out = "pi1 = " + one(s.pi1) + "; pi2 = " + one(s.pi2) + "; pi3 = " + one(s.pi3);
  if (s.pi3_kernel_only) out += " (depth-2 kernel)";
  return out;
}

}  // namespace xsq
