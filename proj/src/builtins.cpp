#include "xsq/builtins.hpp"

#include <algorithm>
#include <numeric>

namespace xsq {

GroupPtr trivial_group() { return internal_group(1, {0}, "1"); }

GroupPtr cyclic_group(int n) {
  if (n < 1) throw error(errc::parse_error, "cyclic group needs order >= 1");
  std::vector<int> t(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return internal_group(n, std::move(t), "C" + std::to_string(n));
}

GroupPtr dihedral_group(int n) {
  if (n < 1) throw error(errc::parse_error, "dihedral group needs n >= 1");
  const int m = 2 * n;
  // index e*n+k represents r^k s^e; s r^k s = r^-k
  std::vector<int> t(static_cast<size_t>(m) * m);
  for (int e1 = 0; e1 < 2; ++e1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int e2 = 0; e2 < 2; ++e2)
        for (int k2 = 0; k2 < n; ++k2) {
          const int k = ((k1 + (e1 ? n - k2 : k2)) % n + n) % n;
          const int e = e1 ^ e2;
          t[(e1 * n + k1) * m + (e2 * n + k2)] = e * n + k;
        }
  return internal_group(m, std::move(t), "D" + std::to_string(n));
}

GroupPtr symmetric_group(int n) {
  if (n < 1 || n > 5) throw error(errc::parse_error, "symmetric group supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> t(static_cast<size_t>(m) * m);
  std::vector<int> comp(n);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      t[a * m + b] = index_of(comp);
    }
  // the identity permutation is lexicographically first, so index 0
  return internal_group(m, std::move(t), "S" + std::to_string(n));
}

GroupPtr quaternion_group() {
  // indices: 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  // unit part u in {0:1, 1:i, 2:j, 3:k}, element = sign*4-ish encoding below
  auto enc = [](int sign, int unit) {  // sign 0:+ 1:-
    static const int idx[2][4] = {{0, 2, 4, 6}, {1, 3, 5, 7}};
    return idx[sign][unit];
  };
  // product of units: result unit and sign
  static const int umul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int usgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  // usgn[i][j]: sign of unit_i * unit_j with i,j in {1,i,j,k};
  // i*i=-1, i*j=k, i*k=-j, j*i=-k, j*j=-1, j*k=i, k*i=j, k*j=-i, k*k=-1
  std::vector<int> t(64);
  for (int s1 = 0; s1 < 2; ++s1)
    for (int u1 = 0; u1 < 4; ++u1)
      for (int s2 = 0; s2 < 2; ++s2)
        for (int u2 = 0; u2 < 4; ++u2)
          t[enc(s1, u1) * 8 + enc(s2, u2)] = enc(s1 ^ s2 ^ usgn[u1][u2], umul[u1][u2]);
  return internal_group(8, std::move(t), "Q8");
}

GroupPtr klein_four_group() {
  std::vector<int> t(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a * 4 + b] = a ^ b;
  return internal_group(4, std::move(t), "V4");
}

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  const int n = a->n * b->n;
  std::vector<int> t(static_cast<size_t>(n) * n);
  for (int a1 = 0; a1 < a->n; ++a1)
    for (int b1 = 0; b1 < b->n; ++b1)
      for (int a2 = 0; a2 < a->n; ++a2)
        for (int b2 = 0; b2 < b->n; ++b2)
          t[(a1 * b->n + b1) * n + (a2 * b->n + b2)] = a->mul(a1, a2) * b->n + b->mul(b1, b2);
  std::string nm = (a->name.empty() || b->name.empty()) ? "" : a->name + "x" + b->name;
  return internal_group(n, std::move(t), std::move(nm));
}

GroupPtr builtin_group(const std::string& kind, int n) {
  if (kind == "cyclic") return cyclic_group(n);
  if (kind == "dihedral") return dihedral_group(n);
  if (kind == "symmetric") return symmetric_group(n);
  if (kind == "quaternion8") return quaternion_group();
  if (kind == "klein4") return klein_four_group();
  if (kind == "trivial") return trivial_group();
  throw error(errc::parse_error, "unknown builtin group kind: " + kind);
}

}  // namespace xsq
