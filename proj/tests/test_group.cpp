#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "xsq/builtins.hpp"
#include "xsq/group.hpp"

using namespace xsq;

namespace {

// test-local oracle: permutations of {0,1,2} under (f*g)(x) = f(g(x))
using Perm = std::vector<int>;

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm compose_perm(const Perm& f, const Perm& g) {
  Perm out(f.size());
  for (size_t x = 0; x < f.size(); ++x) out[x] = f[g[x]];
  return out;
}

bool is_even(const Perm& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0;
}

std::vector<std::vector<int>> s3_table_from_perms() {
  const auto perms = all_perms(3);
  auto index_of = [&](const Perm& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a][b] = index_of(compose_perm(perms[a], perms[b]));
  return t;
}

std::vector<int> even_indices() {
  const auto perms = all_perms(3);
  std::vector<int> out;
  for (int i = 0; i < 6; ++i)
    if (is_even(perms[i])) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("make_group validates and relabels") {
  GroupPtr c2 = make_group({{0, 1}, {1, 0}});
  CHECK(c2->n == 2);
  CHECK(c2->mul(1, 1) == 0);

  GroupPtr s3 = make_group(s3_table_from_perms(), "S3");
  CHECK(s3->n == 6);
  CHECK_FALSE(s3->is_abelian());
  // matches the library builtin exactly (same enumeration convention)
  CHECK(s3->table == symmetric_group(3)->table);

  // no inverse for the absorbing element
  CHECK_THROWS_AS(make_group({{0, 1}, {1, 1}}), error);
  try {
    make_group({{0, 1}, {1, 1}});
  } catch (const error& e) {
    CHECK(e.code == errc::no_inverse);
    CHECK(e.witness == std::vector<int>{1});
  }

  // C3 with the identity parked at index 2: relabeling restores index 0
  // (built by conjugating the C3 table with the swap 0 <-> 2)
  GroupPtr c3 = cyclic_group(3);
  std::vector<std::vector<int>> shifted(3, std::vector<int>(3));
  auto sw = [](int x) { return x == 0 ? 2 : x == 2 ? 0 : x; };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) shifted[sw(a)][sw(b)] = sw(c3->mul(a, b));
  GroupPtr relabeled = make_group(shifted);
  CHECK(relabeled->mul(0, 1) == 1);
  CHECK(is_isomorphic(relabeled, c3));

  // order-5 loop with identity but broken associativity
  CHECK_THROWS_AS(make_group({{0, 1, 2, 3, 4},
                              {1, 0, 3, 4, 2},
                              {2, 3, 4, 0, 1},
                              {3, 4, 1, 2, 0},
                              {4, 2, 0, 1, 3}}),
                  error);
  try {
    make_group({{0, 1, 2, 3, 4},
                {1, 0, 3, 4, 2},
                {2, 3, 4, 0, 1},
                {3, 4, 1, 2, 0},
                {4, 2, 0, 1, 3}});
  } catch (const error& e) {
    CHECK(e.code == errc::non_associative);
    CHECK(e.witness.size() == 3);
  }

  // identity away from index 0 is fine (relabeled), but no identity at all throws
  CHECK_NOTHROW(make_group({{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(make_group({{0, 0}, {0, 0}}), error);
}

TEST_CASE("make_hom accepts homs and reports the first violating pair") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c2 = cyclic_group(2);
  CHECK_NOTHROW(make_hom(s3, s3, {0, 1, 2, 3, 4, 5}));

  // sign map, computed from the parity oracle
  const auto perms = all_perms(3);
  std::vector<int> sign(6);
  for (int i = 0; i < 6; ++i) sign[i] = is_even(perms[i]) ? 0 : 1;
  CHECK_NOTHROW(make_hom(s3, c2, sign));

  GroupPtr c4 = cyclic_group(4);
  try {
    make_hom(c4, c4, {0, 2, 1, 3});
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == errc::not_homomorphism);
    CHECK(e.witness == std::vector<int>{1, 1});
  }
}

TEST_CASE("make_action validates rows and the composition law") {
  GroupPtr c2 = cyclic_group(2);
  GroupPtr c3 = cyclic_group(3);
  GroupPtr s3 = symmetric_group(3);

  CHECK_NOTHROW(trivial_action(s3, c3));
  // C2 on C3 by inversion
  CHECK_NOTHROW(make_action(c2, c3, {{0, 1, 2}, {0, 2, 1}}));

  // conjugation of S3 on A3, via the subgroup machinery
  MaterializedSubgroup a3 = materialize(subgroup_generated(s3, even_indices()));
  CHECK(a3.group->n == 3);
  CHECK_NOTHROW(conjugation_action(s3, a3));

  // constant row is not an automorphism
  try {
    make_action(c2, c3, {{0, 1, 2}, {0, 0, 0}});
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == errc::row_not_automorphism);
  }
  // valid rows, broken composition: C4 acting with period-2 pattern broken
  GroupPtr c4 = cyclic_group(4);
  try {
    make_action(c4, c3, {{0, 1, 2}, {0, 2, 1}, {0, 2, 1}, {0, 1, 2}});
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code == errc::not_action);
  }
}

TEST_CASE("semidirect products") {
  GroupPtr c2 = cyclic_group(2);
  GroupPtr c3 = cyclic_group(3);
  GroupPtr s3 = make_group(s3_table_from_perms());

  Action inversion = make_action(c2, c3, {{0, 1, 2}, {0, 2, 1}});
  SemidirectProduct sp = semidirect(inversion);
  CHECK(sp.result->n == 6);
  CHECK(is_isomorphic(sp.result, s3));

  SemidirectProduct direct = semidirect(trivial_action(c2, c3));
  CHECK(is_isomorphic(direct.result, cyclic_group(6)));

  SemidirectProduct only_kernel = semidirect(trivial_action(trivial_group(), s3));
  CHECK(is_isomorphic(only_kernel.result, s3));

  // stored table matches the pair formula everywhere
  for (int k1 = 0; k1 < 3; ++k1)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int k2 = 0; k2 < 3; ++k2)
        for (int a2 = 0; a2 < 2; ++a2) {
          const int lhs = sp.result->mul(sp.pair(k1, a1), sp.pair(k2, a2));
          const int rhs =
              sp.pair(c3->mul(k1, inversion.apply(a1, k2)), c2->mul(a1, a2));
          CHECK(lhs == rhs);
        }

  // injections and projection behave
  CHECK(sp.projection.map[sp.pair(2, 1)] == 1);
  CHECK(sp.kernel_injection.map[2] == sp.pair(2, 0));
}

TEST_CASE("subgroup generation and normal closure in S3") {
  GroupPtr s3 = symmetric_group(3);
  const auto evens = even_indices();

  CHECK(subgroup_generated(s3, {}).elements == std::vector<int>{0});

  Subgroup a3 = subgroup_generated(s3, {evens[1]});
  CHECK(a3.elements == evens);

  // a transposition and a 3-cycle generate everything
  Subgroup whole = subgroup_generated(s3, {1, evens[1]});
  CHECK(whole.size() == 6);

  CHECK(normal_closure(s3, {0}).size() == 1);
  CHECK(normal_closure(s3, {1}).size() == 6);       // any transposition
  CHECK(normal_closure(s3, {evens[1]}).elements == evens);
}

TEST_CASE("quotients") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = subgroup_generated(s3, even_indices());

  QuotientResult q = quotient(s3, a3);
  CHECK(q.group->n == 2);
  CHECK(is_isomorphic(q.group, cyclic_group(2)));
  CHECK(q.projection.map[0] == 0);

  QuotientResult by_trivial = quotient(s3, trivial_subgroup(s3));
  CHECK(by_trivial.group->n == 6);
  CHECK(is_isomorphic(by_trivial.group, s3));

  QuotientResult by_all = quotient(s3, full_subgroup(s3));
  CHECK(by_all.group->n == 1);

  Subgroup not_normal = subgroup_generated(s3, {1});
  CHECK(not_normal.size() == 2);
  CHECK_THROWS_AS(quotient(s3, not_normal), error);
}

TEST_CASE("abelianization") {
  GroupPtr c6 = cyclic_group(6);
  QuotientResult ab = abelianization(c6);
  CHECK(ab.group->n == 6);
  CHECK(is_isomorphic(ab.group, c6));

  QuotientResult s3ab = abelianization(symmetric_group(3));
  CHECK(is_isomorphic(s3ab.group, cyclic_group(2)));

  QuotientResult q8ab = abelianization(quaternion_group());
  CHECK(is_isomorphic(q8ab.group, klein_four_group()));

  // kernel of the projection is exactly the commutator closure
  GroupPtr s3 = symmetric_group(3);
  Subgroup comm = commutator_subgroup(s3);
  Subgroup ker = kernel(abelianization(s3).projection);
  CHECK(comm.elements == ker.elements);
  CHECK(abelianization(s3).group->is_abelian());
}

TEST_CASE("kernel, image, intersect") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c2 = cyclic_group(2);
  const auto perms = all_perms(3);
  std::vector<int> sign(6);
  for (int i = 0; i < 6; ++i) sign[i] = is_even(perms[i]) ? 0 : 1;
  Hom sgn = make_hom(s3, c2, sign);

  CHECK(kernel(sgn).elements == even_indices());
  CHECK(image(trivial_hom(s3, c2)).elements == std::vector<int>{0});

  Subgroup a3 = subgroup_generated(s3, even_indices());
  CHECK(intersect(a3, a3).elements == a3.elements);
}

TEST_CASE("is_isomorphic distinguishes and identifies small groups") {
  CHECK_FALSE(is_isomorphic(cyclic_group(4), klein_four_group()));
  CHECK_FALSE(is_isomorphic(symmetric_group(3), cyclic_group(6)));
  CHECK(is_isomorphic(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3))));
  CHECK_FALSE(is_isomorphic(quaternion_group(), dihedral_group(4)));
  CHECK(is_isomorphic(dihedral_group(3), symmetric_group(3)));

  CHECK_THROWS_AS(is_isomorphic(cyclic_group(80), cyclic_group(80)), error);
  CHECK(is_isomorphic(cyclic_group(80), cyclic_group(80), 128));
}

TEST_CASE("is_isomorphic is an equivalence relation on the small-group corpus") {
  std::vector<GroupPtr> corpus = {
      trivial_group(),
      cyclic_group(2),
      cyclic_group(3),
      cyclic_group(4),
      klein_four_group(),
      cyclic_group(5),
      cyclic_group(6),
      symmetric_group(3),
      dihedral_group(3),
      cyclic_group(8),
      dihedral_group(4),
      quaternion_group(),
      direct_product(cyclic_group(2), cyclic_group(4)),
      direct_product(cyclic_group(2), klein_four_group()),
      cyclic_group(12),
      direct_product(cyclic_group(2), cyclic_group(6)),
      dihedral_group(6),
      direct_product(cyclic_group(4), cyclic_group(4)),
      direct_product(klein_four_group(), klein_four_group()),
      cyclic_group(16),
  };
  const int n = static_cast<int>(corpus.size());
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rel[i][j] = is_isomorphic(corpus[i], corpus[j]);
  for (int i = 0; i < n; ++i) CHECK(rel[i][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK(rel[i][j] == rel[j][i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) CHECK(rel[i][k]);
}

TEST_CASE("quotient by a normal closure never throws") {
  GroupPtr d4 = dihedral_group(4);
  for (int a = 0; a < d4->n; ++a)
    for (int b = 0; b < d4->n; ++b) CHECK_NOTHROW(quotient(d4, normal_closure(d4, {a, b})));
}
