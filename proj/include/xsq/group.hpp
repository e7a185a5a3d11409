#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xsq {

enum class errc {
  non_associative,
  no_identity,
  no_inverse,
  not_homomorphism,
  row_not_automorphism,
  not_action,
  not_normal,
  order_too_large,
  not_cat1,
  not_cat2,
  depth_too_shallow,
  hypothesis_g3_not_degenerate,
  unsupported_pairing,
  element_not_in_moore,
  matching_condition_empty,
  omega_not_well_defined,
  not_normal_image,
  parse_error,
  unsupported_conversion,
  unknown_demo,
  bad_structure,
};

/// Thrown on precondition violations. `witness` carries the offending
/// element indices when that makes sense (e.g. the triple breaking
/// associativity).
class error : public std::runtime_error {
 public:
  error(errc c, const std::string& msg, std::vector<int> w = {})
      : std::runtime_error(msg), code(c), witness(std::move(w)) {}
  errc code;
  std::vector<int> witness;
};

/// Finite group as a multiplication table over element indices 0..n-1.
/// Index 0 is always the identity; the inverse table is derived on
/// construction. Immutable after validation.
struct Group {
  int n = 1;
  std::vector<int> table;    // flattened n*n, table[a*n+b] = a*b
  std::vector<int> inverse;  // inverse[a]*a = a*inverse[a] = 0
  std::string name;

  int order() const { return n; }
  int mul(int a, int b) const { return table[a * n + b]; }
  int inv(int a) const { return inverse[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  // [a,b] = a b a^-1 b^-1
  int comm(int a, int b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  int pow(int a, int e) const;
  int element_order(int a) const;
  bool is_abelian() const;
};

using GroupPtr = std::shared_ptr<const Group>;

/// Group homomorphism given by its value table on the domain.
struct Hom {
  GroupPtr dom, cod;
  std::vector<int> map;
  int operator()(int x) const { return map[x]; }
};

/// Left action of `actor` on `target` by automorphisms;
/// table[g*target.n + x] is the index of g acting on x.
struct Action {
  GroupPtr actor, target;
  std::vector<int> table;
  int apply(int g, int x) const { return table[g * target->n + x]; }
};

/// Subset of a parent group closed under multiplication and inverse,
/// always containing the identity. Elements are kept sorted.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elements;
  std::vector<char> mask;  // parent.n chars, 1 iff member
  int size() const { return static_cast<int>(elements.size()); }
  bool contains(int x) const { return mask[x] != 0; }
};

/// Result of the semidirect product K x| A for an action of A on K.
/// Pairs (k,a) are indexed as k*|A|+a, so (0,0) is the identity.
struct SemidirectProduct {
  GroupPtr result;
  GroupPtr kernel, actor;
  Hom kernel_injection;  // k -> (k,0)
  Hom actor_injection;   // a -> (0,a)
  Hom projection;        // (k,a) -> a
  int pair(int k, int a) const { return k * actor->n + a; }
  std::pair<int, int> unpair(int x) const { return {x / actor->n, x % actor->n}; }
};

/// Subgroup materialized as a group in its own right, with the
/// inclusion homomorphism and index translation both ways.
struct MaterializedSubgroup {
  GroupPtr group;
  Hom inclusion;               // group -> parent
  std::vector<int> to_parent;  // group index -> parent index
  std::vector<int> from_parent;  // parent index -> group index or -1
};

/// Quotient group together with the canonical projection.
struct QuotientResult {
  GroupPtr group;
  Hom projection;          // parent -> quotient
  std::vector<int> reps;   // quotient index -> smallest parent representative
};

// -- construction / validation ------------------------------------------

/// Validates a raw square table as a group (identity located and moved to
/// index 0 by relabeling, associativity checked exhaustively, two-sided
/// inverses). Throws error{no_identity | non_associative | no_inverse}.
GroupPtr make_group(const std::vector<std::vector<int>>& table, std::string name = "");

/// Construction path for groups that are correct by construction
/// (semidirect products, subgroups, quotients, matched tuple groups).
/// Only identity and inverses are derived; associativity is not re-checked.
GroupPtr internal_group(int n, std::vector<int> flat_table, std::string name);

/// Validates a homomorphism table. Throws error{not_homomorphism} naming
/// the first violating pair.
Hom make_hom(GroupPtr dom, GroupPtr cod, std::vector<int> map);

/// Validates an action table: each row an automorphism of the target,
/// identity row trivial, composition law. Throws
/// error{row_not_automorphism | not_action}.
Action make_action(GroupPtr actor, GroupPtr target, const std::vector<std::vector<int>>& table);
Action make_action_flat(GroupPtr actor, GroupPtr target, std::vector<int> flat);

Action trivial_action(GroupPtr actor, GroupPtr target);
/// Conjugation of a group on one of its normal subgroups, expressed on the
/// materialized subgroup's own indices.
Action conjugation_action(GroupPtr g, const MaterializedSubgroup& sub);

SemidirectProduct semidirect(const Action& act);

// -- subgroup machinery ---------------------------------------------------

Subgroup trivial_subgroup(GroupPtr g);
Subgroup full_subgroup(GroupPtr g);
Subgroup subgroup_generated(GroupPtr g, const std::vector<int>& gens);
Subgroup normal_closure(GroupPtr g, const std::vector<int>& gens);

/// Returns a conjugation witness (g, x) with g x g^-1 outside the subgroup,
/// or nothing when the subgroup is normal.
std::optional<std::pair<int, int>> normality_witness(const Subgroup& s);

Subgroup kernel(const Hom& h);
Subgroup image(const Hom& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup commutator_subgroup(GroupPtr g);

MaterializedSubgroup materialize(const Subgroup& s, std::string name = "");

/// Quotient by a normal subgroup; the coset of the identity becomes index 0
/// and cosets are ordered by their smallest member. Throws error{not_normal}.
QuotientResult quotient(GroupPtr g, const Subgroup& n);
QuotientResult abelianization(GroupPtr g);

// -- isomorphism testing --------------------------------------------------

/// Brute-force isomorphism test for small groups: invariant fingerprints
/// first, then generator-image search. Throws error{order_too_large} above
/// the bound.
bool is_isomorphic(const GroupPtr& a, const GroupPtr& b, int max_order = 64);
std::optional<std::vector<int>> find_isomorphism(const GroupPtr& a, const GroupPtr& b,
                                                 int max_order = 64);

// -- helpers ---------------------------------------------------------------

bool same_group(const GroupPtr& a, const GroupPtr& b);
Hom identity_hom(GroupPtr g);
Hom compose(const Hom& f, const Hom& g);  // f after g
bool hom_equal(const Hom& f, const Hom& g);
Hom trivial_hom(GroupPtr dom, GroupPtr cod);

}  // namespace xsq
