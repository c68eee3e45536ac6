#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qhs {

// Dense element index in [0, |G|). The identity is always 0.
using Elem = std::size_t;

enum class GroupKind {
  cyclic,     // Z_N, residues ascending
  product,    // Z_N1 x ... x Z_Nm, mixed radix with the first factor most significant
  dihedral,   // D_N: e, r, ..., r^{N-1}, s, rs, ..., r^{N-1}s
  tabulated,  // explicit Cayley table; produced by quotient_group
};

// Largest order for which op is served. Composition is computed, never
// tabulated, for the built-in kinds.
inline constexpr std::size_t kMaxGroupOrder = 4096;

class FiniteGroup {
 public:
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup product(std::vector<std::size_t> moduli);
  static FiniteGroup dihedral(std::size_t n);
  // table[a * order + b] = a*b. Group axioms are checked; index 0 must be the identity.
  static FiniteGroup tabulated(std::vector<Elem> table, std::size_t order, std::string name);

  // Grammar: "Z6", "Z2^3", "Z2xZ4", "Z2^2xZ3", "D4".
  static FiniteGroup parse(std::string_view spec);

  GroupKind kind() const { return kind_; }
  std::size_t order() const { return order_; }
  // {N} for cyclic and dihedral, the factor list for products, empty for tabulated.
  const std::vector<std::size_t>& moduli() const { return moduli_; }
  bool is_abelian() const { return abelian_; }
  // Canonical spec string; parse(name()) reproduces the group.
  std::string name() const;

  Elem identity() const { return 0; }
  Elem op(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  // Throws DomainError when a is out of range.
  void check(Elem a) const;

  // "3", "(1,0,1)", "r^2s"
  std::string label(Elem a) const;

  // Product kinds only.
  std::vector<std::size_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::size_t> digits) const;

  // Dihedral kinds only: r^a and r^a s.
  Elem rotation(std::size_t a) const;
  Elem reflection(std::size_t a) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b);

 private:
  FiniteGroup(GroupKind kind, std::vector<std::size_t> moduli, std::size_t order);

  GroupKind kind_;
  std::vector<std::size_t> moduli_;
  std::size_t order_;
  bool abelian_ = true;
  std::string tab_name_;
  std::shared_ptr<const std::vector<Elem>> table_;
  std::shared_ptr<const std::vector<Elem>> inverse_;
};

struct Subgroup {
  FiniteGroup parent;
  std::vector<Elem> elements;    // sorted
  std::vector<Elem> generators;
  bool normal = false;

  std::size_t order() const { return elements.size(); }
  bool contains(Elem g) const;
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

// Closure of gens under op; normal flag is computed.
Subgroup subgroup_from_generators(const FiniteGroup& g, std::span<const Elem> gens);

// Validates that `elements` is closed and contains the identity.
Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elem> elements);

bool is_closed_subset(const FiniteGroup& g, std::span<const Elem> sorted_elements);
bool is_normal(const FiniteGroup& g, const Subgroup& k);

// Left cosets gK ordered by least element. Block 0 is K itself.
struct CosetPartition {
  std::vector<Elem> representatives;
  std::vector<std::vector<Elem>> blocks;
  std::vector<std::size_t> coset_of;  // element -> block index

  std::size_t count() const { return blocks.size(); }
};

CosetPartition cosets(const FiniteGroup& g, const Subgroup& k);

// G/K on the coset indices of cosets(G, K), with the epimorphism nu.
struct QuotientGroup {
  FiniteGroup group;
  CosetPartition partition;

  Elem project(Elem g) const { return partition.coset_of.at(g); }
};

// Refuses non-normal K: the induced product would not be well defined.
QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& k);

inline constexpr std::size_t kMaxSubgroupEnumerationOrder = 64;

// Every subgroup, sorted by (order, element list). |G| <= 64.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

// Groups used for exhaustive sweeps: every cyclic, dihedral and product
// group (sorted moduli >= 2, at least two factors) of order <= max_order.
std::vector<FiniteGroup> builtin_catalog(std::size_t max_order);

}  // namespace qhs
