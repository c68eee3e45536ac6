#include "qhs/group.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>

#include "qhs/error.hpp"

namespace qhs {

namespace {

std::size_t checked_product(std::span<const std::size_t> moduli) {
  std::size_t order = 1;
  for (std::size_t m : moduli) {
    if (m == 0) throw DomainError("group modulus must be positive");
    if (order > kMaxGroupOrder / m) throw DomainError("group order exceeds " + std::to_string(kMaxGroupOrder));
    order *= m;
  }
  return order;
}

std::size_t parse_uint(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw DomainError("malformed group spec '" + std::string(whole) + "'");
  return value;
}

}  // namespace

FiniteGroup::FiniteGroup(GroupKind kind, std::vector<std::size_t> moduli, std::size_t order)
    : kind_(kind), moduli_(std::move(moduli)), order_(order) {}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  const std::size_t order = checked_product(std::span(&n, 1));
  return FiniteGroup(GroupKind::cyclic, {n}, order);
}

FiniteGroup FiniteGroup::product(std::vector<std::size_t> moduli) {
  if (moduli.empty()) throw DomainError("product group needs at least one factor");
  const std::size_t order = checked_product(moduli);
  return FiniteGroup(GroupKind::product, std::move(moduli), order);
}

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  if (n == 0 || 2 * n > kMaxGroupOrder) throw DomainError("dihedral group D_N needs 1 <= 2N <= 4096");
  FiniteGroup g(GroupKind::dihedral, {n}, 2 * n);
  g.abelian_ = n <= 2;
  return g;
}

FiniteGroup FiniteGroup::tabulated(std::vector<Elem> table, std::size_t order, std::string name) {
  if (order == 0 || order > kMaxGroupOrder) throw DomainError("tabulated group order out of range");
  if (table.size() != order * order) throw DomainError("Cayley table has wrong size");
  for (Elem x : table)
    if (x >= order) throw DomainError("Cayley table entry out of range");
  auto at = [&](Elem a, Elem b) { return table[a * order + b]; };
  std::vector<Elem> inverse(order, order);
  for (Elem a = 0; a < order; ++a) {
    if (at(0, a) != a || at(a, 0) != a) throw DomainError("Cayley table: index 0 is not the identity");
    for (Elem b = 0; b < order; ++b)
      if (at(a, b) == 0) inverse[a] = b;
    if (inverse[a] == order || at(inverse[a], a) != 0) throw DomainError("Cayley table: missing inverse");
  }
  bool abelian = true;
  for (Elem a = 0; a < order; ++a) {
    for (Elem b = 0; b < order; ++b) {
      if (at(a, b) != at(b, a)) abelian = false;
      for (Elem c = 0; c < order; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) throw DomainError("Cayley table is not associative");
    }
  }
  FiniteGroup g(GroupKind::tabulated, {}, order);
  g.abelian_ = abelian;
  g.tab_name_ = std::move(name);
  g.table_ = std::make_shared<const std::vector<Elem>>(std::move(table));
  g.inverse_ = std::make_shared<const std::vector<Elem>>(std::move(inverse));
  return g;
}

FiniteGroup FiniteGroup::parse(std::string_view spec) {
  if (spec.empty()) throw DomainError("empty group spec");
  if (spec.front() == 'D') return dihedral(parse_uint(spec.substr(1), spec));

  std::vector<std::size_t> moduli;
  bool saw_power = false;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find('x', start);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view factor = spec.substr(start, end - start);
    if (factor.size() < 2 || factor.front() != 'Z') throw DomainError("malformed group spec '" + std::string(spec) + "'");
    factor.remove_prefix(1);
    std::size_t reps = 1;
    if (auto caret = factor.find('^'); caret != std::string_view::npos) {
      reps = parse_uint(factor.substr(caret + 1), spec);
      factor = factor.substr(0, caret);
      saw_power = true;
      if (reps == 0) throw DomainError("group spec exponent must be positive");
    }
    const std::size_t n = parse_uint(factor, spec);
    if (reps > 64) throw DomainError("group spec exponent too large");
    moduli.insert(moduli.end(), reps, n);
    start = end + 1;
  }
  if (moduli.size() == 1 && !saw_power) return cyclic(moduli.front());
  return product(std::move(moduli));
}

std::string FiniteGroup::name() const {
  switch (kind_) {
    case GroupKind::cyclic:
      return "Z" + std::to_string(moduli_[0]);
    case GroupKind::dihedral:
      return "D" + std::to_string(moduli_[0]);
    case GroupKind::tabulated:
      return tab_name_;
    case GroupKind::product: {
      std::string out;
      for (std::size_t i = 0; i < moduli_.size();) {
        std::size_t j = i;
        while (j < moduli_.size() && moduli_[j] == moduli_[i]) ++j;
        if (!out.empty()) out += 'x';
        out += "Z" + std::to_string(moduli_[i]);
        // A lone factor keeps its ^1 so that it reparses as a product.
        if (j - i > 1 || moduli_.size() == 1) out += "^" + std::to_string(j - i);
        i = j;
      }
      return out;
    }
  }
  return {};
}

void FiniteGroup::check(Elem a) const {
  if (a >= order_)
    throw DomainError("element index " + std::to_string(a) + " out of range for " + name());
}

Elem FiniteGroup::op(Elem a, Elem b) const {
  check(a);
  check(b);
  switch (kind_) {
    case GroupKind::cyclic:
      return (a + b) % order_;
    case GroupKind::product: {
      Elem out = 0;
      std::size_t place = order_;
      for (std::size_t m : moduli_) {
        place /= m;
        const std::size_t da = (a / place) % m;
        const std::size_t db = (b / place) % m;
        out += ((da + db) % m) * place;
      }
      return out;
    }
    case GroupKind::dihedral: {
      // (r^x s^u)(r^y s^v) = r^{x + (-1)^u y} s^{u+v}
      const std::size_t n = moduli_[0];
      const std::size_t x = a % n, u = a / n;
      const std::size_t y = b % n, v = b / n;
      const std::size_t rot = u == 0 ? (x + y) % n : (x + n - y) % n;
      return ((u + v) % 2) * n + rot;
    }
    case GroupKind::tabulated:
      return (*table_)[a * order_ + b];
  }
  return 0;
}

Elem FiniteGroup::inv(Elem a) const {
  check(a);
  switch (kind_) {
    case GroupKind::cyclic:
      return (order_ - a) % order_;
    case GroupKind::product: {
      Elem out = 0;
      std::size_t place = order_;
      for (std::size_t m : moduli_) {
        place /= m;
        out += ((m - (a / place) % m) % m) * place;
      }
      return out;
    }
    case GroupKind::dihedral: {
      const std::size_t n = moduli_[0];
      return a < n ? (n - a) % n : a;
    }
    case GroupKind::tabulated:
      return (*inverse_)[a];
  }
  return 0;
}

std::string FiniteGroup::label(Elem a) const {
  check(a);
  switch (kind_) {
    case GroupKind::cyclic:
    case GroupKind::tabulated:
      return std::to_string(a);
    case GroupKind::product: {
      std::string out = "(";
      auto d = digits(a);
      for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + std::to_string(d[i]);
      return out + ")";
    }
    case GroupKind::dihedral: {
      const std::size_t n = moduli_[0];
      const std::size_t x = a % n;
      std::string out;
      if (x == 1) out = "r";
      else if (x > 1) out = "r^" + std::to_string(x);
      if (a >= n) out += "s";
      return out.empty() ? "e" : out;
    }
  }
  return {};
}

std::vector<std::size_t> FiniteGroup::digits(Elem a) const {
  if (kind_ != GroupKind::product) throw DomainError("digits() needs a product group");
  check(a);
  std::vector<std::size_t> out(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    out[i] = a % moduli_[i];
    a /= moduli_[i];
  }
  return out;
}

Elem FiniteGroup::from_digits(std::span<const std::size_t> digits) const {
  if (kind_ != GroupKind::product) throw DomainError("from_digits() needs a product group");
  if (digits.size() != moduli_.size()) throw DomainError("digit count does not match factor count");
  Elem out = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= moduli_[i]) throw DomainError("digit out of range for its factor");
    out = out * moduli_[i] + digits[i];
  }
  return out;
}

Elem FiniteGroup::rotation(std::size_t a) const {
  if (kind_ != GroupKind::dihedral) throw DomainError("rotation() needs a dihedral group");
  return a % moduli_[0];
}

Elem FiniteGroup::reflection(std::size_t a) const {
  if (kind_ != GroupKind::dihedral) throw DomainError("reflection() needs a dihedral group");
  return moduli_[0] + a % moduli_[0];
}

bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.kind_ != b.kind_ || a.order_ != b.order_ || a.moduli_ != b.moduli_) return false;
  if (a.kind_ == GroupKind::tabulated) return *a.table_ == *b.table_;
  return true;
}

bool Subgroup::contains(Elem g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool is_closed_subset(const FiniteGroup& g, std::span<const Elem> sorted_elements) {
  if (sorted_elements.empty() || sorted_elements.front() != g.identity()) return false;
  std::vector<bool> member(g.order(), false);
  for (Elem x : sorted_elements) {
    g.check(x);
    member[x] = true;
  }
  // Finite and closed under op implies closed under inverse.
  for (Elem a : sorted_elements)
    for (Elem b : sorted_elements)
      if (!member[g.op(a, b)]) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& k) {
  if (g.is_abelian()) return true;
  for (Elem x = 0; x < g.order(); ++x) {
    const Elem xi = g.inv(x);
    for (Elem kk : k.elements)
      if (!k.contains(g.op(g.op(x, kk), xi))) return false;
  }
  return true;
}

namespace {

std::vector<Elem> closure(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<bool> member(g.order(), false);
  std::vector<Elem> frontier{g.identity()};
  member[g.identity()] = true;
  std::vector<Elem> out{g.identity()};
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier) {
      for (Elem s : gens) {
        const Elem y = g.op(x, s);
        if (!member[y]) {
          member[y] = true;
          out.push_back(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subgroup subgroup_from_generators(const FiniteGroup& g, std::span<const Elem> gens) {
  for (Elem s : gens) g.check(s);
  Subgroup k{g, closure(g, gens), std::vector<Elem>(gens.begin(), gens.end()), false};
  k.normal = is_normal(g, k);
  return k;
}

Subgroup subgroup_from_elements(const FiniteGroup& g, std::vector<Elem> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!is_closed_subset(g, elements)) throw DomainError("element set is not a subgroup of " + g.name());
  std::vector<Elem> gens;
  if (elements.size() > 1) {
    // Greedy generating set: add elements not yet reached.
    std::vector<Elem> reached{g.identity()};
    for (Elem x : elements) {
      if (std::binary_search(reached.begin(), reached.end(), x)) continue;
      gens.push_back(x);
      reached = closure(g, gens);
    }
  }
  Subgroup k{g, std::move(elements), std::move(gens), false};
  k.normal = is_normal(g, k);
  return k;
}

CosetPartition cosets(const FiniteGroup& g, const Subgroup& k) {
  if (!is_closed_subset(g, k.elements)) throw DomainError("cosets: K is not a subgroup");
  CosetPartition p;
  constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
  p.coset_of.assign(g.order(), unassigned);
  for (Elem x = 0; x < g.order(); ++x) {
    if (p.coset_of[x] != unassigned) continue;
    const std::size_t idx = p.blocks.size();
    std::vector<Elem> block;
    block.reserve(k.order());
    for (Elem kk : k.elements) {
      const Elem y = g.op(x, kk);
      p.coset_of[y] = idx;
      block.push_back(y);
    }
    std::sort(block.begin(), block.end());
    p.representatives.push_back(x);
    p.blocks.push_back(std::move(block));
  }
  return p;
}

QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& k) {
  if (!is_closed_subset(g, k.elements)) throw DomainError("quotient_group: K is not a subgroup");
  if (!is_normal(g, k))
    throw DomainError("quotient_group: K is not normal in " + g.name() + ", coset product is not well defined");
  CosetPartition p = cosets(g, k);
  const std::size_t n = p.count();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = p.coset_of[g.op(p.representatives[a], p.representatives[b])];
  std::string name = g.name() + "/<";
  for (std::size_t i = 0; i < k.generators.size(); ++i) name += (i ? "," : "") + std::to_string(k.generators[i]);
  name += ">";
  return {FiniteGroup::tabulated(std::move(table), n, std::move(name)), std::move(p)};
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  if (g.order() > kMaxSubgroupEnumerationOrder)
    throw ResourceLimitError("all_subgroups is limited to |G| <= 64, got " + std::to_string(g.order()));
  using Mask = std::uint64_t;
  auto to_mask = [](std::span<const Elem> elems) {
    Mask m = 0;
    for (Elem x : elems) m |= Mask{1} << x;
    return m;
  };
  std::set<Mask> seen;
  std::vector<std::vector<Elem>> found;      // element lists
  std::vector<std::vector<Elem>> found_gens;
  auto add = [&](std::vector<Elem> gens) {
    std::vector<Elem> elems = closure(g, gens);
    if (seen.insert(to_mask(elems)).second) {
      found.push_back(std::move(elems));
      found_gens.push_back(std::move(gens));
      return true;
    }
    return false;
  };

  add({});
  for (Elem a = 1; a < g.order(); ++a) add({a});
  const std::size_t cyclic_count = found.size();
  for (Elem a = 1; a < g.order(); ++a)
    for (Elem b = a + 1; b < g.order(); ++b) add({a, b});

  // Iterative join with cyclic subgroups until nothing new appears. Every
  // subgroup is a join of cyclic ones, so this reaches all of them.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t c = 1; c < cyclic_count; ++c) {
      const Elem x = found_gens[c].front();
      if (std::binary_search(found[i].begin(), found[i].end(), x)) continue;
      std::vector<Elem> gens = found_gens[i];
      gens.push_back(x);
      add(std::move(gens));
    }
  }

  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    Subgroup k{g, std::move(found[i]), std::move(found_gens[i]), false};
    k.normal = is_normal(g, k);
    out.push_back(std::move(k));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

std::vector<FiniteGroup> builtin_catalog(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) out.push_back(FiniteGroup::cyclic(n));
  for (std::size_t n = 1; 2 * n <= max_order; ++n) out.push_back(FiniteGroup::dihedral(n));
  std::vector<std::size_t> moduli;
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t min_mod, std::size_t order) {
    if (moduli.size() >= 2) out.push_back(FiniteGroup::product(moduli));
    for (std::size_t m = min_mod; order * m <= max_order; ++m) {
      moduli.push_back(m);
      extend(m, order * m);
      moduli.pop_back();
    }
  };
  extend(2, 1);
  return out;
}

}  // namespace qhs
