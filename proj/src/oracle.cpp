#include "qhs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qhs/error.hpp"
#include "qhs/rng.hpp"

namespace qhs {

QuantumState QuantumState::basis(std::size_t left, std::size_t right, Elem g, Elem h) {
  QuantumState s(left, right);
  s.at(g, h) = 1.0;
  return s;
}

double QuantumState::norm() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

HspInstance build_instance(const FiniteGroup& g, const Subgroup& k, std::uint64_t seed, std::size_t codomain_order) {
  const CosetPartition parts = cosets(g, k);
  const std::size_t m = codomain_order == 0 ? parts.count() : codomain_order;
  if (m < parts.count())
    throw DomainError("codomain of order " + std::to_string(m) + " cannot hold " + std::to_string(parts.count()) +
                      " cosets injectively");

  // Fisher-Yates over Z_M, keep the first |G/K| values.
  Rng rng(seed);
  std::vector<Elem> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i + 1 < m; ++i) std::swap(pool[i], pool[i + rng.uniform_below(m - i)]);
  std::vector<Elem> injection(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(parts.count()));

  std::vector<Elem> values(g.order());
  for (Elem x = 0; x < g.order(); ++x) values[x] = injection[parts.coset_of[x]];
  return HspInstance{{g, FiniteGroup::cyclic(m), std::move(values)}, k, std::move(injection), seed};
}

OracleUnitary::OracleUnitary(const FunctionOracle& f) : f_(&f), right_(f.codomain.order()) {
  if (f.values.size() != f.domain.order()) throw DomainError("oracle: f table does not cover the domain");
  for (Elem v : f.values) f.codomain.check(v);
}

QuantumState OracleUnitary::apply(const QuantumState& psi) const {
  if (psi.left_dim != f_->domain.order() || psi.right_dim != right_)
    throw DomainError("apply_oracle: state dimensions do not match the oracle");
  QuantumState out(psi.left_dim, psi.right_dim);
  for (Elem g = 0; g < psi.left_dim; ++g)
    for (Elem h = 0; h < right_; ++h) out.amplitudes[target(g, h)] = psi.at(g, h);
  return out;
}

QuantumState apply_oracle(const OracleUnitary& u, const QuantumState& psi) { return u.apply(psi); }

Subgroup classical_brute_force_hsp(const FunctionOracle& f) {
  const FiniteGroup& g = f.domain;
  if (f.values.size() != g.order()) throw IntegrityError("f table does not cover the domain");
  std::vector<Elem> stab;
  for (Elem x = 0; x < g.order(); ++x)
    if (f.values[x] == f.values[g.identity()]) stab.push_back(x);
  if (!is_closed_subset(g, stab)) throw IntegrityError("level set of f(e) is not a subgroup");
  Subgroup k = subgroup_from_elements(g, std::move(stab));
  // f must factor through G/K with an injective iota.
  const CosetPartition parts = cosets(g, k);
  std::vector<Elem> value_of(parts.count());
  for (std::size_t c = 0; c < parts.count(); ++c) {
    value_of[c] = f.values[parts.representatives[c]];
    for (Elem x : parts.blocks[c])
      if (f.values[x] != value_of[c]) throw IntegrityError("f is not constant on the left coset of " + g.label(x));
  }
  std::vector<Elem> sorted = value_of;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw IntegrityError("f takes the same value on two distinct cosets");
  return k;
}

Subgroup classical_brute_force_hsp(const HspInstance& instance) { return classical_brute_force_hsp(instance.f); }

std::string f_table_csv(const FunctionOracle& f) {
  std::string out = "g_index,f_index\n";
  for (Elem x = 0; x < f.values.size(); ++x) out += std::to_string(x) + "," + std::to_string(f.values[x]) + "\n";
  return out;
}

}  // namespace qhs
