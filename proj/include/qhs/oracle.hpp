#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhs/group.hpp"
#include "qhs/state.hpp"

namespace qhs {

// A tabulated map f: G -> H. The pipeline only ever sees f through this.
struct FunctionOracle {
  FiniteGroup domain;
  FiniteGroup codomain;
  std::vector<Elem> values;  // values[g] = f(g)
};

// f = iota . gamma with gamma: G -> G/K (left cosets) and iota injective.
struct HspInstance {
  FunctionOracle f;
  Subgroup hidden;
  std::vector<Elem> injection;  // coset index -> H element
  std::uint64_t seed = 0;

  const FiniteGroup& domain() const { return f.domain; }
  const FiniteGroup& codomain() const { return f.codomain; }
};

// iota is a seeded random injection of the cosets into Cyclic(M); M defaults
// to the number of cosets and must not be smaller.
HspInstance build_instance(const FiniteGroup& g, const Subgroup& k, std::uint64_t seed, std::size_t codomain_order = 0);

// |g>|h> -> |g>|f(g) h^-1>, a permutation of the G x H basis.
class OracleUnitary {
 public:
  explicit OracleUnitary(const FunctionOracle& f);

  const FunctionOracle& function() const { return *f_; }
  // Index of the basis vector that (g, h) maps to.
  std::size_t target(Elem g, Elem h) const {
    return g * right_ + f_->codomain.op(f_->values[g], f_->codomain.inv(h));
  }

  QuantumState apply(const QuantumState& psi) const;

 private:
  const FunctionOracle* f_;
  std::size_t right_;
};

QuantumState apply_oracle(const OracleUnitary& u, const QuantumState& psi);

// {g : f(g) = f(e)}, after checking that f really is constant on left cosets
// of that set and distinct across them. Throws IntegrityError otherwise.
Subgroup classical_brute_force_hsp(const HspInstance& instance);
Subgroup classical_brute_force_hsp(const FunctionOracle& f);

// g_index,f_index rows with a header line.
std::string f_table_csv(const FunctionOracle& f);

}  // namespace qhs
