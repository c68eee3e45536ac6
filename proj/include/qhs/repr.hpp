#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qhs/group.hpp"
#include "qhs/numeric.hpp"

namespace qhs {

// A unitary irreducible representation g -> dim x dim matrix, stored as one
// row-major block per element.
class Irrep {
 public:
  Irrep(std::size_t label, std::size_t dim, std::vector<cplx> blocks);

  std::size_t label() const { return label_; }
  std::size_t dim() const { return dim_; }
  std::size_t group_order() const { return blocks_.size() / (dim_ * dim_); }

  std::span<const cplx> matrix(Elem g) const;
  cplx entry(Elem g, std::size_t row, std::size_t col) const { return matrix(g)[row * dim_ + col]; }
  cplx character(Elem g) const;

  // Worst entry of |pi(ab) - pi(a)pi(b)|: all pairs when random_pairs == 0,
  // otherwise that many seeded random pairs.
  double homomorphism_residual(const FiniteGroup& g, std::size_t random_pairs = 0, std::uint64_t seed = 0) const;
  double unitarity_residual() const;
  // <chi, chi>; 1 for an irreducible representation.
  double character_norm() const;

 private:
  std::size_t label_;
  std::size_t dim_;
  std::vector<cplx> blocks_;
};

// Complete set of inequivalent irreps, ordered by label.
//  - cyclic / product: label y is the element index of the character
//    chi_y(x) = exp(2 pi i sum_k x_k y_k / N_k).
//  - dihedral D_N: 1-dim reps first (trivial, sign, and for even N the two
//    with r -> -1), then rho_k for k = 1 .. ceil(N/2)-1 with
//    rho_k(r) = diag(w^k, w^-k), rho_k(s) = antidiag(1, 1), w = exp(2 pi i/N).
// Tabulated groups are refused.
std::vector<Irrep> irreps_of(const FiniteGroup& g);

// chi_y(x) = exp(2 pi i num/den) for cyclic and product groups; exact.
struct Phase {
  std::int64_t num;
  std::int64_t den;
  bool is_one() const { return num % den == 0; }
};
Phase abelian_character_phase(const FiniteGroup& g, Elem y, Elem x);

// g -> transpose(pi(g^-1)), which for unitary pi is the entrywise conjugate.
// The label is that of the irrep in irreps_of(g) with the same character.
// Non-unitary input is refused.
Irrep contragredient(const FiniteGroup& g, const Irrep& pi);

struct BasisOrdering {
  enum class IrrepOrder { dim_ascending, dim_descending };
  enum class BlockOrder { row_major, column_major };

  IrrepOrder irreps = IrrepOrder::dim_ascending;
  BlockOrder block = BlockOrder::row_major;

  // "default", "dim_desc", "column_major", "dim_desc+column_major"
  static BasisOrdering parse(std::string_view text);
  std::string name() const;
  friend bool operator==(const BasisOrdering&, const BasisOrdering&) = default;
};

// (irrep label, row, col) of one Fourier-basis vector.
struct FourierRow {
  std::size_t irrep = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  friend auto operator<=>(const FourierRow&, const FourierRow&) = default;
};

// Largest group whose Fourier matrix is materialized.
inline constexpr std::size_t kMaxFourierOrder = 2048;

class FourierOperator {
 public:
  FourierOperator(FiniteGroup group, BasisOrdering ordering, CMatrix matrix, std::vector<FourierRow> rows,
                  std::vector<std::size_t> irrep_dims, bool one_dimensional);

  const FiniteGroup& group() const { return group_; }
  const BasisOrdering& ordering() const { return ordering_; }
  const CMatrix& matrix() const { return matrix_; }
  const std::vector<FourierRow>& rows() const { return rows_; }
  // dim of irrep `label`
  std::size_t irrep_dim(std::size_t label) const { return irrep_dims_.at(label); }
  std::size_t irrep_count() const { return irrep_dims_.size(); }
  double normalization(std::size_t label) const;
  // True when every irrep is 1-dimensional.
  bool one_dimensional() const { return one_dimensional_; }

  // out = F x (adjoint: out = F^dagger x). Zero entries of x are skipped.
  void apply(std::span<const cplx> x, std::span<cplx> out) const;
  void apply_adjoint(std::span<const cplx> x, std::span<cplx> out) const;

 private:
  FiniteGroup group_;
  BasisOrdering ordering_;
  CMatrix matrix_;
  std::vector<FourierRow> rows_;
  std::vector<std::size_t> irrep_dims_;
  bool one_dimensional_;
};

// Row (i, j, k), column g: sqrt(d_i/|G|) * conj(pi_i(g)_{jk}).
FourierOperator fourier_operator(const FiniteGroup& g, const BasisOrdering& ordering = {});

struct RepresentationReport {
  std::string group;
  std::int64_t completeness_defect = 0;  // sum d_i^2 - |G|
  double max_schur_residual = 0.0;
  double max_unitarity_residual = 0.0;   // F F^dagger - I
  double max_irrep_unitarity_residual = 0.0;
  double max_homomorphism_residual = 0.0;
  double max_character_norm_defect = 0.0;
};

// Homomorphism residual is exhaustive up to |G| = 16 and uses 1000 seeded
// random pairs above that.
RepresentationReport verify_representation_suite(const FiniteGroup& g);

}  // namespace qhs
