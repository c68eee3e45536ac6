#include "qhs/repr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qhs/error.hpp"
#include "qhs/rng.hpp"

namespace qhs {

Irrep::Irrep(std::size_t label, std::size_t dim, std::vector<cplx> blocks)
    : label_(label), dim_(dim), blocks_(std::move(blocks)) {
  if (dim_ == 0 || blocks_.size() % (dim_ * dim_) != 0) throw DomainError("Irrep: block storage does not match dim");
}

std::span<const cplx> Irrep::matrix(Elem g) const {
  const std::size_t sz = dim_ * dim_;
  if (g >= group_order()) throw DomainError("Irrep: element index out of range");
  return std::span(blocks_).subspan(g * sz, sz);
}

cplx Irrep::character(Elem g) const {
  cplx tr{};
  for (std::size_t i = 0; i < dim_; ++i) tr += entry(g, i, i);
  return tr;
}

double Irrep::homomorphism_residual(const FiniteGroup& g, std::size_t random_pairs, std::uint64_t seed) const {
  double worst = 0.0;
  auto check_pair = [&](Elem a, Elem b) {
    auto ma = matrix(a), mb = matrix(b), mab = matrix(g.op(a, b));
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) {
        cplx acc{};
        for (std::size_t k = 0; k < dim_; ++k) acc += ma[r * dim_ + k] * mb[k * dim_ + c];
        worst = std::max(worst, std::abs(acc - mab[r * dim_ + c]));
      }
  };
  const std::size_t n = group_order();
  if (random_pairs == 0) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) check_pair(a, b);
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < random_pairs; ++i) {
      const Elem a = rng.uniform_below(n);
      const Elem b = rng.uniform_below(n);
      check_pair(a, b);
    }
  }
  return worst;
}

double Irrep::unitarity_residual() const {
  double worst = 0.0;
  for (Elem g = 0; g < group_order(); ++g) {
    auto m = matrix(g);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) {
        cplx acc{};
        for (std::size_t k = 0; k < dim_; ++k) acc += m[r * dim_ + k] * std::conj(m[c * dim_ + k]);
        worst = std::max(worst, std::abs(acc - (r == c ? 1.0 : 0.0)));
      }
  }
  return worst;
}

double Irrep::character_norm() const {
  double acc = 0.0;
  for (Elem g = 0; g < group_order(); ++g) acc += std::norm(character(g));
  return acc / static_cast<double>(group_order());
}

Phase abelian_character_phase(const FiniteGroup& g, Elem y, Elem x) {
  g.check(y);
  g.check(x);
  switch (g.kind()) {
    case GroupKind::cyclic: {
      const auto n = static_cast<std::int64_t>(g.order());
      return {static_cast<std::int64_t>((y * x) % g.order()), n};
    }
    case GroupKind::product: {
      std::uint64_t l = 1;
      for (std::size_t m : g.moduli()) l = lcm_u64(l, m);
      const auto dy = g.digits(y), dx = g.digits(x);
      std::uint64_t num = 0;
      for (std::size_t k = 0; k < dy.size(); ++k) {
        const std::uint64_t m = g.moduli()[k];
        num = (num + (dy[k] * dx[k] % m) * (l / m)) % l;
      }
      return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(l)};
    }
    default:
      throw DomainError("abelian_character_phase needs a cyclic or product group, got " + g.name());
  }
}

std::vector<Irrep> irreps_of(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Irrep> out;
  switch (g.kind()) {
    case GroupKind::cyclic:
    case GroupKind::product: {
      out.reserve(n);
      for (Elem y = 0; y < n; ++y) {
        std::vector<cplx> blocks(n);
        for (Elem x = 0; x < n; ++x) {
          const Phase p = abelian_character_phase(g, y, x);
          blocks[x] = unit_root(p.num, p.den);
        }
        out.emplace_back(y, 1, std::move(blocks));
      }
      return out;
    }
    case GroupKind::dihedral: {
      const std::size_t rot = g.moduli()[0];
      // (value on r, value on s) for the 1-dim reps.
      std::vector<std::pair<int, int>> linear{{1, 1}, {1, -1}};
      if (rot % 2 == 0) {
        linear.emplace_back(-1, 1);
        linear.emplace_back(-1, -1);
      }
      for (auto [on_r, on_s] : linear) {
        std::vector<cplx> blocks(n);
        for (Elem x = 0; x < n; ++x) {
          const std::size_t a = x % rot, b = x / rot;
          const int v = (a % 2 == 1 ? on_r : 1) * (b == 1 ? on_s : 1);
          blocks[x] = static_cast<double>(v);
        }
        out.emplace_back(out.size(), 1, std::move(blocks));
      }
      const std::size_t two_dim = (rot + 1) / 2 - 1;
      const auto rot_i = static_cast<std::int64_t>(rot);
      for (std::size_t k = 1; k <= two_dim; ++k) {
        std::vector<cplx> blocks(4 * n);
        for (Elem x = 0; x < n; ++x) {
          const auto a = static_cast<std::int64_t>(x % rot);
          const cplx w = unit_root(static_cast<std::int64_t>(k) * a, rot_i);
          const cplx wbar = unit_root(-static_cast<std::int64_t>(k) * a, rot_i);
          cplx* m = &blocks[4 * x];
          if (x < rot) {  // diag(w^ka, w^-ka)
            m[0] = w;
            m[3] = wbar;
          } else {  // diag(...) * antidiag(1, 1)
            m[1] = w;
            m[2] = wbar;
          }
        }
        out.emplace_back(out.size(), 2, std::move(blocks));
      }
      return out;
    }
    case GroupKind::tabulated:
      break;
  }
  throw DomainError("irreps_of: unsupported group kind for " + g.name());
}

Irrep contragredient(const FiniteGroup& g, const Irrep& pi) {
  if (pi.group_order() != g.order()) throw DomainError("contragredient: irrep does not belong to " + g.name());
  if (pi.unitarity_residual() > 1e-10) throw DomainError("contragredient: representation is not unitary");
  const std::size_t d = pi.dim();
  std::vector<cplx> blocks(g.order() * d * d);
  for (Elem x = 0; x < g.order(); ++x) {
    auto m = pi.matrix(x);
    for (std::size_t i = 0; i < d * d; ++i) blocks[x * d * d + i] = std::conj(m[i]);
  }
  std::size_t label = pi.label();
  for (const Irrep& other : irreps_of(g)) {
    if (other.dim() != d) continue;
    bool same = true;
    for (Elem x = 0; x < g.order() && same; ++x)
      same = std::abs(other.character(x) - std::conj(pi.character(x))) < 1e-9;
    if (same) {
      label = other.label();
      break;
    }
  }
  return Irrep(label, d, std::move(blocks));
}

BasisOrdering BasisOrdering::parse(std::string_view text) {
  BasisOrdering o;
  if (text.empty() || text == "default") return o;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('+', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = text.substr(start, end - start);
    if (part == "dim_asc") o.irreps = IrrepOrder::dim_ascending;
    else if (part == "dim_desc") o.irreps = IrrepOrder::dim_descending;
    else if (part == "row_major") o.block = BlockOrder::row_major;
    else if (part == "column_major") o.block = BlockOrder::column_major;
    else throw DomainError("unknown basis ordering '" + std::string(part) + "'");
    start = end + 1;
  }
  return o;
}

std::string BasisOrdering::name() const {
  if (*this == BasisOrdering{}) return "default";
  std::string out = irreps == IrrepOrder::dim_ascending ? "dim_asc" : "dim_desc";
  out += block == BlockOrder::row_major ? "+row_major" : "+column_major";
  return out;
}

FourierOperator::FourierOperator(FiniteGroup group, BasisOrdering ordering, CMatrix matrix,
                                 std::vector<FourierRow> rows, std::vector<std::size_t> irrep_dims,
                                 bool one_dimensional)
    : group_(std::move(group)),
      ordering_(ordering),
      matrix_(std::move(matrix)),
      rows_(std::move(rows)),
      irrep_dims_(std::move(irrep_dims)),
      one_dimensional_(one_dimensional) {}

double FourierOperator::normalization(std::size_t label) const {
  return std::sqrt(static_cast<double>(irrep_dim(label)) / static_cast<double>(group_.order()));
}

void FourierOperator::apply(std::span<const cplx> x, std::span<cplx> out) const {
  const std::size_t n = matrix_.cols();
  if (x.size() != n || out.size() != n) throw DomainError("FourierOperator::apply: dimension mismatch");
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < n; ++c)
    if (x[c] != cplx{}) nz.push_back(c);
  for (std::size_t r = 0; r < n; ++r) {
    cplx acc{};
    for (std::size_t c : nz) acc += matrix_(r, c) * x[c];
    out[r] = acc;
  }
}

void FourierOperator::apply_adjoint(std::span<const cplx> x, std::span<cplx> out) const {
  const std::size_t n = matrix_.cols();
  if (x.size() != n || out.size() != n) throw DomainError("FourierOperator::apply_adjoint: dimension mismatch");
  std::fill(out.begin(), out.end(), cplx{});
  for (std::size_t r = 0; r < n; ++r) {
    if (x[r] == cplx{}) continue;
    for (std::size_t c = 0; c < n; ++c) out[c] += std::conj(matrix_(r, c)) * x[r];
  }
}

FourierOperator fourier_operator(const FiniteGroup& g, const BasisOrdering& ordering) {
  if (g.order() > kMaxFourierOrder)
    throw ResourceLimitError("fourier_operator: |G| = " + std::to_string(g.order()) + " exceeds " +
                             std::to_string(kMaxFourierOrder));
  const std::vector<Irrep> irreps = irreps_of(g);
  std::vector<std::size_t> order(irreps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ordering.irreps == BasisOrdering::IrrepOrder::dim_ascending) return irreps[a].dim() < irreps[b].dim();
    return irreps[a].dim() > irreps[b].dim();
  });

  std::vector<std::size_t> dims(irreps.size());
  bool one_dim = true;
  for (const Irrep& p : irreps) {
    dims[p.label()] = p.dim();
    one_dim = one_dim && p.dim() == 1;
  }

  const std::size_t n = g.order();
  CMatrix m(n, n);
  std::vector<FourierRow> rows;
  rows.reserve(n);
  for (std::size_t idx : order) {
    const Irrep& p = irreps[idx];
    const std::size_t d = p.dim();
    const double scale = std::sqrt(static_cast<double>(d) / static_cast<double>(n));
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const bool row_major = ordering.block == BasisOrdering::BlockOrder::row_major;
        const std::size_t j = row_major ? a : b;
        const std::size_t k = row_major ? b : a;
        const std::size_t r = rows.size();
        for (Elem x = 0; x < n; ++x) m(r, x) = scale * std::conj(p.entry(x, j, k));
        rows.push_back({p.label(), j, k});
      }
    }
  }
  if (rows.size() != n) throw InvariantViolation("fourier_operator: sum of d_i^2 differs from |G| for " + g.name());
  return FourierOperator(g, ordering, std::move(m), std::move(rows), std::move(dims), one_dim);
}

RepresentationReport verify_representation_suite(const FiniteGroup& g) {
  RepresentationReport rep;
  rep.group = g.name();
  const std::vector<Irrep> irreps = irreps_of(g);
  const std::size_t n = g.order();

  std::int64_t total = 0;
  for (const Irrep& p : irreps) total += static_cast<std::int64_t>(p.dim() * p.dim());
  rep.completeness_defect = total - static_cast<std::int64_t>(n);

  // Schur orthogonality by direct summation over the group, one pair of
  // matrix coefficients at a time.
  for (const Irrep& p : irreps) {
    for (const Irrep& q : irreps) {
      if (q.label() < p.label()) continue;
      const double scale = static_cast<double>(p.dim()) / static_cast<double>(n);
      for (std::size_t j = 0; j < p.dim(); ++j)
        for (std::size_t k = 0; k < p.dim(); ++k)
          for (std::size_t j2 = 0; j2 < q.dim(); ++j2)
            for (std::size_t k2 = 0; k2 < q.dim(); ++k2) {
              cplx acc{};
              for (Elem x = 0; x < n; ++x) acc += p.entry(x, j, k) * std::conj(q.entry(x, j2, k2));
              const bool same = p.label() == q.label() && j == j2 && k == k2;
              rep.max_schur_residual = std::max(rep.max_schur_residual, std::abs(scale * acc - (same ? 1.0 : 0.0)));
            }
    }
    rep.max_irrep_unitarity_residual = std::max(rep.max_irrep_unitarity_residual, p.unitarity_residual());
    const double hom = n <= 16 ? p.homomorphism_residual(g) : p.homomorphism_residual(g, 1000, 0x5eed + p.label());
    rep.max_homomorphism_residual = std::max(rep.max_homomorphism_residual, hom);
    rep.max_character_norm_defect = std::max(rep.max_character_norm_defect, std::abs(p.character_norm() - 1.0));
  }

  if (rep.completeness_defect == 0) rep.max_unitarity_residual = unitarity_residual(fourier_operator(g).matrix());
  else rep.max_unitarity_residual = INFINITY;
  return rep;
}

}  // namespace qhs
