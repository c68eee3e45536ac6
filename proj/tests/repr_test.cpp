#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qhs/error.hpp"
#include "qhs/repr.hpp"

using namespace qhs;

namespace {

std::vector<std::size_t> dims(const std::vector<Irrep>& irreps) {
  std::vector<std::size_t> out;
  for (const auto& p : irreps) out.push_back(p.dim());
  return out;
}

double max_entry_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Row permutation P with a = P b, found by nearest-row search; empty when none.
std::vector<std::size_t> row_permutation(const CMatrix& a, const CMatrix& b, double tol) {
  std::vector<std::size_t> perm;
  std::vector<bool> used(b.rows(), false);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    bool found = false;
    for (std::size_t s = 0; s < b.rows() && !found; ++s) {
      if (used[s]) continue;
      double d = 0.0;
      for (std::size_t c = 0; c < a.cols(); ++c) d = std::max(d, std::abs(a(r, c) - b(s, c)));
      if (d < tol) {
        used[s] = true;
        perm.push_back(s);
        found = true;
      }
    }
    if (!found) return {};
  }
  return perm;
}

}  // namespace

TEST(Irreps, CyclicCharacters) {
  const auto z4 = FiniteGroup::cyclic(4);
  const auto irreps = irreps_of(z4);
  ASSERT_EQ(irreps.size(), 4u);
  const cplx i(0.0, 1.0);
  for (Elem y = 0; y < 4; ++y)
    for (Elem x = 0; x < 4; ++x) EXPECT_EQ(irreps[y].character(x), std::pow(i, static_cast<int>(x * y)));
}

TEST(Irreps, DihedralDimensions) {
  EXPECT_EQ(dims(irreps_of(FiniteGroup::dihedral(4))), (std::vector<std::size_t>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims(irreps_of(FiniteGroup::dihedral(3))), (std::vector<std::size_t>{1, 1, 2}));
  EXPECT_EQ(dims(irreps_of(FiniteGroup::dihedral(5))), (std::vector<std::size_t>{1, 1, 2, 2}));
  EXPECT_EQ(dims(irreps_of(FiniteGroup::dihedral(1))), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(dims(irreps_of(FiniteGroup::dihedral(2))), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(Irreps, TabulatedRefused) {
  const auto z4 = FiniteGroup::cyclic(4);
  const auto q = quotient_group(z4, subgroup_from_elements(z4, {0, 2}));
  EXPECT_THROW(irreps_of(q.group), DomainError);
}

TEST(Irreps, HomomorphismAndUnitarityByDirectProduct) {
  for (const char* spec : {"D3", "D4", "D5", "D6", "Z2xZ4", "Z3xZ3"}) {
    const auto g = FiniteGroup::parse(spec);
    for (const auto& p : irreps_of(g)) {
      const std::size_t d = p.dim();
      for (Elem a = 0; a < g.order(); ++a) {
        for (Elem b = 0; b < g.order(); ++b) {
          std::vector<cplx> prod(d * d);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
              for (std::size_t k = 0; k < d; ++k) prod[i * d + j] += p.entry(a, i, k) * p.entry(b, k, j);
          ASSERT_LT(max_entry_diff(prod, p.matrix(g.op(a, b))), 1e-12) << spec;
        }
      }
      EXPECT_LT(p.unitarity_residual(), 1e-12);
      EXPECT_NEAR(p.character_norm(), 1.0, 1e-10);
    }
  }
}

TEST(Irreps, SchurOrthogonalityByDirectSummation) {
  for (const char* spec : {"D4", "D7", "Z2^3", "Z12"}) {
    const auto g = FiniteGroup::parse(spec);
    const auto irreps = irreps_of(g);
    const double n = static_cast<double>(g.order());
    for (const auto& p : irreps)
      for (const auto& q : irreps)
        for (std::size_t j = 0; j < p.dim(); ++j)
          for (std::size_t k = 0; k < p.dim(); ++k)
            for (std::size_t j2 = 0; j2 < q.dim(); ++j2)
              for (std::size_t k2 = 0; k2 < q.dim(); ++k2) {
                cplx s = 0.0;
                for (Elem x = 0; x < g.order(); ++x) s += p.entry(x, j, k) * std::conj(q.entry(x, j2, k2));
                const double expect =
                    (p.label() == q.label() && j == j2 && k == k2) ? n / static_cast<double>(p.dim()) : 0.0;
                ASSERT_LT(std::abs(s - expect), 1e-11) << spec;
              }
  }
}

TEST(Contragredient, KnownCases) {
  const auto z2 = FiniteGroup::parse("Z2^3");
  for (const auto& p : irreps_of(z2)) {
    const auto c = contragredient(z2, p);
    EXPECT_EQ(c.label(), p.label());
  }
  const auto z4 = FiniteGroup::cyclic(4);
  const auto chars = irreps_of(z4);
  EXPECT_EQ(contragredient(z4, chars[1]).label(), 3u);
  EXPECT_EQ(contragredient(z4, chars[0]).label(), 0u);

  const auto d3 = FiniteGroup::dihedral(3);
  const auto two = irreps_of(d3).back();
  const auto c = contragredient(d3, two);
  EXPECT_EQ(c.dim(), 2u);
  for (Elem x = 0; x < d3.order(); ++x) EXPECT_LT(std::abs(c.character(x) - two.character(x)), 1e-14);
}

TEST(Contragredient, IsAnInvolution) {
  for (const auto& g : builtin_catalog(32)) {
    for (const auto& p : irreps_of(g)) {
      const auto cc = contragredient(g, contragredient(g, p));
      EXPECT_EQ(cc.label(), p.label());
      for (Elem x = 0; x < g.order(); ++x) ASSERT_LT(max_entry_diff(cc.matrix(x), p.matrix(x)), 1e-14);
    }
  }
}

TEST(Fourier, CyclicTwoIsHadamard) {
  const auto f = fourier_operator(FiniteGroup::cyclic(2));
  const double s = 1 / std::sqrt(2.0);
  EXPECT_LT(std::abs(f.matrix()(0, 0) - s), 1e-15);
  EXPECT_LT(std::abs(f.matrix()(0, 1) - s), 1e-15);
  EXPECT_LT(std::abs(f.matrix()(1, 0) - s), 1e-15);
  EXPECT_LT(std::abs(f.matrix()(1, 1) + s), 1e-15);
}

TEST(Fourier, CyclicIsConjugatedDft) {
  for (std::size_t n = 1; n <= 32; ++n) {
    const auto f = fourier_operator(FiniteGroup::cyclic(n));
    EXPECT_LT(max_abs_diff(f.matrix(), oracle::character_transform(n)), 1e-14) << n;
  }
}

TEST(Fourier, AbelianReductionRowPermutation) {
  // Products compared against the tensor product of cyclic character transforms.
  for (const auto& g : builtin_catalog(32)) {
    if (g.kind() == GroupKind::dihedral) continue;
    const auto f = fourier_operator(g, BasisOrdering::parse("dim_desc+column_major"));
    CMatrix ref(g.order(), g.order());
    const auto mods = g.kind() == GroupKind::cyclic ? std::vector<std::size_t>{g.order()} : g.moduli();
    auto digits = [&](Elem x) { return g.kind() == GroupKind::cyclic ? std::vector<std::size_t>{x} : g.digits(x); };
    for (Elem y = 0; y < g.order(); ++y)
      for (Elem x = 0; x < g.order(); ++x) {
        double turns = 0.0;
        const auto xd = digits(x), yd = digits(y);
        for (std::size_t i = 0; i < mods.size(); ++i)
          turns -= static_cast<double>((xd[i] * yd[i]) % mods[i]) / static_cast<double>(mods[i]);
        ref(y, x) = oracle::expi(turns) / std::sqrt(static_cast<double>(g.order()));
      }
    const auto perm = row_permutation(f.matrix(), ref, 1e-12);
    EXPECT_EQ(perm.size(), g.order()) << g.name();
  }
}

TEST(Fourier, DihedralFourLayout) {
  const auto f = fourier_operator(FiniteGroup::dihedral(4));
  EXPECT_EQ(f.matrix().rows(), 8u);
  EXPECT_LT(unitarity_residual(f.matrix()), 1e-12);
  std::size_t one_dim_rows = 0;
  for (const auto& r : f.rows()) one_dim_rows += f.irrep_dim(r.irrep) == 1;
  EXPECT_EQ(one_dim_rows, 4u);
  EXPECT_FALSE(f.one_dimensional());
  // Default ordering: 1-dim blocks first, then the 2-dim block row-major.
  EXPECT_EQ(f.rows()[4], (FourierRow{4, 0, 0}));
  EXPECT_EQ(f.rows()[5], (FourierRow{4, 0, 1}));
  EXPECT_EQ(f.rows()[6], (FourierRow{4, 1, 0}));
}

TEST(Fourier, AlternativeOrderingsPermuteRows) {
  const auto g = FiniteGroup::dihedral(5);
  const auto base = fourier_operator(g);
  for (const char* o : {"dim_desc", "column_major", "dim_desc+column_major"}) {
    const auto f = fourier_operator(g, BasisOrdering::parse(o));
    EXPECT_EQ(f.ordering().name(), BasisOrdering::parse(o).name());
    EXPECT_LT(unitarity_residual(f.matrix()), 1e-12);
    EXPECT_EQ(row_permutation(f.matrix(), base.matrix(), 1e-14).size(), g.order()) << o;
  }
  const auto desc = fourier_operator(g, BasisOrdering::parse("dim_desc"));
  EXPECT_EQ(desc.irrep_dim(desc.rows().front().irrep), 2u);
  const auto cm = fourier_operator(g, BasisOrdering::parse("column_major"));
  EXPECT_EQ(cm.rows()[3], (FourierRow{2, 1, 0}));
  EXPECT_THROW(BasisOrdering::parse("bogus"), DomainError);
}

TEST(Fourier, ApplyMatchesMatrixProduct) {
  const auto g = FiniteGroup::dihedral(6);
  const auto f = fourier_operator(g);
  std::vector<cplx> x(g.order()), y(g.order()), back(g.order());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = cplx(std::sin(1.0 + i), std::cos(2.0 * i));
  f.apply(x, y);
  for (std::size_t r = 0; r < x.size(); ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) s += f.matrix()(r, c) * x[c];
    EXPECT_LT(std::abs(s - y[r]), 1e-13);
  }
  f.apply_adjoint(y, back);
  EXPECT_LT(max_entry_diff(back, x), 1e-13);
}

TEST(RepresentationSuite, KnownCases) {
  const auto c8 = verify_representation_suite(FiniteGroup::cyclic(8));
  EXPECT_EQ(c8.completeness_defect, 0);
  EXPECT_LT(c8.max_schur_residual, 1e-13);
  EXPECT_LT(c8.max_unitarity_residual, 1e-13);
  const auto d6 = verify_representation_suite(FiniteGroup::dihedral(6));
  EXPECT_EQ(d6.completeness_defect, 0);
  EXPECT_LT(d6.max_schur_residual, 1e-12);
  EXPECT_LT(d6.max_unitarity_residual, 1e-12);
  EXPECT_EQ(verify_representation_suite(FiniteGroup::dihedral(3)).completeness_defect, 0);
}

TEST(RepresentationSuite, AllBuiltinsUpTo64) {
  for (const auto& g : builtin_catalog(64)) {
    const auto rep = verify_representation_suite(g);
    EXPECT_EQ(rep.completeness_defect, 0) << g.name();
    EXPECT_LT(rep.max_schur_residual, 1e-12) << g.name();
    EXPECT_LT(rep.max_unitarity_residual, 1e-12) << g.name();
    EXPECT_LT(rep.max_homomorphism_residual, 1e-12) << g.name();
    EXPECT_LT(rep.max_character_norm_defect, 1e-10) << g.name();
  }
}

TEST(AbelianPhase, ExactKernelMembership) {
  const auto z12 = FiniteGroup::cyclic(12);
  EXPECT_TRUE(abelian_character_phase(z12, 6, 2).is_one());
  EXPECT_FALSE(abelian_character_phase(z12, 6, 1).is_one());
  const auto p = FiniteGroup::parse("Z2xZ4");
  // y = (1,2), x = (1,1): 1/2 + 2/4 = 1
  EXPECT_TRUE(abelian_character_phase(p, p.from_digits(std::vector<std::size_t>{1, 2}),
                                      p.from_digits(std::vector<std::size_t>{1, 1}))
                  .is_one());
}
