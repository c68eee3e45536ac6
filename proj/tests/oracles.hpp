// Independent reference computations for the unit and acceptance tests.
// Nothing here calls the engine; everything is built from group operations
// and closed-form formulas so that agreement is meaningful.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "qhs/group.hpp"
#include "qhs/numeric.hpp"
#include "qhs/oracle.hpp"

namespace oracle {

using qhs::cplx;
using qhs::Elem;

inline cplx expi(double turns) {
  const double a = 2.0 * std::numbers::pi * turns;
  return {std::cos(a), std::sin(a)};
}

// Every subset of G that contains e and is closed under op. |G| <= 20.
inline std::vector<std::vector<Elem>> brute_subgroups(const qhs::FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<Elem>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
    bool closed = true;
    for (Elem a = 0; a < n && closed; ++a) {
      if (!(mask >> a & 1)) continue;
      for (Elem b = 0; b < n; ++b) {
        if ((mask >> b & 1) && !(mask >> g.op(a, b) & 1)) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    std::vector<Elem> els;
    for (Elem a = 0; a < n; ++a)
      if (mask >> a & 1) els.push_back(a);
    out.push_back(els);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

// Searches all bijections (n <= 8) for an isomorphism between two Cayley tables.
inline bool isomorphic(const qhs::FiniteGroup& a, const qhs::FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  std::vector<Elem> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (Elem x = 0; x < a.order() && ok; ++x)
      for (Elem y = 0; y < a.order() && ok; ++y) ok = perm[a.op(x, y)] == b.op(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Character-table transform of Cyclic(N): row y, column x = w^{-xy}/sqrt(N),
// computed in floating point from the angle directly.
inline qhs::CMatrix character_transform(std::size_t n) {
  qhs::CMatrix m(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      m(y, x) = s * expi(-static_cast<double>((x * y) % n) / static_cast<double>(n));
  return m;
}

// Full dense simulation: builds F (x) I, U_f and the second transform as
// (|G||H|)^2 matrices and multiplies them onto |0>|e>.
inline std::vector<double> dense_pipeline(const qhs::FunctionOracle& f, const qhs::CMatrix& fourier,
                                          bool inverse_second = false) {
  const std::size_t gn = f.domain.order();
  const std::size_t hn = f.codomain.order();
  const std::size_t dim = gn * hn;
  qhs::CMatrix f_left(dim, dim);
  for (std::size_t r = 0; r < gn; ++r)
    for (std::size_t c = 0; c < gn; ++c)
      for (std::size_t h = 0; h < hn; ++h) f_left(r * hn + h, c * hn + h) = fourier(r, c);
  qhs::CMatrix u(dim, dim);
  for (Elem g = 0; g < gn; ++g)
    for (Elem h = 0; h < hn; ++h) u(g * hn + f.codomain.op(f.values[g], f.codomain.inv(h)), g * hn + h) = 1.0;
  const qhs::CMatrix second = inverse_second ? f_left.adjoint() : f_left;
  const qhs::CMatrix total = second * u * f_left;
  std::vector<double> probs(gn, 0.0);
  for (std::size_t r = 0; r < gn; ++r)
    for (std::size_t h = 0; h < hn; ++h) probs[r] += std::norm(total(r * hn + h, 0));
  return probs;
}

// Period finding on Z_Q with f(q) = a^{tau(q)} mod N, by direct summation:
// p(y) = (1/Q^2) sum_v |sum_{q : f(q) = v} w^{-q y}|^2.
inline std::vector<double> period_finding_sum(std::uint64_t q, const std::vector<Elem>& values, std::uint64_t n) {
  std::vector<double> p(q, 0.0);
  for (std::uint64_t y = 0; y < q; ++y) {
    std::vector<cplx> acc(n);
    for (std::uint64_t x = 0; x < q; ++x)
      acc[values[x]] += expi(-static_cast<double>((x * y) % q) / static_cast<double>(q));
    double s = 0.0;
    for (const cplx& c : acc) s += std::norm(c);
    p[y] = s / static_cast<double>(q * q);
  }
  return p;
}

// Shor transversal closed form: the level set of a^s is {s + j r : j < M_s},
// a geometric series in w^{-r y}.
inline std::vector<double> shor_geometric(std::uint64_t q, std::uint64_t r) {
  std::vector<double> p(q, 0.0);
  for (std::uint64_t y = 0; y < q; ++y) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < r && s < q; ++s) {
      const std::uint64_t m = (q - s + r - 1) / r;
      cplx sum = 0.0;
      for (std::uint64_t j = 0; j < m; ++j)
        sum += expi(-static_cast<double>((j * r * y) % q) / static_cast<double>(q));
      total += std::norm(sum);
    }
    p[y] = total / static_cast<double>(q * q);
  }
  return p;
}

// y lies in a peak when some integer j has |y - j Q / r| <= 1/2.
inline double peak_mass_ref(const std::vector<double>& p, std::uint64_t r) {
  const double q = static_cast<double>(p.size());
  double mass = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    for (std::uint64_t j = 0; j <= r; ++j) {
      if (std::abs(static_cast<double>(y) - static_cast<double>(j) * q / static_cast<double>(r)) <= 0.5 + 1e-12) {
        mass += p[y];
        break;
      }
    }
  }
  return mass;
}

// Annihilator of K in an abelian product or cyclic group: y with
// sum_k y_k x_k / N_k integral for every x in K.
inline std::vector<Elem> annihilator(const qhs::FiniteGroup& g, const std::vector<Elem>& k) {
  const std::vector<std::size_t> mods = g.kind() == qhs::GroupKind::cyclic ? std::vector<std::size_t>{g.order()}
                                                                             : g.moduli();
  auto digits = [&](Elem x) {
    return g.kind() == qhs::GroupKind::cyclic ? std::vector<std::size_t>{x} : g.digits(x);
  };
  std::vector<Elem> out;
  for (Elem y = 0; y < g.order(); ++y) {
    const auto yd = digits(y);
    bool in = true;
    for (Elem x : k) {
      const auto xd = digits(x);
      double turns = 0.0;
      for (std::size_t i = 0; i < mods.size(); ++i)
        turns += static_cast<double>((xd[i] * yd[i]) % mods[i]) / static_cast<double>(mods[i]);
      if (std::abs(turns - std::round(turns)) > 1e-9) {
        in = false;
        break;
      }
    }
    if (in) out.push_back(y);
  }
  return out;
}

// Smallest d < N with some c such that 2|y d - c Q| <= d and c/d is a best
// approximation of the second kind (no d' < d gets |d' y - c' Q| as small),
// which characterizes convergents without expanding a continued fraction.
inline std::optional<std::uint64_t> best_denominator_scan(std::uint64_t y, std::uint64_t q, std::uint64_t n) {
  if (y == 0) return std::nullopt;
  auto err = [&](std::uint64_t c, std::uint64_t d) {
    const auto a = static_cast<std::int64_t>(y * d), b = static_cast<std::int64_t>(c * q);
    return a > b ? a - b : b - a;
  };
  for (std::uint64_t d = 1; d < n; ++d) {
    for (std::uint64_t c = 0; c <= d; ++c) {
      const std::int64_t e = err(c, d);
      if (2 * e > static_cast<std::int64_t>(d)) continue;
      bool best = true;
      for (std::uint64_t d2 = 1; d2 < d && best; ++d2)
        for (std::uint64_t c2 = 0; c2 <= d2 && best; ++c2) best = err(c2, d2) > e;
      if (best) return d;
    }
  }
  return std::nullopt;
}

}  // namespace oracle
