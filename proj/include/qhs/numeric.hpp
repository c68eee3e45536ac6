#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qhs {

using cplx = std::complex<double>;

// exp(2*pi*i * num / den). Multiples of a quarter turn come back exact so
// that real characters (Z2^n, sign reps) carry no rounding dust.
cplx unit_root(std::int64_t num, std::int64_t den);

// Dense row-major complex matrix. Only what the simulator needs.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<cplx>& data() const { return data_; }

  CMatrix adjoint() const;
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// max |A(r,c) - B(r,c)|; shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

// max entry of |A A^dagger - I|.
double unitarity_residual(const CMatrix& a);

// printf("%.17g")
std::string format_double(double x);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
bool is_power_of_two(std::uint64_t x);

}  // namespace qhs
