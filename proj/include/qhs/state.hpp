#pragma once

#include <cstddef>
#include <vector>

#include "qhs/group.hpp"
#include "qhs/numeric.hpp"

namespace qhs {

// Two-register state over the basis G x H; amplitude index is g * |H| + h.
struct QuantumState {
  std::size_t left_dim = 0;
  std::size_t right_dim = 0;
  std::vector<cplx> amplitudes;

  QuantumState() = default;
  QuantumState(std::size_t left, std::size_t right) : left_dim(left), right_dim(right), amplitudes(left * right) {}

  static QuantumState basis(std::size_t left, std::size_t right, Elem g, Elem h);

  cplx& at(Elem g, Elem h) { return amplitudes[g * right_dim + h]; }
  const cplx& at(Elem g, Elem h) const { return amplitudes[g * right_dim + h]; }
  double norm() const;
};

}  // namespace qhs
