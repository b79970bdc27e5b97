#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace pauli {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Index3 = std::array<std::size_t, 3>;
using RealField = std::vector<double>;
using VectorField = std::array<RealField, 3>;

/// Pairwise summation of term(0) + ... + term(n-1) over a fixed binary tree,
/// so the rounding pattern depends only on n, never on thread count.
template <typename Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  constexpr std::size_t kLeaf = 64;
  if (end - begin <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

template <typename Term>
double pairwise_sum(std::size_t n, const Term& term) {
  return pairwise_sum(std::size_t{0}, n, term);
}

/// Maximum thread count requested through PAULI_THREADS (0 when unset).
int requested_threads();

/// Applies PAULI_THREADS to the OpenMP runtime, if OpenMP is enabled.
void apply_thread_limit();

}  // namespace pauli
