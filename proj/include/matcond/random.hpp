#pragma once

#include <cstdint>
#include <random>

#include "matcond/matrix.hpp"

namespace matcond {

using Rng = std::mt19937_64;

inline double gaussian(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

template <Scalar T>
Matrix<T> gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix<T> a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) {
      if constexpr (is_complex_v<T>) {
        const double re = gaussian(rng);
        a(i, j) = T(re, gaussian(rng));
      } else {
        a(i, j) = gaussian(rng);
      }
    }
  return a;
}

}  // namespace matcond
