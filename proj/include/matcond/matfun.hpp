#pragma once

#include <optional>
#include <string_view>

#include "matcond/matrix.hpp"

namespace matcond {

enum class FunctionId { Exp, Log, Sqrt, Square, Inverse };

std::string_view to_string(FunctionId f) noexcept;
std::optional<FunctionId> parse_function(std::string_view name) noexcept;

/// Scaling and squaring with diagonal Pade approximants of degree 3, 5, 7, 9
/// or 13, chosen from the 1-norm against fixed thresholds.
template <Scalar T>
Matrix<T> expm(const Matrix<T>& a);

/// Principal square root by the Schur method.  Throws DomainError when an
/// eigenvalue lies on the closed negative real axis.
template <Scalar T>
Matrix<T> sqrtm(const Matrix<T>& a);

/// Principal logarithm by inverse scaling and squaring on the Schur factor
/// followed by a degree-7 Pade approximant of log(I + X).
template <Scalar T>
Matrix<T> logm(const Matrix<T>& a);

template <Scalar T>
Matrix<T> apply(FunctionId f, const Matrix<T>& a);

/// Square root of an upper triangular matrix (column recurrence).
CMatrix sqrtm_triangular(const CMatrix& t);

/// Logarithm of an upper triangular matrix.
CMatrix logm_triangular(const CMatrix& t);

namespace matfun_constants {
// Degrees used by expm and the 1-norm bounds below which each degree is used.
inline constexpr int kExpDegrees[] = {3, 5, 7, 9, 13};
inline constexpr double kExpTheta[] = {1.495585217958292e-2, 2.539398330063230e-1,
                                       9.504178996162932e-1, 2.097847961257068e0,
                                       5.371920351148152e0};
// logm takes square roots until ||T - I||_1 drops below this bound, then
// applies the degree-7 approximant.
inline constexpr int kLogDegree = 7;
inline constexpr double kLogTheta = 2.64e-1;
inline constexpr int kMaxSquareRoots = 100;
}  // namespace matfun_constants

}  // namespace matcond
