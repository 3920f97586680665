#include "matcond/matfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "matcond/linalg.hpp"

namespace matcond {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <Scalar T>
void require_square(const Matrix<T>& a, const char* who) {
  if (!a.is_square())
    throw DimensionError(std::string(who) + " needs a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

// Rejects eigenvalues on the closed negative real axis.
void check_principal_domain(const CMatrix& t, const char* who) {
  const double tol = 100.0 * kEps * std::max(1.0, frobenius_norm(t));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const cplx lam = t(i, i);
    if (std::abs(lam) <= tol || (lam.real() < 0.0 && std::abs(lam.imag()) <= tol))
      throw DomainError(std::string(who) + ": eigenvalue (" + std::to_string(lam.real()) +
                        ", " + std::to_string(lam.imag()) +
                        ") on the closed negative real axis");
  }
}

template <Scalar T>
Matrix<T> back_transform(const CMatrix& q, const CMatrix& f_t) {
  return from_complex<T>(q * f_t * adjoint_t(q));
}

template <Scalar T>
Matrix<T> expm_pade(const Matrix<T>& a, int degree) {
  using matfun_constants::kExpDegrees;
  static constexpr std::array<double, 4> b3 = {120.0, 60.0, 12.0, 1.0};
  static constexpr std::array<double, 6> b5 = {30240.0, 15120.0, 3360.0,
                                               420.0,   30.0,    1.0};
  static constexpr std::array<double, 8> b7 = {17297280.0, 8648640.0, 1995840.0,
                                               277200.0,   25200.0,   1512.0,
                                               56.0,       1.0};
  static constexpr std::array<double, 10> b9 = {
      17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
      2162160.0,     110880.0,     3960.0,       90.0,        1.0};
  static constexpr std::array<double, 14> b13 = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  const std::size_t n = a.rows();
  const Matrix<T> id = Matrix<T>::identity(n);
  const Matrix<T> a2 = a * a;
  Matrix<T> u, v;
  if (degree == 13) {
    const Matrix<T> a4 = a2 * a2;
    const Matrix<T> a6 = a4 * a2;
    Matrix<T> inner = T(b13[13]) * a6 + T(b13[11]) * a4 + T(b13[9]) * a2;
    Matrix<T> tmp = a6 * inner + T(b13[7]) * a6 + T(b13[5]) * a4 + T(b13[3]) * a2 +
                    T(b13[1]) * id;
    u = a * tmp;
    inner = T(b13[12]) * a6 + T(b13[10]) * a4 + T(b13[8]) * a2;
    v = a6 * inner + T(b13[6]) * a6 + T(b13[4]) * a4 + T(b13[2]) * a2 + T(b13[0]) * id;
  } else {
    const double* b = degree == 3   ? b3.data()
                      : degree == 5 ? b5.data()
                      : degree == 7 ? b7.data()
                                    : b9.data();
    // Even powers a^0, a^2, ..., a^(degree - 1).
    Matrix<T> odd = T(b[1]) * id;
    v = T(b[0]) * id;
    Matrix<T> pw = id;
    for (int k = 2; k <= degree; k += 2) {
      pw = pw * a2;
      odd += T(b[k + 1]) * pw;
      v += T(b[k]) * pw;
    }
    u = a * odd;
  }
  return solve(v - u, v + u);
}

// Divided difference log[l1, l2] times t12, robust for close eigenvalues.
cplx log_superdiag(cplx l1, cplx l2, cplx t12) {
  if (l1 == l2) return t12 / l1;
  if (std::abs(l1) < 0.5 * std::abs(l2) || std::abs(l2) < 0.5 * std::abs(l1))
    return t12 * (std::log(l2) - std::log(l1)) / (l2 - l1);
  const cplx z = (l2 - l1) / (l2 + l1);
  const double dlog_im = (std::log(l2) - std::log(l1)).imag();
  const double unwind = std::ceil((dlog_im - std::numbers::pi) / (2.0 * std::numbers::pi));
  const cplx num = 2.0 * std::atanh(z) + cplx(0.0, 2.0 * std::numbers::pi * unwind);
  return t12 * num / (l2 - l1);
}

}  // namespace

std::string_view to_string(FunctionId f) noexcept {
  switch (f) {
    case FunctionId::Exp: return "exp";
    case FunctionId::Log: return "log";
    case FunctionId::Sqrt: return "sqrt";
    case FunctionId::Square: return "square";
    case FunctionId::Inverse: return "inverse";
  }
  return "?";
}

std::optional<FunctionId> parse_function(std::string_view name) noexcept {
  if (name == "exp" || name == "expm") return FunctionId::Exp;
  if (name == "log" || name == "logm") return FunctionId::Log;
  if (name == "sqrt" || name == "sqrtm") return FunctionId::Sqrt;
  if (name == "square") return FunctionId::Square;
  if (name == "inverse" || name == "inv") return FunctionId::Inverse;
  return std::nullopt;
}

template <Scalar T>
Matrix<T> expm(const Matrix<T>& a) {
  using namespace matfun_constants;
  require_square(a, "expm");
  if (!all_finite(a)) throw NumericalError("expm: non-finite input");
  const std::size_t n = a.rows();
  if (n == 0) return a;
  const double norm = norm1(a);
  Matrix<T> result;
  bool done = false;
  for (int k = 0; k < 4 && !done; ++k)
    if (norm <= kExpTheta[k]) {
      result = expm_pade(a, kExpDegrees[k]);
      done = true;
    }
  if (!done) {
    const int s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kExpTheta[4]))));
    Matrix<T> scaled = a;
    scaled *= T(std::ldexp(1.0, -s));
    result = expm_pade(scaled, 13);
    for (int k = 0; k < s; ++k) result = result * result;
  }
  if (!all_finite(result)) throw NumericalError("expm: result overflowed");
  return result;
}

CMatrix sqrtm_triangular(const CMatrix& t) {
  const std::size_t n = t.rows();
  CMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s(i, i) = std::sqrt(t(i, i));
  const double tiny = kEps * std::max(1.0, max_abs(t)) * 1e-8;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      cplx acc = t(i, j);
      for (std::size_t k = i + 1; k < j; ++k) acc -= s(i, k) * s(k, j);
      const cplx den = s(i, i) + s(j, j);
      if (std::abs(den) <= tiny) {
        if (acc == cplx{}) continue;
        throw NumericalError("sqrtm: s_ii + s_jj vanishes");
      }
      s(i, j) = acc / den;
    }
  return s;
}

CMatrix logm_triangular(const CMatrix& t0) {
  using namespace matfun_constants;
  static constexpr std::array<double, 7> nodes = {
      -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
      0.4058451513773972,  0.7415311855993945,  0.9491079123427585};
  static constexpr std::array<double, 7> weights = {
      0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
      0.3818300505051189, 0.2797053914892766, 0.1294849661688697};
  const std::size_t n = t0.rows();
  const CMatrix id = CMatrix::identity(n);
  CMatrix t = t0;
  int k = 0;
  while (norm1(t - id) > kLogTheta) {
    if (++k > kMaxSquareRoots) throw NumericalError("logm: too many square roots");
    t = sqrtm_triangular(t);
  }
  const CMatrix x = t - id;
  CMatrix r(n, n);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double node = 0.5 * (nodes[j] + 1.0);
    const double w = 0.5 * weights[j];
    CMatrix den = id;
    den += cplx(node) * x;
    r += cplx(w) * solve(den, x);
  }
  r *= cplx(std::ldexp(1.0, k));
  // Diagonal and first superdiagonal directly from the original factor.
  for (std::size_t i = 0; i < n; ++i) r(i, i) = std::log(t0(i, i));
  for (std::size_t i = 0; i + 1 < n; ++i)
    r(i, i + 1) = log_superdiag(t0(i, i), t0(i + 1, i + 1), t0(i, i + 1));
  return r;
}

template <Scalar T>
Matrix<T> sqrtm(const Matrix<T>& a) {
  require_square(a, "sqrtm");
  if (a.rows() == 0) return a;
  const Schur f = schur_complex(a);
  check_principal_domain(f.t, "sqrtm");
  return back_transform<T>(f.q, sqrtm_triangular(f.t));
}

template <Scalar T>
Matrix<T> logm(const Matrix<T>& a) {
  require_square(a, "logm");
  if (a.rows() == 0) return a;
  const Schur f = schur_complex(a);
  check_principal_domain(f.t, "logm");
  return back_transform<T>(f.q, logm_triangular(f.t));
}

template <Scalar T>
Matrix<T> apply(FunctionId f, const Matrix<T>& a) {
  switch (f) {
    case FunctionId::Exp: return expm(a);
    case FunctionId::Log: return logm(a);
    case FunctionId::Sqrt: return sqrtm(a);
    case FunctionId::Square:
      require_square(a, "square");
      return a * a;
    case FunctionId::Inverse:
      require_square(a, "inverse");
      return solve(a, Matrix<T>::identity(a.rows()));
  }
  throw Error("unknown function id");
}

template RMatrix expm(const RMatrix&);
template CMatrix expm(const CMatrix&);
template RMatrix sqrtm(const RMatrix&);
template CMatrix sqrtm(const CMatrix&);
template RMatrix logm(const RMatrix&);
template CMatrix logm(const CMatrix&);
template RMatrix apply(FunctionId, const RMatrix&);
template CMatrix apply(FunctionId, const CMatrix&);

}  // namespace matcond
