#include "matcond/structures.hpp"

#include <cmath>
#include <numbers>

#include "matcond/error.hpp"
#include "matcond/linalg.hpp"
#include "matcond/matfun.hpp"
#include "matcond/random.hpp"

namespace matcond {
namespace {

template <Scalar T>
Matrix<T> lift(const RMatrix& m) {
  if constexpr (is_complex_v<T>)
    return to_complex(m);
  else
    return m;
}

// D matrix of the Jordan/Lie construction: columns (e_(i,j) + mu*s*e_(j,i))/sqrt(2)
// for i < j, followed by the diagonal units when mu*s = +1.  Column k holds
// vec of an n x n matrix.
RMatrix d_matrix(std::size_t n, int mus) {
  const std::size_t off = n * (n - 1) / 2;
  const std::size_t p = off + (mus > 0 ? n : 0);
  RMatrix d(n * n, p);
  const double r = 1.0 / std::sqrt(2.0);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      d(i * n + j, k) = r;
      d(j * n + i, k) = mus * r;
    }
  if (mus > 0)
    for (std::size_t i = 0; i < n; ++i, ++k) d(i * n + i, k) = 1.0;
  return d;
}

// (I (x) L) * d, applied column by column as L * unvec(column).
template <Scalar T>
Matrix<T> left_apply(const Matrix<T>& l, const RMatrix& d, std::size_t n) {
  Matrix<T> out(d.rows(), d.cols());
  for (std::size_t k = 0; k < d.cols(); ++k) {
    Matrix<T> x(n, n);
    for (std::size_t idx = 0; idx < n * n; ++idx) x(idx % n, idx / n) = T(d(idx, k));
    const Matrix<T> y = l * x;
    std::copy(y.data().begin(), y.data().end(), out.col(k).begin());
  }
  return out;
}

void require_bilinear(const ScalarProduct& sp) {
  if (sp.form != FormKind::Bilinear)
    throw Error("tangent bases are implemented for bilinear forms only");
}

RMatrix generic_lie(Rng& rng, const ScalarProduct& sp, double sign) {
  const RMatrix g = gaussian_matrix<double>(rng, sp.n, sp.n);
  return g + (sp.inverse() * transpose(g) * sp.matrix()) * sign;
}

RMatrix hamiltonian(Rng& rng, std::size_t n) {
  const std::size_t m = n / 2;
  const RMatrix x = gaussian_matrix<double>(rng, m, m);
  RMatrix g = gaussian_matrix<double>(rng, m, m);
  RMatrix f = gaussian_matrix<double>(rng, m, m);
  g = (g + transpose(g)) * 0.5;
  f = (f + transpose(f)) * 0.5;
  RMatrix h(n, n);
  h.set_block(0, 0, x);
  h.set_block(0, m, g);
  h.set_block(m, 0, f);
  h.set_block(m, m, -transpose(x));
  return h;
}

RMatrix exp_of_direction(const RMatrix& l, double tau) {
  const double nrm = spectral_norm(l);
  if (tau == 0.0 || nrm == 0.0) return RMatrix::identity(l.rows());
  return expm(l * (tau / nrm));
}

void require_even(std::size_t n, const char* what) {
  if (n == 0 || n % 2 != 0)
    throw DimensionError(std::string(what) + " matrices need even n, got " + std::to_string(n));
}

}  // namespace

RMatrix ScalarProduct::matrix() const {
  validate();
  RMatrix m(n, n);
  switch (kind) {
    case MKind::Identity:
      return RMatrix::identity(n);
    case MKind::SigmaPQ:
      for (std::size_t i = 0; i < n; ++i) m(i, i) = i < p ? 1.0 : -1.0;
      return m;
    case MKind::ReverseR:
      for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = 1.0;
      return m;
    case MKind::SymplecticJ:
      for (std::size_t i = 0; i < n / 2; ++i) {
        m(i, n / 2 + i) = 1.0;
        m(n / 2 + i, i) = -1.0;
      }
      return m;
  }
  return m;
}

RMatrix ScalarProduct::inverse() const { return transpose(matrix()); }

void ScalarProduct::validate() const {
  if (n == 0) throw DimensionError("scalar product of dimension 0");
  if (kind == MKind::SigmaPQ && p > n) throw DimensionError("Sigma_{p,q} needs p <= n");
  if (kind == MKind::SymplecticJ) require_even(n, "J");
}

std::string ScalarProduct::name() const {
  switch (kind) {
    case MKind::Identity: return "I";
    case MKind::SigmaPQ: return "sigma" + std::to_string(p);
    case MKind::ReverseR: return "R";
    case MKind::SymplecticJ: return "J";
  }
  return "?";
}

Pattern Pattern::parse(std::string_view bits) {
  Pattern out;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ParseError("pattern must be a 0/1 string");
    out.d.push_back(ch == '1');
  }
  return out;
}

std::string Pattern::str() const {
  std::string s;
  for (auto v : d) s.push_back(v ? '1' : '0');
  return s;
}

std::size_t Pattern::nnz() const noexcept {
  std::size_t c = 0;
  for (auto v : d) c += v;
  return c;
}

void Pattern::validate(std::size_t n) const {
  if (d.size() != (n > 0 ? n - 1 : 0))
    throw DimensionError("pattern length " + std::to_string(d.size()) + " does not fit n = " +
                         std::to_string(n));
  for (std::size_t j = 0; j + 1 < d.size(); ++j)
    if (d[j] && d[j + 1]) throw Error("pattern has overlapping 2x2 blocks at " + std::to_string(j));
}

std::string StructureClass::name() const {
  switch (kind) {
    case ClassKind::Jordan: return "jordan:" + sp->name();
    case ClassKind::Lie: return "lie:" + sp->name();
    case ClassKind::Automorphism: return "automorphism:" + sp->name();
    case ClassKind::QuasiTriangular: return "quasi:" + pattern.str();
  }
  return "?";
}

StructureClass parse_structure(std::string_view text, std::size_t n) {
  const auto colon = text.find(':');
  if (text == "triangular") return StructureClass::quasi_triangular(Pattern::zeros(n));
  if (colon == std::string_view::npos)
    throw ParseError("structure must look like kind:M or quasi:<bits>, got '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon), arg = text.substr(colon + 1);
  if (kind == "quasi") {
    Pattern d = Pattern::parse(arg);
    d.validate(n);
    return StructureClass::quasi_triangular(std::move(d));
  }
  ScalarProduct sp;
  if (arg == "I") {
    sp = ScalarProduct::identity(n);
  } else if (arg == "R") {
    sp = ScalarProduct::reverse(n);
  } else if (arg == "J") {
    sp = ScalarProduct::symplectic(n);
  } else if (arg.starts_with("sigma")) {
    std::size_t p = 0;
    const std::string digits(arg.substr(5));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("sigma needs an explicit p, e.g. sigma2");
    p = std::stoul(digits);
    if (p > n) throw ParseError("sigma p exceeds n");
    sp = ScalarProduct::sigma(p, n - p);
  } else {
    throw ParseError("unknown scalar product '" + std::string(arg) + "'");
  }
  sp.validate();
  if (kind == "jordan") return StructureClass::jordan(sp);
  if (kind == "lie") return StructureClass::lie(sp);
  if (kind == "automorphism") return StructureClass::automorphism(sp);
  throw ParseError("unknown structure kind '" + std::string(kind) + "'");
}

template <Scalar T>
Matrix<T> TangentBasis<T>::orthonormal_columns() const {
  if (orthonormal) return b;
  return qr(b).q;
}

template <Scalar T>
Matrix<T> adjoint(const Matrix<T>& a, const ScalarProduct& sp) {
  if (!a.is_square() || a.rows() != sp.n)
    throw DimensionError("adjoint: matrix size does not match the scalar product");
  const Matrix<T> at = sp.form == FormKind::Bilinear ? transpose(a) : adjoint_t(a);
  return lift<T>(sp.inverse()) * at * lift<T>(sp.matrix());
}

template <Scalar T>
Membership membership(const Matrix<T>& a, const StructureClass& cls, double tol) {
  if (!a.is_square()) return {false, std::numeric_limits<double>::infinity()};
  const std::size_t n = a.rows();
  double r = 0.0;
  if (cls.kind == ClassKind::QuasiTriangular) {
    if (cls.pattern.d.size() != (n > 0 ? n - 1 : 0))
      return {false, std::numeric_limits<double>::infinity()};
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j + 1; i < n; ++i)
        if (i > j + 1 || !cls.pattern.d[j]) s += abs2(a(i, j));
    r = std::sqrt(s);
  } else {
    if (!cls.sp || cls.sp->n != n) return {false, std::numeric_limits<double>::infinity()};
    const Matrix<T> star = adjoint(a, *cls.sp);
    switch (cls.kind) {
      case ClassKind::Jordan: r = frobenius_norm(star - a); break;
      case ClassKind::Lie: r = frobenius_norm(star + a); break;
      default: r = frobenius_norm(star * a - Matrix<T>::identity(n)); break;
    }
  }
  return {r <= tol * (1.0 + frobenius_norm(a)), r};
}

TangentBasis<double> basis_jordan_lie(const StructureClass& cls, std::size_t n) {
  if (cls.kind != ClassKind::Jordan && cls.kind != ClassKind::Lie)
    throw Error("basis_jordan_lie needs a Jordan or Lie class");
  require_bilinear(*cls.sp);
  if (cls.sp->n != n) throw DimensionError("basis_jordan_lie: n does not match the scalar product");
  const RMatrix d = d_matrix(n, cls.sp->mu() * cls.s());
  TangentBasis<double> out;
  out.b = left_apply(cls.sp->inverse(), d, n);
  out.p = out.b.cols();
  out.orthonormal = true;
  out.pinv_b = transpose(out.b);
  return out;
}

template <Scalar T>
TangentBasis<T> basis_automorphism(const Matrix<T>& a, const ScalarProduct& sp, double tol) {
  require_bilinear(sp);
  const Membership m = membership(a, StructureClass::automorphism(sp), tol);
  if (!m.member)
    throw MembershipError("matrix is not in the automorphism group of " + sp.name(), m.residual);
  const std::size_t n = a.rows();
  const RMatrix d = d_matrix(n, -sp.mu());
  TangentBasis<T> out;
  out.b = left_apply(a * lift<T>(sp.inverse()), d, n);
  out.p = out.b.cols();
  out.orthonormal = false;
  out.pinv_b = pinv(out.b);
  return out;
}

TangentBasis<double> basis_quasitriangular(const Pattern& d, std::size_t n) {
  d.validate(n);
  const std::size_t p = n * (n + 1) / 2 + d.nnz();
  TangentBasis<double> out;
  out.b = RMatrix(n * n, p);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) out.b(j * n + i, k++) = 1.0;
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (d.d[j]) out.b(j * n + j + 1, k++) = 1.0;
  out.p = p;
  out.orthonormal = true;
  out.pinv_b = transpose(out.b);
  return out;
}

template <Scalar T>
TangentBasis<T> full_space_basis(std::size_t n) {
  TangentBasis<T> out;
  out.b = Matrix<T>::identity(n * n);
  out.p = n * n;
  out.orthonormal = true;
  out.pinv_b = out.b;
  return out;
}

template <Scalar T>
TangentBasis<T> tangent_basis(const Matrix<T>& a, const StructureClass& cls, double tol) {
  if (cls.kind == ClassKind::Automorphism) return basis_automorphism(a, *cls.sp, tol);
  const Membership m = membership(a, cls, tol);
  if (!m.member) throw MembershipError("matrix is not in class " + cls.name(), m.residual);
  const TangentBasis<double> rb = cls.kind == ClassKind::QuasiTriangular
                                      ? basis_quasitriangular(cls.pattern, a.rows())
                                      : basis_jordan_lie(cls, a.rows());
  if constexpr (is_complex_v<T>)
    return {to_complex(rb.b), rb.p, rb.orthonormal, to_complex(rb.pinv_b)};
  else
    return rb;
}

std::optional<GenKind> parse_gen_kind(std::string_view name) noexcept {
  if (name == "skew-symmetric") return GenKind::SkewSymmetric;
  if (name == "symmetric") return GenKind::Symmetric;
  if (name == "hamiltonian") return GenKind::Hamiltonian;
  if (name == "orthogonal") return GenKind::Orthogonal;
  if (name == "symplectic") return GenKind::Symplectic;
  if (name == "perplectic") return GenKind::Perplectic;
  if (name == "lie") return GenKind::Lie;
  if (name == "jordan") return GenKind::Jordan;
  if (name == "automorphism") return GenKind::Automorphism;
  return std::nullopt;
}

std::string_view to_string(GenKind k) noexcept {
  switch (k) {
    case GenKind::SkewSymmetric: return "skew-symmetric";
    case GenKind::Symmetric: return "symmetric";
    case GenKind::Hamiltonian: return "hamiltonian";
    case GenKind::Orthogonal: return "orthogonal";
    case GenKind::Symplectic: return "symplectic";
    case GenKind::Perplectic: return "perplectic";
    case GenKind::Lie: return "lie";
    case GenKind::Jordan: return "jordan";
    case GenKind::Automorphism: return "automorphism";
  }
  return "?";
}

StructureClass generated_class(GenKind kind, std::size_t n, const GenParams& params) {
  auto need_sp = [&]() -> ScalarProduct {
    if (!params.sp) throw Error("generator '" + std::string(to_string(kind)) + "' needs a scalar product");
    return *params.sp;
  };
  switch (kind) {
    case GenKind::SkewSymmetric: return StructureClass::lie(ScalarProduct::identity(n));
    case GenKind::Symmetric: return StructureClass::jordan(ScalarProduct::identity(n));
    case GenKind::Hamiltonian: return StructureClass::lie(ScalarProduct::symplectic(n));
    case GenKind::Orthogonal: return StructureClass::automorphism(ScalarProduct::identity(n));
    case GenKind::Symplectic: return StructureClass::automorphism(ScalarProduct::symplectic(n));
    case GenKind::Perplectic: return StructureClass::automorphism(ScalarProduct::reverse(n));
    case GenKind::Lie: return StructureClass::lie(need_sp());
    case GenKind::Jordan: return StructureClass::jordan(need_sp());
    case GenKind::Automorphism: return StructureClass::automorphism(need_sp());
  }
  throw Error("unknown generator");
}

RMatrix gen_structured(GenKind kind, std::size_t n, std::uint64_t seed, const GenParams& params) {
  if (n == 0) throw DimensionError("generator needs n >= 1");
  Rng rng(seed);
  const StructureClass cls = generated_class(kind, n, params);
  if (cls.sp) {
    if (cls.sp->n != n) throw DimensionError("scalar product size does not match n");
    cls.sp->validate();
  }
  switch (kind) {
    case GenKind::SkewSymmetric:
    case GenKind::Symmetric:
    case GenKind::Lie:
    case GenKind::Jordan:
      return generic_lie(rng, *cls.sp, cls.kind == ClassKind::Lie ? -1.0 : 1.0);
    case GenKind::Hamiltonian:
      require_even(n, "Hamiltonian");
      return hamiltonian(rng, n);
    case GenKind::Symplectic:
      require_even(n, "symplectic");
      return exp_of_direction(hamiltonian(rng, n), params.tau);
    case GenKind::Orthogonal:
      if (params.tau <= 0.0) {
        Qr<double> f = qr(gaussian_matrix<double>(rng, n, n));
        for (std::size_t j = 0; j < n; ++j)
          if (f.r(j, j) < 0)
            for (std::size_t i = 0; i < n; ++i) f.q(i, j) = -f.q(i, j);
        return f.q;
      }
      [[fallthrough]];
    case GenKind::Perplectic:
    case GenKind::Automorphism:
      return exp_of_direction(generic_lie(rng, *cls.sp, -1.0), params.tau);
  }
  throw Error("unknown generator");
}

QuasiTriangular gen_quasitriangular(std::size_t n, double c, std::uint64_t seed) {
  if (n == 0) throw DimensionError("gen_quasitriangular needs n >= 1");
  if (!(c >= 1.0)) throw Error("gen_quasitriangular needs c >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  QuasiTriangular out{RMatrix(n, n), Pattern::zeros(n), {}};
  std::vector<double> re(n);
  for (std::size_t k = 0; k < n; ++k)
    re[k] = n == 1 ? -1.0 : -1.0 - (c - 1.0) * static_cast<double>(k) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n;) {
    if (j + 1 < n && unif(rng) < 0.3) {
      const double alpha = re[j];
      const double beta = std::abs(alpha) * (0.1 + 0.9 * unif(rng));
      out.u(j, j) = alpha;
      out.u(j + 1, j + 1) = alpha;
      out.u(j, j + 1) = beta;
      out.u(j + 1, j) = -beta;
      out.d.d[j] = 1;
      out.eigenvalues.push_back({alpha, beta});
      out.eigenvalues.push_back({alpha, -beta});
      j += 2;
    } else {
      out.u(j, j) = re[j];
      out.eigenvalues.push_back(re[j]);
      j += 1;
    }
  }
  double scale = 0.0;
  for (cplx l : out.eigenvalues) scale += std::abs(l);
  scale /= static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!(i + 1 == j && out.d.d[i])) out.u(i, j) = scale * gaussian(rng);
  return out;
}

template <Scalar T>
Pattern detect_pattern(const Matrix<T>& u, double tol) {
  if (!u.is_square()) throw DimensionError("detect_pattern needs a square matrix");
  const std::size_t n = u.rows();
  const double thresh = tol * (1.0 + frobenius_norm(u));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 2; i < n; ++i)
      if (std::abs(u(i, j)) > thresh) throw Error("matrix is not quasi-triangular");
  Pattern d = Pattern::zeros(n);
  for (std::size_t j = 0; j + 1 < n; ++j) d.d[j] = std::abs(u(j + 1, j)) > thresh;
  d.validate(n);
  return d;
}

#define MATCOND_INSTANTIATE(T)                                                         \
  template Matrix<T> TangentBasis<T>::orthonormal_columns() const;                    \
  template Matrix<T> adjoint(const Matrix<T>&, const ScalarProduct&);                 \
  template Membership membership(const Matrix<T>&, const StructureClass&, double);    \
  template TangentBasis<T> basis_automorphism(const Matrix<T>&, const ScalarProduct&, \
                                              double);                                \
  template TangentBasis<T> tangent_basis(const Matrix<T>&, const StructureClass&,     \
                                         double);                                     \
  template TangentBasis<T> full_space_basis<T>(std::size_t);                          \
  template Pattern detect_pattern(const Matrix<T>&, double);

MATCOND_INSTANTIATE(double)
MATCOND_INSTANTIATE(cplx)

}  // namespace matcond
