#pragma once

// Scalar products <x, y> = x^T M y (bilinear) or x^* M y (sesquilinear), the
// classes they induce, tangent-space bases and seeded test-matrix generators.
//
// M is one of I, Sigma_{p,q} = diag(I_p, -I_q), the reverse identity R, or
// J = [0 I; -I 0].  All four are real orthogonal with M = mu * M^T.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matcond/matrix.hpp"

namespace matcond {

enum class MKind { Identity, SigmaPQ, ReverseR, SymplecticJ };
enum class FormKind { Bilinear, Sesquilinear };

struct ScalarProduct {
  MKind kind = MKind::Identity;
  std::size_t n = 0;
  std::size_t p = 0;  // SigmaPQ only; q = n - p
  FormKind form = FormKind::Bilinear;

  static ScalarProduct identity(std::size_t n) { return {MKind::Identity, n}; }
  static ScalarProduct sigma(std::size_t p, std::size_t q) { return {MKind::SigmaPQ, p + q, p}; }
  static ScalarProduct reverse(std::size_t n) { return {MKind::ReverseR, n}; }
  static ScalarProduct symplectic(std::size_t n) { return {MKind::SymplecticJ, n}; }

  int mu() const noexcept { return kind == MKind::SymplecticJ ? -1 : 1; }
  RMatrix matrix() const;
  RMatrix inverse() const;  // M^T
  void validate() const;
  std::string name() const;  // "I", "sigma2", "R", "J"
};

enum class ClassKind { Jordan, Lie, Automorphism, QuasiTriangular };

/// Subdiagonal pattern of a quasi-triangular matrix: d[j] = 1 allows a
/// nonzero at (j+1, j).  No two consecutive ones.
struct Pattern {
  std::vector<std::uint8_t> d;

  static Pattern zeros(std::size_t n) { return {std::vector<std::uint8_t>(n > 0 ? n - 1 : 0, 0)}; }
  static Pattern parse(std::string_view bits);
  std::string str() const;
  std::size_t nnz() const noexcept;
  void validate(std::size_t n) const;
  bool operator==(const Pattern&) const = default;
};

struct StructureClass {
  ClassKind kind = ClassKind::Jordan;
  std::optional<ScalarProduct> sp;  // absent for QuasiTriangular
  Pattern pattern;                   // QuasiTriangular only

  static StructureClass jordan(ScalarProduct s) { return {ClassKind::Jordan, s, {}}; }
  static StructureClass lie(ScalarProduct s) { return {ClassKind::Lie, s, {}}; }
  static StructureClass automorphism(ScalarProduct s) { return {ClassKind::Automorphism, s, {}}; }
  static StructureClass quasi_triangular(Pattern d) {
    return {ClassKind::QuasiTriangular, std::nullopt, std::move(d)};
  }

  int s() const noexcept { return kind == ClassKind::Lie ? -1 : 1; }
  std::string name() const;  // "jordan:I", "lie:J", "automorphism:sigma2", "quasi:0100"
};

/// Parses the names produced by StructureClass::name for a given n.
StructureClass parse_structure(std::string_view text, std::size_t n);

template <Scalar T>
struct TangentBasis {
  Matrix<T> b;        // n^2 x p
  std::size_t p = 0;
  bool orthonormal = false;
  Matrix<T> pinv_b;   // p x n^2

  /// Orthonormal columns spanning range(b): b itself, or the Q factor of qr(b).
  Matrix<T> orthonormal_columns() const;
};

struct Membership {
  bool member = false;
  double residual = 0.0;
};

template <Scalar T>
Matrix<T> adjoint(const Matrix<T>& a, const ScalarProduct& sp);

/// Residual ||A* - A||_F, ||A* + A||_F, ||A* A - I||_F, or the norm of the
/// entries the pattern forbids.  member = residual <= tol * (1 + ||a||_F).
template <Scalar T>
Membership membership(const Matrix<T>& a, const StructureClass& cls, double tol);

TangentBasis<double> basis_jordan_lie(const StructureClass& cls, std::size_t n);

/// Throws MembershipError when a is not in the automorphism group of sp.
template <Scalar T>
TangentBasis<T> basis_automorphism(const Matrix<T>& a, const ScalarProduct& sp,
                                   double tol = 1e-8);

TangentBasis<double> basis_quasitriangular(const Pattern& d, std::size_t n);

/// Basis appropriate for a at cls; checks membership first.
template <Scalar T>
TangentBasis<T> tangent_basis(const Matrix<T>& a, const StructureClass& cls, double tol = 1e-8);

template <Scalar T>
TangentBasis<T> full_space_basis(std::size_t n);

enum class GenKind {
  SkewSymmetric,
  Symmetric,
  Hamiltonian,
  Orthogonal,
  Symplectic,
  Perplectic,
  Lie,           // generic, needs sp
  Jordan,        // generic, needs sp
  Automorphism,  // generic, needs sp
};

struct GenParams {
  double tau = 1.0;                 // group generators: expm(tau * L / ||L||_2)
  std::optional<ScalarProduct> sp;  // generic kinds
};

std::optional<GenKind> parse_gen_kind(std::string_view name) noexcept;
std::string_view to_string(GenKind k) noexcept;

/// Class that matrices from this generator belong to.
StructureClass generated_class(GenKind kind, std::size_t n, const GenParams& params);

/// Deterministic for fixed (kind, n, seed, params).  Orthogonal with tau <= 0
/// is the sign-fixed Q factor of a Gaussian matrix; with tau > 0 it is
/// expm(tau * S / ||S||_2) for a skew-symmetric S.
RMatrix gen_structured(GenKind kind, std::size_t n, std::uint64_t seed, const GenParams& params);

struct QuasiTriangular {
  RMatrix u;
  Pattern d;
  std::vector<cplx> eigenvalues;
};

/// Upper quasi-triangular U with real parts of the eigenvalues equidistant in
/// [-c, -1].  Seeded adjacent pairs become [a b; -b a] blocks.
QuasiTriangular gen_quasitriangular(std::size_t n, double c, std::uint64_t seed);

template <Scalar T>
Pattern detect_pattern(const Matrix<T>& u, double tol);

}  // namespace matcond
