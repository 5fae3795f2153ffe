#pragma once

// Exact scalars for the toolkit: rationals (GMP) or residues modulo a prime.
//
// A Scalar carries the modulus of the field it was created in (0 for the
// rationals).  Integer literals such as Scalar(0) are "unbound": they are
// valid in every field and adopt the modulus of whatever they are combined
// with.  Values that must be field-aware (units, relation coefficients) are
// created through a Field.

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>

namespace qha {

class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : v_(v) {}  // NOLINT: literal conversion is intended
  Scalar(mpq_class v, std::uint32_t modulus);

  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }
  [[nodiscard]] std::uint32_t modulus() const { return p_; }
  [[nodiscard]] const mpq_class& value() const { return v_; }

  [[nodiscard]] Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  [[nodiscard]] std::string str() const;

 private:
  void reduce();

  mpq_class v_{0};
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// The ground field: the rationals or a prime field F_p.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field{}; }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  /// Accepts "Q" or "Fp:<p>".
  static Field parse(std::string_view text);

  [[nodiscard]] bool is_rational() const { return p_ == 0; }
  [[nodiscard]] std::uint32_t characteristic() const { return p_; }

  [[nodiscard]] Scalar zero() const { return Scalar(mpq_class(0), p_); }
  [[nodiscard]] Scalar one() const { return Scalar(mpq_class(1), p_); }
  [[nodiscard]] Scalar from_int(long v) const { return Scalar(mpq_class(v), p_); }
  /// Throws std::domain_error when the denominator vanishes in the field.
  [[nodiscard]] Scalar from_rational(const mpq_class& q) const;

  [[nodiscard]] std::string str() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

Matrix zero_matrix(Eigen::Index rows, Eigen::Index cols);
Matrix identity_matrix(Eigen::Index n, const Field& field);
Vector zero_vector(Eigen::Index n);
Vector unit_vector(Eigen::Index n, Eigen::Index i, const Field& field);
bool is_zero(const Matrix& m);

}  // namespace qha

namespace Eigen {
template <>
struct NumTraits<qha::Scalar> : GenericNumTraits<qha::Scalar> {
  using Real = qha::Scalar;
  using NonInteger = qha::Scalar;
  using Nested = qha::Scalar;
  using Literal = qha::Scalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static qha::Scalar epsilon() { return 0; }
  static qha::Scalar dummy_precision() { return 0; }
  static qha::Scalar highest() { return 0; }
  static qha::Scalar lowest() { return 0; }
  static int digits10() { return 0; }
};
}  // namespace Eigen
