#include "qha/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace qha {

namespace {

std::uint32_t common_modulus(std::uint32_t a, std::uint32_t b) {
  if (a != 0 && b != 0 && a != b) throw std::logic_error("scalars from different fields combined");
  return a != 0 ? a : b;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Scalar::Scalar(mpq_class v, std::uint32_t modulus) : v_(std::move(v)), p_(modulus) {
  v_.canonicalize();
  reduce();
}

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class p(p_);
  mpz_class num = v_.get_num();
  mpz_class den = v_.get_den();
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
      throw std::domain_error("denominator vanishes modulo " + std::to_string(p_));
    num *= inv;
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  v_ = mpq_class(r);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (p_ == 0) return Scalar(1 / v_, 0);
  mpz_class inv;
  mpz_class p(p_);
  mpz_class num = v_.get_num();
  mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  return Scalar(mpq_class(inv), p_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  p_ = common_modulus(p_, o.p_);
  v_ += o.v_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  p_ = common_modulus(p_, o.p_);
  v_ -= o.v_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  p_ = common_modulus(p_, o.p_);
  if (is_zero()) return *this;
  if (o.is_zero()) {
    v_ = 0;
    return *this;
  }
  v_ *= o.v_;
  reduce();
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.v_ = -r.v_;
  r.reduce();
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.v_ == b.v_;
  // An unbound literal compared with a bound residue: compare in the field.
  return (a - b).is_zero();
}

std::string Scalar::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a prime below 2^31");
  return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.size() > 3 && text.substr(0, 3) == "Fp:") {
    std::uint64_t p = 0;
    for (char c : text.substr(3)) {
      if (c < '0' || c > '9') throw std::invalid_argument("malformed field '" + std::string(text) + "'");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p >= (1ULL << 31)) break;
    }
    return prime(p);
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or Fp:<p>)");
}

Scalar Field::from_rational(const mpq_class& q) const { return Scalar(q, p_); }

std::string Field::str() const { return p_ == 0 ? "Q" : "Fp:" + std::to_string(p_); }

Matrix zero_matrix(Eigen::Index rows, Eigen::Index cols) { return Matrix::Constant(rows, cols, Scalar(0)); }

Matrix identity_matrix(Eigen::Index n, const Field& field) {
  Matrix m = zero_matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Vector zero_vector(Eigen::Index n) { return Vector::Constant(n, Scalar(0)); }

Vector unit_vector(Eigen::Index n, Eigen::Index i, const Field& field) {
  Vector v = zero_vector(n);
  v(i) = field.one();
  return v;
}

bool is_zero(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

}  // namespace qha
