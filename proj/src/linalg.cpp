#include "qha/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace qha {

std::uint32_t modulus_of(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j).modulus() != 0) return m(i, j).modulus();
  return 0;
}

namespace {

using Index = Eigen::Index;

// Integer rows for fraction-free elimination.
using IntRow = std::vector<mpz_class>;

void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& x : row) {
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (auto& x : row)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Echelon echelon_rational(const Matrix& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<IntRow> a(static_cast<size_t>(rows), IntRow(static_cast<size_t>(cols)));
  for (Index i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (Index j = 0; j < cols; ++j) {
      const auto& d = m(i, j).value().get_den();
      if (d != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (Index j = 0; j < cols; ++j) {
      const mpq_class& q = m(i, j).value();
      if (sgn(q) != 0) a[i][j] = q.get_num() * (l / q.get_den());
    }
    make_primitive(a[i]);
  }

  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index sel = -1;
    for (Index i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        // prefer short pivots to limit growth
        if (sel < 0 || abs(a[i][c]) < abs(a[sel][c])) sel = i;
        if (abs(a[sel][c]) == 1) break;
      }
    if (sel < 0) continue;
    std::swap(a[r], a[sel]);
    const mpz_class piv = a[r][c];
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpz_class b = a[i][c];
      for (Index j = 0; j < cols; ++j) {
        if (a[r][j] == 0) {
          if (a[i][j] != 0) a[i][j] *= piv;
          continue;
        }
        a[i][j] = piv * a[i][j] - b * a[r][j];
      }
      make_primitive(a[i]);
    }
    pivots.push_back(c);
    ++r;
  }

  Echelon e;
  e.pivots = pivots;
  e.rows = zero_matrix(r, cols);
  for (Index i = 0; i < r; ++i) {
    const mpz_class& piv = a[i][pivots[i]];
    for (Index j = 0; j < cols; ++j)
      if (a[i][j] != 0) e.rows(i, j) = Scalar(mpq_class(a[i][j], piv), 0);
  }
  return e;
}

Echelon echelon_modular(const Matrix& m, std::uint32_t p) {
  Matrix a = m;
  const Index rows = a.rows();
  const Index cols = a.cols();
  const Field field = Field::prime(p);
  // bind stray integer literals to the field
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i)
      if (!a(i, j).is_zero()) a(i, j) *= field.one();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index sel = -1;
    for (Index i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) a.row(r).swap(a.row(sel));
    const Scalar inv = (a(r, c) * field.one()).inverse();
    for (Index j = c; j < cols; ++j)
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar b = a(i, c);
      for (Index j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= b * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon e;
  e.pivots = pivots;
  e.rows = a.topRows(r);
  return e;
}

}  // namespace

Echelon echelon(const Matrix& m) {
  const std::uint32_t p = modulus_of(m);
  return p == 0 ? echelon_rational(m) : echelon_modular(m, p);
}

namespace {

Matrix kernel_from_echelon(const Echelon& e, Index cols, std::uint32_t p) {
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (Index c : e.pivots) is_pivot[c] = true;
  const Field field = p == 0 ? Field::rationals() : Field::prime(p);
  const Index nullity = cols - e.rank();
  Matrix k = zero_matrix(cols, nullity);
  Index col = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    k(f, col) = field.one();
    for (Index r = 0; r < e.rank(); ++r)
      if (!e.rows(r, f).is_zero()) k(e.pivots[r], col) = -e.rows(r, f);
    ++col;
  }
  return k;
}

}  // namespace

RowReduction row_reduce(const Matrix& m) {
  const Echelon e = echelon(m);
  RowReduction out;
  out.rank = e.rank();
  out.kernel_basis = kernel_from_echelon(e, m.cols(), modulus_of(m));
  out.image_basis = zero_matrix(m.rows(), e.rank());
  for (Index r = 0; r < e.rank(); ++r) out.image_basis.col(r) = m.col(e.pivots[r]);
  return out;
}

Index rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return echelon(m).rank();
}

Matrix kernel(const Matrix& m) {
  if (m.rows() == 0) {
    // every vector is in the kernel
    Matrix k = zero_matrix(m.cols(), m.cols());
    const std::uint32_t p = modulus_of(m);
    const Field field = p == 0 ? Field::rationals() : Field::prime(p);
    for (Index i = 0; i < m.cols(); ++i) k(i, i) = field.one();
    return k;
  }
  return kernel_from_echelon(echelon(m), m.cols(), modulus_of(m));
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs) {
  if (rhs.rows() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const Index n = m.cols();
  if (m.rows() == 0) return zero_matrix(n, rhs.cols());
  Matrix aug(m.rows(), n + rhs.cols());
  aug << m, rhs;
  const Echelon e = echelon(aug);
  Matrix x = zero_matrix(n, rhs.cols());
  for (Index r = 0; r < e.rank(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (Index j = 0; j < rhs.cols(); ++j) x(e.pivots[r], j) = e.rows(r, n + j);
  }
  return x;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  auto x = solve(m, Matrix(rhs));
  if (!x) return std::nullopt;
  return Vector(x->col(0));
}

std::vector<Index> independent_columns(const Matrix& m) {
  if (m.rows() == 0) return {};
  const Echelon e = echelon(m);
  return e.pivots;
}

std::vector<Index> complement_indices(const Matrix& cols) {
  const Index n = cols.rows();
  const std::uint32_t p = modulus_of(cols);
  const Field field = p == 0 ? Field::rationals() : Field::prime(p);
  Matrix aug(n, cols.cols() + n);
  aug << cols, identity_matrix(n, field);
  const auto piv = independent_columns(aug);
  std::vector<Index> out;
  for (Index c : piv)
    if (c >= cols.cols()) out.push_back(c - cols.cols());
  return out;
}

Coordinates::Coordinates(Matrix basis) : basis_(std::move(basis)) {
  const Index k = basis_.cols();
  if (k == 0) return;
  // rows of the basis where a k x k submatrix is invertible
  const Echelon e = echelon(basis_.transpose());
  if (e.rank() != k) throw std::invalid_argument("Coordinates: basis columns are dependent");
  rows_ = e.pivots;
  Matrix sub(k, k);
  for (Index i = 0; i < k; ++i) sub.row(i) = basis_.row(rows_[i]);
  const std::uint32_t p = modulus_of(sub);
  const Field field = p == 0 ? Field::rationals() : Field::prime(p);
  auto inv = solve(sub, identity_matrix(k, field));
  inverse_ = *inv;
}

Vector Coordinates::of_unchecked(const Vector& v) const {
  const Index k = basis_.cols();
  Vector sel(k);
  for (Index i = 0; i < k; ++i) sel(i) = v(rows_[i]);
  return k == 0 ? Vector(zero_vector(0)) : Vector(inverse_ * sel);
}

std::optional<Vector> Coordinates::of(const Vector& v) const {
  Vector x = of_unchecked(v);
  const Vector back = basis_.cols() == 0 ? Vector(zero_vector(v.size())) : Vector(basis_ * x);
  for (Index i = 0; i < v.size(); ++i)
    if (back(i) != v(i)) return std::nullopt;
  return x;
}

QuotientMap quotient_map(const Matrix& sub, Index n, const Field& field) {
  // independent part of the subspace, then complete it by unit vectors
  Matrix indep;
  {
    const auto piv = independent_columns(sub);
    indep = zero_matrix(n, static_cast<Index>(piv.size()));
    for (size_t i = 0; i < piv.size(); ++i) indep.col(static_cast<Index>(i)) = sub.col(piv[i]);
  }
  const auto comp = complement_indices(indep);
  const Index c = static_cast<Index>(comp.size());
  Matrix full(n, indep.cols() + c);
  full.leftCols(indep.cols()) = indep;
  for (Index j = 0; j < c; ++j) full.col(indep.cols() + j) = unit_vector(n, comp[j], field);
  // q = last c rows of full^{-1}
  auto inv = solve(full, identity_matrix(n, field));
  QuotientMap out;
  out.projection = inv->bottomRows(c);
  out.section = full.rightCols(c);
  return out;
}

Matrix hcat(const std::vector<Matrix>& blocks, Index rows) {
  Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  Matrix out = zero_matrix(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    if (b.cols() > 0) out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

Matrix vcat(const std::vector<Matrix>& blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix out = zero_matrix(rows, cols);
  Index at = 0;
  for (const auto& b : blocks) {
    if (b.rows() > 0) out.middleRows(at, b.rows()) = b;
    at += b.rows();
  }
  return out;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix out = zero_matrix(a.rows(), b.cols());
  for (Eigen::Index k = 0; k < a.cols(); ++k)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

}  // namespace qha
