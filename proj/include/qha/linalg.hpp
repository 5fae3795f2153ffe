#pragma once

// Exact dense linear algebra over Scalar: echelon forms, kernels, solving,
// subspace coordinates and quotient projections.

#include "qha/scalar.hpp"

#include <optional>
#include <vector>

namespace qha {

/// Reduced row echelon form: `rows` has one row per pivot, each pivot equal
/// to one and the only nonzero entry of its column.
struct Echelon {
  Matrix rows;
  std::vector<Eigen::Index> pivots;
  [[nodiscard]] Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Gauss-Jordan elimination.  Over the rationals rows are kept integral and
/// primitive (fraction-free with content removal) until the final pivot
/// normalisation.
Echelon echelon(const Matrix& m);

struct RowReduction {
  Eigen::Index rank = 0;
  Matrix kernel_basis;  ///< columns span the null space
  Matrix image_basis;   ///< columns are the pivot columns of the input
};

RowReduction row_reduce(const Matrix& m);

Eigen::Index rank(const Matrix& m);
Matrix kernel(const Matrix& m);
/// Returns some x with m * x == rhs, or nothing if the system is inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);
/// Column-wise solve; nothing if any column is inconsistent.
std::optional<Matrix> solve(const Matrix& m, const Matrix& rhs);

/// Columns of `m` forming a basis of its column span (greedy, left to right).
std::vector<Eigen::Index> independent_columns(const Matrix& m);

/// Indices of standard basis vectors completing span(cols) to the whole space.
std::vector<Eigen::Index> complement_indices(const Matrix& cols);

/// Coordinates with respect to a fixed basis (the columns of `basis`, assumed
/// independent).
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(Matrix basis);

  [[nodiscard]] Eigen::Index dim() const { return basis_.cols(); }
  [[nodiscard]] Eigen::Index ambient() const { return basis_.rows(); }
  [[nodiscard]] const Matrix& basis() const { return basis_; }
  /// Coordinates of v, or nothing when v is outside the span.
  [[nodiscard]] std::optional<Vector> of(const Vector& v) const;
  /// Coordinates without the membership check.
  [[nodiscard]] Vector of_unchecked(const Vector& v) const;

 private:
  Matrix basis_;
  std::vector<Eigen::Index> rows_;
  Matrix inverse_;
};

/// A projection onto a complement of span(sub): returns q (c x n) with
/// kernel exactly span(sub), and a section s (n x c) with q * s = 1.
struct QuotientMap {
  Matrix projection;
  Matrix section;
};
QuotientMap quotient_map(const Matrix& sub, Eigen::Index ambient_dim, const Field& field);

/// Concatenate column blocks (all with the same number of rows).
Matrix hcat(const std::vector<Matrix>& blocks, Eigen::Index rows);
/// Stack row blocks (all with the same number of columns).
Matrix vcat(const std::vector<Matrix>& blocks, Eigen::Index cols);

/// Product skipping zero entries of the left factor (module matrices are
/// mostly zero).
Matrix mul(const Matrix& a, const Matrix& b);

/// The modulus shared by the nonzero entries of m (0 for rationals).
std::uint32_t modulus_of(const Matrix& m);

}  // namespace qha
