#pragma once

// Finite-dimensional graded basic algebras given by a basis and structure
// constants.
//
// Every algebra carries n orthogonal idempotents e_1..e_n among its basis
// elements; all other basis elements are homogeneous, of the form e_t x e_s,
// and span the Jacobson radical.  Products follow the composition
// convention of the presentations: b_i * b_j means "b_j first, then b_i" and
// is nonzero only when source(b_i) == target(b_j).

#include "qha/presentation.hpp"
#include "qha/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qha {

struct BasisElement {
  int degree = 0;
  int source = 0;
  int target = 0;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

using SparseVector = std::vector<std::pair<int, Scalar>>;
/// Generator indices in written order (the last one acts first).
using Word = std::vector<int>;

struct WordTerm {
  Scalar coeff;
  Word word;
};

/// A homogeneous element e_t x e_s of the radical, part of a generating set.
struct Generator {
  std::string label;
  int source = 0;
  int target = 0;
  int degree = 0;
  Vector element;
};

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/// Graded dimension table keyed by (source, target, degree).
using DimTable = std::map<std::tuple<int, int, int>, int>;

class GradedAlgebra {
 public:
  struct Data {
    Field field;
    std::string name;
    std::vector<std::string> vertex_labels;
    std::vector<BasisElement> basis;
    std::vector<int> idempotents;     ///< basis index of e_v for each vertex v
    std::vector<SparseVector> table;  ///< table[i * dim + j] = b_i * b_j
  };

  /// Generators are chosen as a basis of rad/rad^2 and every radical basis
  /// element is expressed through words in them.
  static AlgebraPtr create(Data data);
  static AlgebraPtr create(Data data, std::vector<Generator> generators, std::vector<std::vector<WordTerm>> words);

  GradedAlgebra(const GradedAlgebra&) = delete;
  GradedAlgebra& operator=(const GradedAlgebra&) = delete;

  [[nodiscard]] const Field& field() const { return data_.field; }
  [[nodiscard]] const std::string& name() const { return data_.name; }
  [[nodiscard]] int num_vertices() const { return static_cast<int>(data_.idempotents.size()); }
  [[nodiscard]] int dim() const { return static_cast<int>(data_.basis.size()); }
  [[nodiscard]] const std::vector<std::string>& vertex_labels() const { return data_.vertex_labels; }
  [[nodiscard]] const BasisElement& element(int i) const { return data_.basis[static_cast<size_t>(i)]; }
  [[nodiscard]] const std::vector<BasisElement>& basis() const { return data_.basis; }
  [[nodiscard]] int idempotent(int v) const { return data_.idempotents[static_cast<size_t>(v)]; }
  [[nodiscard]] bool is_idempotent(int i) const { return idempotent_vertex_[static_cast<size_t>(i)] >= 0; }
  [[nodiscard]] const SparseVector& product(int i, int j) const {
    return data_.table[static_cast<size_t>(i) * data_.basis.size() + static_cast<size_t>(j)];
  }
  [[nodiscard]] const Data& data() const { return data_; }

  [[nodiscard]] Vector unit(int i) const { return unit_vector(dim(), i, field()); }
  [[nodiscard]] Vector multiply(const Vector& x, const Vector& y) const;

  [[nodiscard]] const std::vector<Generator>& generators() const { return generators_; }
  /// Expression of a radical basis element through generator words (empty for
  /// idempotents).
  [[nodiscard]] const std::vector<WordTerm>& word_expansion(int i) const { return words_[static_cast<size_t>(i)]; }
  /// Evaluates a generator word in the algebra.
  [[nodiscard]] Vector evaluate(const Word& w) const;

  [[nodiscard]] int min_degree() const;
  [[nodiscard]] int max_degree() const;
  [[nodiscard]] DimTable graded_dims() const;
  /// Total dimension per degree, from min_degree() to max_degree().
  [[nodiscard]] std::vector<int> degree_dims() const;

  /// Same field, vertices, basis metadata and structure constants (names are
  /// ignored).
  friend bool same_structure(const GradedAlgebra& a, const GradedAlgebra& b);

 private:
  explicit GradedAlgebra(Data data);
  void compute_generators();
  void compute_words();
  friend AlgebraPtr opposite(const AlgebraPtr& a);

  Data data_;
  std::vector<int> idempotent_vertex_;
  std::vector<Generator> generators_;
  std::vector<std::vector<WordTerm>> words_;

  mutable std::mutex opposite_mutex_;
  mutable AlgebraPtr opposite_;
  mutable std::weak_ptr<const GradedAlgebra> origin_;
};

/// The opposite algebra; opposite(opposite(a)) returns a itself while a is
/// alive, so modules and their duals agree on algebra identity.
AlgebraPtr opposite(const AlgebraPtr& a);

int default_degree_cap(const QuiverPresentation& p);

/// Degree-by-degree quotient of the path algebra by the relation ideal.
/// Throws NotFiniteDimensional when paths survive at the degree cap.
AlgebraPtr build_algebra(const QuiverPresentation& p, std::optional<int> degree_cap = std::nullopt);

enum class CombineMode { Opposite, DirectSum, Tensor, Truncate };

/// opposite / direct_sum / tensor / truncate(lambda).  Vertex orders: for a
/// direct sum all of a's vertices precede b's; for a tensor product the
/// pairs are ordered lexicographically.  Truncation requires the maximal
/// vertex (0-based index n-1).
AlgebraPtr combine(CombineMode mode, const AlgebraPtr& a, const AlgebraPtr& b = nullptr, int vertex = -1);
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraPtr truncate(const AlgebraPtr& a, int vertex);
/// Algebra on basis elements b_k with b_k * b_l = product(k, l), called only
/// when source(k) == target(l).  With opposite set the result is the opposite
/// algebra: tags are swapped and the multiplication reversed.
AlgebraPtr algebra_from_products(const Field& field, const std::string& name,
                                 const std::vector<std::string>& vertex_labels, const std::vector<BasisElement>& basis,
                                 const std::vector<int>& idempotents,
                                 const std::function<SparseVector(int, int)>& product, bool opposite);

/// Regraded copy of a: every basis element's degree is replaced.
AlgebraPtr with_degrees(const AlgebraPtr& a, const std::vector<int>& degrees, const std::string& name);

/// Arrows are a basis of rad/rad^2 split by (source, target, degree);
/// relations minimally generate the kernel of the path algebra map, listed
/// degree by degree.  Throws Degree0NotSemisimple unless a is positively
/// graded with semisimple degree-0 part.
QuiverPresentation extract_presentation(const AlgebraPtr& a);

struct GradingDiagnostics {
  bool positively_graded = false;
  bool quadratic = false;
  std::vector<int> graded_dims;  ///< total dimension per degree starting at min_degree
  int min_degree = 0;
};

GradingDiagnostics grading_diagnostics(const AlgebraPtr& a);

/// Checks (xy)z == x(yz) over all composable basis triples.
bool is_associative(const GradedAlgebra& a);

}  // namespace qha
