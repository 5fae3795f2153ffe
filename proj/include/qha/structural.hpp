#pragma once

// The structural modules of a graded quasi-hereditary algebra: simples,
// indecomposable projectives and injectives, standard and costandard
// modules and the indecomposable tilting modules, all in their canonical
// graded lift (centroid 0), together with standard filtrations.

#include "qha/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qha {

enum class Order { Natural, Opposite };

enum class ModuleClass { Simple, Projective, Injective, Standard, Costandard, Tilting };

std::string class_symbol(ModuleClass c);  // "L", "P", "I", "Delta", "Nabla", "T"

/// Position of each vertex in the order (higher is bigger).
std::vector<int> order_ranks(int n, Order order);

class Catalog {
 public:
  /// Builds all six families; tilting modules require quasi-heredity and
  /// throw NotQuasiHereditary otherwise.
  explicit Catalog(AlgebraPtr algebra, Order order = Order::Natural);
  /// Only L, P, I, Delta and Nabla.
  static Catalog basics(AlgebraPtr algebra, Order order = Order::Natural);

  [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }
  [[nodiscard]] int size() const { return algebra_->num_vertices(); }
  [[nodiscard]] Order order() const { return order_; }
  [[nodiscard]] bool has_tilting() const { return !tilting_.empty(); }
  /// True when mu is strictly above lambda in the order.
  [[nodiscard]] bool above(int mu, int lambda) const { return ranks_[mu] > ranks_[lambda]; }
  /// Vertices from the top of the order down.
  [[nodiscard]] std::vector<int> descending() const;

  [[nodiscard]] const GradedModule& get(ModuleClass c, int vertex) const;
  [[nodiscard]] const GradedModule& simple(int v) const { return simple_[v]; }
  [[nodiscard]] const GradedModule& projective(int v) const { return projective_[v]; }
  [[nodiscard]] const GradedModule& injective(int v) const { return injective_[v]; }
  [[nodiscard]] const GradedModule& standard(int v) const { return standard_[v]; }
  [[nodiscard]] const GradedModule& costandard(int v) const { return costandard_[v]; }
  [[nodiscard]] const GradedModule& tilting(int v) const { return tilting_[v]; }
  /// Delta(v) -> T(v).
  [[nodiscard]] const ModuleMap& standard_inclusion(int v) const { return standard_inclusion_[v]; }
  /// Delta over the opposite algebra (its duals are the costandard modules).
  [[nodiscard]] const GradedModule& opposite_standard(int v) const { return opposite_standard_[v]; }

 private:
  Catalog(AlgebraPtr algebra, Order order, bool with_tilting);

  AlgebraPtr algebra_;
  Order order_;
  std::vector<int> ranks_;
  std::vector<GradedModule> simple_, projective_, injective_, standard_, costandard_, tilting_, opposite_standard_;
  std::vector<ModuleMap> standard_inclusion_;
};

/// Delta(v) = P(v) modulo the trace of the projectives above v.
GradedModule standard_module(const AlgebraPtr& a, int vertex, Order order = Order::Natural);
/// Nabla(v) = D(Delta(v) over the opposite algebra).
GradedModule costandard_module(const AlgebraPtr& a, int vertex, Order order = Order::Natural);
/// Ringel's construction: universal extensions of Delta(v) by the standard
/// modules below v, processed from the top of the order down.
UniversalExtension tilting_module(const Catalog& catalog, int vertex);

struct Filtration {
  /// Subquotients Delta(v)<shift> listed from the top of m to its bottom.
  std::optional<std::vector<ShiftedIndex>> layers;
  /// When no filtration exists: the quotient where peeling got stuck.
  GradedModule stuck;
};

/// Peels off, from the bottom, the submodule generated by the highest
/// vertex present; it must be a sum of shifted standard modules.
Filtration standard_filtration(const Catalog& catalog, const GradedModule& m);
/// Nabla-filtration of m via the standard filtration of D(m).
Filtration costandard_filtration(const Catalog& catalog, const GradedModule& m);

struct QuasiHereditaryCertificate {
  bool quasi_hereditary = false;
  Order order = Order::Natural;
  /// Delta-filtration of each P(v), when found.
  std::vector<std::optional<std::vector<ShiftedIndex>>> projective_filtrations;
  /// First failing vertex and why, when not quasi-hereditary.
  int failing_vertex = -1;
  std::string reason;
};

QuasiHereditaryCertificate is_quasi_hereditary(const AlgebraPtr& a, Order order = Order::Natural);

}  // namespace qha
