#pragma once

// Ringel and Koszul duals, the Koszul / standard Koszul / balanced checks,
// and isomorphism testing for graded algebras.

#include "qha/homological.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qha {

struct DualityResult {
  AlgebraPtr algebra;
  /// Order certifying quasi-heredity of the result, when one does.
  std::optional<Order> order;
  std::string provenance;
  /// Result vertex -> input vertex.
  std::vector<int> vertex_map;
};

/// R(A): opposite of the graded endomorphism algebra of the characteristic
/// tilting module, graded by j in hom(T(l), T(m)<j>).  Vertices are listed
/// from the top of the input order down, so the natural order of the result
/// is its quasi-hereditary order.
DualityResult ringel_dual(const AlgebraPtr& a, Order order = Order::Natural);

/// E(A): opposite of the Yoneda algebra of the simples, graded by
/// homological degree; the order slot records which of the natural and
/// opposite orders certifies quasi-heredity.
DualityResult koszul_dual(const AlgebraPtr& a);

/// A complex failing to be linear, or the reason it could not be built.
struct Nonlinearity {
  std::string complex;  ///< e.g. "tilting coresolution of Delta(2)"
  std::optional<LinearityWitness> at;
  std::string reason;
  [[nodiscard]] std::string text(const std::vector<std::string>& vertex_labels) const;
};

struct KoszulityReport {
  bool koszul = false;
  bool standard_koszul = false;
  std::optional<Nonlinearity> koszul_witness;
  std::optional<Nonlinearity> standard_witness;
};
KoszulityReport koszulity_checks(const AlgebraPtr& a, Order order = Order::Natural);

struct BalanceReport {
  bool balanced = false;
  std::optional<Nonlinearity> witness;
};
BalanceReport is_balanced(const AlgebraPtr& a, Order order = Order::Natural);

enum class IsoMode { Graded, Ungraded };
enum class IsoVerdict { Isomorphic, NotIsomorphic, Inconclusive };

std::string verdict_name(IsoVerdict v);

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Inconclusive;
  /// Isomorphic: a-vertex -> b-vertex and the image of every generator of a
  /// in the basis of b.
  std::vector<int> vertex_map;
  std::vector<Vector> generator_images;
  /// Why not isomorphic, or what was exhausted.
  std::string certificate;
  int attempts = 0;
};

/// Dimension tables, then vertex bijections, then a search for generator
/// images (identity first, then seeded random changes of basis within each
/// arrow space, with exact verification of multiplicativity).
IsoResult graded_iso_check(const AlgebraPtr& a, const AlgebraPtr& b, IsoMode mode = IsoMode::Graded,
                           int max_attempts = 200);

/// The images of all basis elements of a under generator images, as a
/// dim(b) x dim(a) matrix, or nothing when the images do not define an
/// algebra isomorphism.
std::optional<Matrix> verify_isomorphism(const AlgebraPtr& a, const AlgebraPtr& b, const std::vector<int>& vertex_map,
                                         const std::vector<Vector>& generator_images);

}  // namespace qha
