#pragma once

// Finite-dimensional graded modules, degree-0 homomorphisms and the exact
// category operations on them.
//
// A module is a graded representation: every basis vector lives in a slot
// (vertex, degree) and each algebra generator acts by a matrix mapping slot
// (source, j) to slot (target, j + deg).  Shift convention:
// (M<i>)_j = M_{i+j}, so M<i> moves everything down by i degrees.

#include "qha/algebra.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace qha {

/// (vertex, degree)
using Slot = std::pair<int, int>;
using DimMap = std::map<Slot, int>;

class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr algebra, std::vector<Slot> slots, std::vector<Matrix> actions);
  static GradedModule zero(AlgebraPtr algebra);

  [[nodiscard]] bool valid() const { return impl_ != nullptr; }
  [[nodiscard]] const AlgebraPtr& algebra() const;
  [[nodiscard]] const Field& field() const { return algebra()->field(); }
  [[nodiscard]] int dim() const;
  [[nodiscard]] bool is_zero() const { return dim() == 0; }
  [[nodiscard]] const std::vector<Slot>& slots() const;
  [[nodiscard]] const Slot& slot(int i) const { return slots()[static_cast<size_t>(i)]; }
  /// Basis indices in the given slot (empty when the slot is absent).
  [[nodiscard]] const std::vector<int>& indices(const Slot& s) const;
  [[nodiscard]] int dim_at(const Slot& s) const { return static_cast<int>(indices(s).size()); }
  [[nodiscard]] DimMap dims() const;
  /// Occupied slots ordered by (degree, vertex).
  [[nodiscard]] std::vector<Slot> support() const;
  [[nodiscard]] int min_degree() const;
  [[nodiscard]] int max_degree() const;

  /// Action of generator g of the algebra.
  [[nodiscard]] const Matrix& action(int g) const;
  /// Action of algebra basis element b on a vector.
  [[nodiscard]] Vector act(int b, const Vector& v) const;
  [[nodiscard]] Matrix act_matrix(int b) const;
  /// Relations of the algebra act as zero and generators are homogeneous.
  [[nodiscard]] bool satisfies_relations() const;

  friend bool operator==(const GradedModule& a, const GradedModule& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Degree-0 homomorphism; matrix is target.dim() x source.dim().
struct ModuleMap {
  GradedModule source;
  GradedModule target;
  Matrix matrix;

  [[nodiscard]] bool is_zero() const { return qha::is_zero(matrix); }
  /// Slot-preserving and commuting with every generator.
  [[nodiscard]] bool is_homomorphism() const;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap identity_map(const GradedModule& m);
ModuleMap zero_map(const GradedModule& source, const GradedModule& target);

GradedModule shift(const GradedModule& m, int i);
ModuleMap shift(const ModuleMap& f, int i);

GradedModule simple_module(const AlgebraPtr& a, int vertex);
/// P(vertex) = A e_vertex with the left action; top in degree 0.
GradedModule projective_module(const AlgebraPtr& a, int vertex);
/// I(vertex) = D(e_vertex A); socle in degree 0.
GradedModule injective_module(const AlgebraPtr& a, int vertex);

struct DirectSum {
  GradedModule module;
  std::vector<ModuleMap> inclusions;
  std::vector<ModuleMap> projections;
};
DirectSum direct_sum(const AlgebraPtr& a, const std::vector<GradedModule>& parts);
/// Block map between direct sums: blocks[r][c] maps from.parts[c] to to.parts[r].
ModuleMap block_map(const DirectSum& from, const DirectSum& to, const std::vector<std::vector<Matrix>>& blocks);

/// Basis of the degree-0 maps m -> n<j>.
std::vector<ModuleMap> hom_basis(const GradedModule& m, const GradedModule& n, int j);
int hom_dim(const GradedModule& m, const GradedModule& n, int j);

/// Graded subspace: per slot, columns in the coordinates of that slot's block.
using GradedSubspace = std::map<Slot, Matrix>;

struct Submodule {
  GradedModule module;
  ModuleMap inclusion;
};
struct Quotient {
  GradedModule module;
  ModuleMap projection;
};

/// Smallest submodule containing the given graded subspace.
GradedSubspace generated_subspace(const GradedModule& m, const GradedSubspace& seeds);
/// The subspace must already be closed under the action.
Submodule submodule(const GradedModule& m, const GradedSubspace& closed);
Quotient quotient(const GradedModule& m, const GradedSubspace& closed);
/// Columns of a slot-homogeneous set of vectors as a graded subspace.
GradedSubspace subspace_of(const GradedModule& m, const Matrix& columns);

struct MapSpaces {
  Submodule kernel;
  Submodule image;
  ModuleMap corestriction;  ///< source -> image
  Quotient cokernel;
};
MapSpaces map_spaces(const ModuleMap& f);

struct TopRadSocle {
  Quotient top;
  Submodule radical;
  Submodule socle;
};
TopRadSocle top_rad_socle(const GradedModule& m);

/// P(vertex)<shift> or I(vertex)<shift>.
struct ShiftedIndex {
  int vertex = 0;
  int shift = 0;
  friend bool operator==(const ShiftedIndex&, const ShiftedIndex&) = default;
  friend auto operator<=>(const ShiftedIndex&, const ShiftedIndex&) = default;
};

struct Cover {
  std::vector<ShiftedIndex> summands;
  DirectSum sum;
  ModuleMap map;  ///< sum -> m, surjective, an isomorphism on tops
};
Cover projective_cover(const GradedModule& m);

struct Envelope {
  std::vector<ShiftedIndex> summands;
  DirectSum sum;
  ModuleMap map;  ///< m -> sum, injective, an isomorphism on socles
};
Envelope injective_envelope(const GradedModule& m);

/// Module over the opposite algebra with dims (v, j) -> (v, -j).
GradedModule dual_module(const GradedModule& m);
/// D(f): D(target) -> D(source).
ModuleMap dual_map(const ModuleMap& f);

struct Summand {
  GradedModule module;
  ModuleMap inclusion;
  ModuleMap projection;
};

/// Complete decomposition into indecomposables (Fitting splitting of
/// endomorphisms until every summand has a local endomorphism ring).
std::vector<Summand> decompose(const GradedModule& m);
bool is_indecomposable(const GradedModule& m);

/// Ext^1(x<d>, m) for every d, represented on a projective presentation
/// 0 -> syzygy -> cover -> x -> 0 by maps syzygy<d> -> m.
struct ExtensionClasses {
  Cover cover;
  Submodule syzygy;
  std::vector<std::pair<int, ModuleMap>> classes;  ///< (d, representative)
  [[nodiscard]] int dim_at(int d) const;
};
ExtensionClasses extension_classes(const GradedModule& x, const GradedModule& m);

struct UniversalExtension {
  GradedModule module;
  ModuleMap inclusion;            ///< m -> module
  std::vector<int> added_shifts;  ///< one entry d per added copy of x<d>
};
/// 0 -> m -> E -> (sum of x<d>) -> 0 with the connecting map onto Ext^1(x<d>, m)
/// for every d, so Ext^1(x<d>, E) = 0 whenever Ext^1(x<d>, x<e>) = 0.
UniversalExtension universal_extension(const GradedModule& x, const GradedModule& m);

/// For indecomposable x and y: some s with x isomorphic to y<s>.
std::optional<int> isomorphic_shift(const GradedModule& x, const GradedModule& y);
bool isomorphic(const GradedModule& x, const GradedModule& y);

}  // namespace qha
