#pragma once

// Bounded complexes of graded modules, minimal resolutions, tilting
// (co)resolutions and hom spaces in the homotopy category.
//
// Positions follow the cohomological convention: d^i maps X^i to X^{i+1}.
// A projective resolution occupies positions 0, -1, -2, ...; coresolutions
// occupy 0, 1, 2, ...  A complex is linear when every summand at position i
// is a canonical structural module shifted by <i>.

#include "qha/structural.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qha {

/// klass(vertex)<shift>
struct Labeled {
  ModuleClass klass = ModuleClass::Tilting;
  int vertex = 0;
  int shift = 0;
  friend bool operator==(const Labeled&, const Labeled&) = default;
};

std::string describe(const Labeled& l, const std::vector<std::string>& vertex_labels);

/// The module a label stands for.
GradedModule labeled_module(const Catalog& catalog, const Labeled& l);

struct ChainComplex {
  AlgebraPtr algebra;
  int lo = 0;
  std::vector<GradedModule> terms;
  /// d[k] maps terms[k] to terms[k + 1].
  std::vector<Matrix> d;
  /// Summands of each term in block order; only meaningful when labeled.
  std::vector<std::vector<Labeled>> pieces;
  std::vector<std::vector<int>> piece_dims;
  bool labeled = false;

  [[nodiscard]] int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  [[nodiscard]] bool empty() const;
  [[nodiscard]] GradedModule term(int pos) const;
  /// d^pos : X^pos -> X^{pos+1}, zero outside the support.
  [[nodiscard]] Matrix differential(int pos) const;
  [[nodiscard]] const std::vector<Labeled>& pieces_at(int pos) const;
  /// Differentials are homomorphisms and square to zero.
  [[nodiscard]] bool is_complex() const;
  /// Drops zero terms at both ends.
  void trim();
};

ChainComplex single(const GradedModule& m, int position = 0);
ChainComplex single(const Catalog& catalog, const Labeled& l, int position = 0);
/// Labeled complex whose terms are the direct sums of the given pieces.
ChainComplex labeled_complex(const Catalog& catalog, int lo, std::vector<std::vector<Labeled>> pieces,
                             std::vector<Matrix> d);

GradedModule homology(const ChainComplex& c, int pos);
/// Alternating sum of graded dimensions.
std::map<Slot, int> euler_characteristic(const ChainComplex& c);

enum class Side { Projective, Injective };

struct Resolution {
  ChainComplex complex;
  /// X^0 -> m for resolutions, m -> X^0 for coresolutions.
  ModuleMap augmentation;
};

/// Length cap 2n-2 (at least 1).
int default_cap(const AlgebraPtr& a);

/// Minimal projective resolution or injective coresolution with at most
/// cap + 1 terms.  Throws CapExceeded when the syzygy survives, unless
/// truncate is set, in which case the first cap + 1 terms are returned.
Resolution min_resolution(Side side, const GradedModule& m, int cap, bool truncate = false);

enum class TiltingSide { CoresolveStandard, ResolveCostandard };

/// Minimal left (resp. right) add(T)-approximation of m.
struct Approximation {
  std::vector<Labeled> pieces;
  std::vector<int> dims;
  GradedModule module;
  Matrix map;  ///< m -> module, or module -> m
};
Approximation left_approximation(const Catalog& catalog, const GradedModule& m);
Approximation right_approximation(const Catalog& catalog, const GradedModule& m);

/// 0 -> m -> X^0 -> X^1 -> ... by iterated minimal left approximations.
Resolution tilting_coresolution(const Catalog& catalog, const GradedModule& m);
/// ... -> X^-1 -> X^0 -> m -> 0 by iterated minimal right approximations.
Resolution tilting_resolution(const Catalog& catalog, const GradedModule& m);
Resolution tilting_resolution(const Catalog& catalog, TiltingSide side, int vertex);

struct LinearityWitness {
  int position = 0;
  Labeled summand;
};
struct Linearity {
  bool linear = true;
  std::optional<LinearityWitness> witness;
};
/// Every summand at position i is klass(v)<i>.  Unlabeled terms are
/// decomposed and matched against the catalog.
Linearity is_linear(const ChainComplex& c, ModuleClass klass, const Catalog& catalog);

/// dim ext^i(m, n<j>) from the projective resolution of m, or from the
/// injective coresolution of n<j>.
int ext_dim(const GradedModule& m, const GradedModule& n, int i, int j, Side side = Side::Projective);

/// Components by source position: X^k -> Y^{k+i}.
using ChainMap = std::map<int, Matrix>;

/// Chain maps x -> y<j>[i] modulo homotopy (no signs: d f = f d).
struct HomotopyHom {
  int i = 0;
  int j = 0;
  std::vector<ChainMap> basis;

  /// Coordinates of a chain map of the same kind in the basis.
  [[nodiscard]] Vector coordinates(const ChainMap& f) const;

  std::vector<int> positions;
  std::vector<std::vector<Matrix>> hom;  ///< per position: basis of Hom(X^k, Y^{k+i}<j>)
  std::vector<Matrix> hom_flat;          ///< the same, flattened into columns
  Matrix solver;                         ///< [representatives | boundaries] in hom coordinates
};

/// Requires tilting components (by label) unless assume_self_orthogonal.
HomotopyHom homotopy_hom(const ChainComplex& x, const ChainComplex& y, int i, int j,
                         bool assume_self_orthogonal = false);
int homotopy_hom_dim(const ChainComplex& x, const ChainComplex& y, int i, int j, bool assume_self_orthogonal = false);
/// (g f)^k = g^{k + fi} f^k.
ChainMap compose(const ChainMap& g, const ChainMap& f, int fi);
ChainMap identity_chain_map(const ChainComplex& x);

/// Positionwise, every centroid in x is strictly below every centroid in y.
bool dominates(const ChainComplex& x, const ChainComplex& y);

/// Cancels isomorphism blocks of the differentials until no contractible
/// summand is left.  Needs a labeled complex.
ChainComplex reduce(const ChainComplex& c);

/// A complex of Delta-filtered modules turned into a quasi-isomorphic
/// complex of tilting modules, position by position through pushouts.
ChainComplex tilting_replacement(const Catalog& catalog, const ChainComplex& c);
/// The reduced tilting complex isomorphic to L(vertex) in the derived category.
ChainComplex tilting_complex_of_simple(const Catalog& catalog, int vertex);

enum class EndGrading { Linear, Homological, Internal };

/// Graded endomorphism algebra of the direct sum of xs in the homotopy
/// category.  Linear uses the spaces x_l -> x_m<-i>[i] graded by i,
/// Homological all x_l -> x_m<j>[i] graded by i, Internal x_l -> x_m<j>
/// graded by j.  Vertex v is the identity of xs[v]; b * c is "c, then b".
/// The result is the algebra under composition, opposite when asked.
AlgebraPtr end_algebra(const std::vector<ChainComplex>& xs, EndGrading grading, bool opposite,
                       const std::string& name, const std::vector<std::string>& vertex_labels,
                       bool assume_self_orthogonal = false);
/// Linear grading, no opposite.
AlgebraPtr end_algebra_of_complexes(const std::vector<ChainComplex>& xs);

}  // namespace qha
