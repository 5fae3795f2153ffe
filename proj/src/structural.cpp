#include "qha/structural.hpp"

#include "qha/errors.hpp"
#include "qha/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qha {

std::string class_symbol(ModuleClass c) {
  switch (c) {
    case ModuleClass::Simple: return "L";
    case ModuleClass::Projective: return "P";
    case ModuleClass::Injective: return "I";
    case ModuleClass::Standard: return "Delta";
    case ModuleClass::Costandard: return "Nabla";
    case ModuleClass::Tilting: return "T";
  }
  return "?";
}

std::vector<int> order_ranks(int n, Order order) {
  std::vector<int> r(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) r[static_cast<size_t>(v)] = order == Order::Natural ? v : n - 1 - v;
  return r;
}

GradedModule standard_module(const AlgebraPtr& a, int vertex, Order order) {
  const auto ranks = order_ranks(a->num_vertices(), order);
  const GradedModule p = projective_module(a, vertex);
  GradedSubspace seeds;
  for (const auto& s : p.support())
    if (ranks[static_cast<size_t>(s.first)] > ranks[static_cast<size_t>(vertex)])
      seeds[s] = identity_matrix(p.dim_at(s), a->field());
  return quotient(p, generated_subspace(p, seeds)).module;
}

GradedModule costandard_module(const AlgebraPtr& a, int vertex, Order order) {
  return dual_module(standard_module(opposite(a), vertex, order));
}

Catalog::Catalog(AlgebraPtr algebra, Order order) : Catalog(std::move(algebra), order, true) {}

Catalog Catalog::basics(AlgebraPtr algebra, Order order) { return Catalog(std::move(algebra), order, false); }

Catalog::Catalog(AlgebraPtr algebra, Order order, bool with_tilting)
    : algebra_(std::move(algebra)), order_(order), ranks_(order_ranks(algebra_->num_vertices(), order)) {
  const int n = algebra_->num_vertices();
  const AlgebraPtr op = opposite(algebra_);
  for (int v = 0; v < n; ++v) {
    simple_.push_back(simple_module(algebra_, v));
    projective_.push_back(projective_module(algebra_, v));
    injective_.push_back(dual_module(projective_module(op, v)));
    standard_.push_back(standard_module(algebra_, v, order));
    opposite_standard_.push_back(standard_module(op, v, order));
    costandard_.push_back(dual_module(opposite_standard_.back()));
  }
  if (!with_tilting) return;
  tilting_.resize(static_cast<size_t>(n));
  standard_inclusion_.resize(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto t = tilting_module(*this, v);
    tilting_[static_cast<size_t>(v)] = t.module;
    standard_inclusion_[static_cast<size_t>(v)] = t.inclusion;
  }
}

std::vector<int> Catalog::descending() const {
  std::vector<int> v(static_cast<size_t>(size()));
  std::iota(v.begin(), v.end(), 0);
  std::sort(v.begin(), v.end(), [&](int x, int y) { return ranks_[x] > ranks_[y]; });
  return v;
}

const GradedModule& Catalog::get(ModuleClass c, int vertex) const {
  switch (c) {
    case ModuleClass::Simple: return simple(vertex);
    case ModuleClass::Projective: return projective(vertex);
    case ModuleClass::Injective: return injective(vertex);
    case ModuleClass::Standard: return standard(vertex);
    case ModuleClass::Costandard: return costandard(vertex);
    case ModuleClass::Tilting:
      if (!has_tilting()) throw std::logic_error("catalog was built without tilting modules");
      return tilting(vertex);
  }
  throw std::logic_error("unknown module class");
}

UniversalExtension tilting_module(const Catalog& catalog, int vertex) {
  const GradedModule& delta = catalog.standard(vertex);
  UniversalExtension out{delta, identity_map(delta), {}};
  for (int mu : catalog.descending()) {
    if (!catalog.above(vertex, mu)) continue;
    auto step = universal_extension(catalog.standard(mu), out.module);
    out.inclusion = compose(step.inclusion, out.inclusion);
    out.module = step.module;
    out.added_shifts.insert(out.added_shifts.end(), step.added_shifts.begin(), step.added_shifts.end());
  }
  for (int mu = 0; mu < catalog.size(); ++mu) {
    if (!extension_classes(catalog.standard(mu), out.module).classes.empty())
      throw NotQuasiHereditary("Ext^1(Delta(" + catalog.algebra()->vertex_labels()[static_cast<size_t>(mu)] +
                               "), T) does not vanish after the universal extensions");
  }
  if (!costandard_filtration(catalog, out.module).layers)
    throw NotQuasiHereditary("constructed tilting module has no costandard filtration");
  return out;
}

namespace {

Filtration filtration_by(const std::vector<GradedModule>& standards, const std::vector<int>& ranks,
                         const GradedModule& m) {
  std::vector<ShiftedIndex> bottom_up;
  GradedModule rest = m;
  while (rest.dim() > 0) {
    int top = -1;
    for (const auto& s : rest.support())
      if (top < 0 || ranks[static_cast<size_t>(s.first)] > ranks[static_cast<size_t>(top)]) top = s.first;
    const GradedModule& delta = standards[static_cast<size_t>(top)];
    GradedSubspace seeds;
    DimMap expected;
    std::vector<ShiftedIndex> layer;
    for (const auto& s : rest.support()) {
      if (s.first != top) continue;
      const int k = rest.dim_at(s);
      seeds[s] = identity_matrix(k, m.field());
      // one copy of Delta(top)<-deg> per basis vector of e_top M in degree deg
      for (int c = 0; c < k; ++c) {
        layer.push_back({top, -s.second});
        for (const auto& [slot, d] : delta.dims()) expected[{slot.first, slot.second + s.second}] += d;
      }
    }
    const GradedSubspace gen = generated_subspace(rest, seeds);
    DimMap got;
    for (const auto& [s, cols] : gen) got[s] = static_cast<int>(cols.cols());
    if (got != expected) return {std::nullopt, rest};
    bottom_up.insert(bottom_up.end(), layer.begin(), layer.end());
    rest = quotient(rest, gen).module;
  }
  std::reverse(bottom_up.begin(), bottom_up.end());
  return {bottom_up, rest};
}

}  // namespace

Filtration standard_filtration(const Catalog& catalog, const GradedModule& m) {
  std::vector<GradedModule> standards;
  for (int v = 0; v < catalog.size(); ++v) standards.push_back(catalog.standard(v));
  return filtration_by(standards, order_ranks(catalog.size(), catalog.order()), m);
}

Filtration costandard_filtration(const Catalog& catalog, const GradedModule& m) {
  std::vector<GradedModule> standards;
  for (int v = 0; v < catalog.size(); ++v) standards.push_back(catalog.opposite_standard(v));
  Filtration f = filtration_by(standards, order_ranks(catalog.size(), catalog.order()), dual_module(m));
  if (f.layers) {
    // D(Delta_op(v)<s>) = Nabla(v)<-s>, and the top of D(m) is the bottom of m
    std::reverse(f.layers->begin(), f.layers->end());
    for (auto& l : *f.layers) l.shift = -l.shift;
  } else {
    f.stuck = dual_module(f.stuck);
  }
  return f;
}

QuasiHereditaryCertificate is_quasi_hereditary(const AlgebraPtr& a, Order order) {
  QuasiHereditaryCertificate cert;
  cert.order = order;
  const Catalog cat = Catalog::basics(a, order);
  for (int v = 0; v < cat.size(); ++v) {
    const GradedModule& delta = cat.standard(v);
    if (delta.dim_at({v, 0}) != 1 || hom_dim(delta, delta, 0) != 1) {
      cert.failing_vertex = v;
      cert.reason = "end(Delta(" + a->vertex_labels()[static_cast<size_t>(v)] + ")) is not one-dimensional";
      break;
    }
    // every composition factor L(w) of Delta(v) other than the top has w below v
    bool bounded = true;
    for (const auto& [s, d] : delta.dims())
      if (s != Slot{v, 0} && !cat.above(v, s.first)) bounded = false;
    if (!bounded) {
      cert.failing_vertex = v;
      cert.reason = "Delta(" + a->vertex_labels()[static_cast<size_t>(v)] + ") has a composition factor not below it";
      break;
    }
  }
  for (int v = 0; v < cat.size(); ++v) {
    Filtration f = standard_filtration(cat, cat.projective(v));
    cert.projective_filtrations.push_back(f.layers);
    if (!f.layers && cert.failing_vertex < 0) {
      cert.failing_vertex = v;
      cert.reason = "P(" + a->vertex_labels()[static_cast<size_t>(v)] + ") has no standard filtration";
    }
  }
  cert.quasi_hereditary = cert.failing_vertex < 0;
  return cert;
}

}  // namespace qha
