#include "qha/module.hpp"

#include "qha/errors.hpp"
#include "qha/linalg.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace qha {

using Eigen::Index;

struct GradedModule::Impl {
  AlgebraPtr algebra;
  std::vector<Slot> slots;
  std::vector<Matrix> actions;
  std::map<Slot, std::vector<int>> index;
};

namespace {

Vector matvec(const Matrix& m, const Vector& v) {
  Vector out = zero_vector(m.rows());
  for (Index c = 0; c < m.cols(); ++c) {
    if (v(c).is_zero()) continue;
    for (Index r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) out(r) += m(r, c) * v(c);
  }
  return out;
}

Matrix sub_block(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out(static_cast<Index>(r), static_cast<Index>(c)) = m(rows[r], cols[c]);
  return out;
}

bool slot_less(const Slot& a, const Slot& b) {
  return a.second != b.second ? a.second < b.second : a.first < b.first;
}

Slot target_slot(const Generator& g, const Slot& s) { return {g.target, s.second + g.degree}; }

const std::vector<int> kNoIndices;

}  // namespace

GradedModule::GradedModule(AlgebraPtr algebra, std::vector<Slot> slots, std::vector<Matrix> actions) {
  auto impl = std::make_shared<Impl>();
  impl->algebra = std::move(algebra);
  impl->slots = std::move(slots);
  impl->actions = std::move(actions);
  const auto& gens = impl->algebra->generators();
  const Index n = static_cast<Index>(impl->slots.size());
  if (impl->actions.size() != gens.size()) throw std::invalid_argument("one action matrix per generator required");
  for (int i = 0; i < static_cast<int>(n); ++i) impl->index[impl->slots[static_cast<size_t>(i)]].push_back(i);
  for (size_t g = 0; g < gens.size(); ++g) {
    const Matrix& a = impl->actions[g];
    if (a.rows() != n || a.cols() != n) throw std::invalid_argument("action matrix has wrong size");
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        const Slot& sc = impl->slots[static_cast<size_t>(c)];
        if (sc.first != gens[g].source || impl->slots[static_cast<size_t>(r)] != target_slot(gens[g], sc))
          throw std::invalid_argument("generator action is not homogeneous");
      }
  }
  impl_ = std::move(impl);
}

GradedModule GradedModule::zero(AlgebraPtr algebra) {
  std::vector<Matrix> actions(algebra->generators().size(), zero_matrix(0, 0));
  return GradedModule(std::move(algebra), {}, std::move(actions));
}

const AlgebraPtr& GradedModule::algebra() const { return impl_->algebra; }
int GradedModule::dim() const { return static_cast<int>(impl_->slots.size()); }
const std::vector<Slot>& GradedModule::slots() const { return impl_->slots; }
const Matrix& GradedModule::action(int g) const { return impl_->actions[static_cast<size_t>(g)]; }

const std::vector<int>& GradedModule::indices(const Slot& s) const {
  auto it = impl_->index.find(s);
  return it == impl_->index.end() ? kNoIndices : it->second;
}

DimMap GradedModule::dims() const {
  DimMap d;
  for (const auto& [s, idx] : impl_->index) d[s] = static_cast<int>(idx.size());
  return d;
}

std::vector<Slot> GradedModule::support() const {
  std::vector<Slot> out;
  for (const auto& [s, idx] : impl_->index) out.push_back(s);
  std::sort(out.begin(), out.end(), slot_less);
  return out;
}

int GradedModule::min_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& s : impl_->slots) {
    if (first || s.second < m) m = s.second;
    first = false;
  }
  return m;
}

int GradedModule::max_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& s : impl_->slots) {
    if (first || s.second > m) m = s.second;
    first = false;
  }
  return m;
}

Vector GradedModule::act(int b, const Vector& v) const {
  const auto& a = *algebra();
  if (a.is_idempotent(b)) {
    const int u = a.element(b).source;
    Vector out = zero_vector(dim());
    for (int i = 0; i < dim(); ++i)
      if (slot(i).first == u) out(i) = v(i);
    return out;
  }
  Vector out = zero_vector(dim());
  for (const auto& term : a.word_expansion(b)) {
    Vector w = v;
    for (size_t k = term.word.size(); k-- > 0;) w = matvec(action(term.word[k]), w);
    out += term.coeff * w;
  }
  return out;
}

Matrix GradedModule::act_matrix(int b) const {
  const auto& a = *algebra();
  if (a.is_idempotent(b)) {
    Matrix out = zero_matrix(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (slot(i).first == a.element(b).source) out(i, i) = field().one();
    return out;
  }
  Matrix out = zero_matrix(dim(), dim());
  for (const auto& term : a.word_expansion(b)) {
    Matrix w = action(term.word.back());
    for (size_t k = term.word.size() - 1; k-- > 0;) w = mul(action(term.word[k]), w);
    out += term.coeff * w;
  }
  return out;
}

bool GradedModule::satisfies_relations() const {
  const auto& a = *algebra();
  std::vector<Matrix> acts;
  for (int b = 0; b < a.dim(); ++b) acts.push_back(act_matrix(b));
  auto combination = [&](const Vector& x) {
    Matrix out = zero_matrix(dim(), dim());
    for (int k = 0; k < a.dim(); ++k)
      if (!x(k).is_zero()) out += x(k) * acts[static_cast<size_t>(k)];
    return out;
  };
  const auto& gens = a.generators();
  for (size_t g = 0; g < gens.size(); ++g) {
    if (combination(gens[g].element) != action(static_cast<int>(g))) return false;
    for (int b = 0; b < a.dim(); ++b) {
      const Vector prod = a.multiply(gens[g].element, a.unit(b));
      if (mul(action(static_cast<int>(g)), acts[static_cast<size_t>(b)]) != combination(prod)) return false;
    }
  }
  return true;
}

bool operator==(const GradedModule& a, const GradedModule& b) {
  if (a.impl_ == b.impl_) return true;
  if (!a.impl_ || !b.impl_) return false;
  return a.algebra() == b.algebra() && a.slots() == b.slots() && a.impl_->actions == b.impl_->actions;
}

bool ModuleMap::is_homomorphism() const {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  if (source.algebra() != target.algebra()) return false;
  for (Index c = 0; c < matrix.cols(); ++c)
    for (Index r = 0; r < matrix.rows(); ++r)
      if (!matrix(r, c).is_zero() && target.slot(static_cast<int>(r)) != source.slot(static_cast<int>(c))) return false;
  for (int g = 0; g < static_cast<int>(source.algebra()->generators().size()); ++g)
    if (mul(target.action(g), matrix) != mul(matrix, source.action(g))) return false;
  return true;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.matrix.cols() != f.matrix.rows()) throw std::invalid_argument("maps are not composable");
  return {f.source, g.target, mul(g.matrix, f.matrix)};
}

ModuleMap identity_map(const GradedModule& m) { return {m, m, identity_matrix(m.dim(), m.field())}; }

ModuleMap zero_map(const GradedModule& source, const GradedModule& target) {
  return {source, target, zero_matrix(target.dim(), source.dim())};
}

GradedModule shift(const GradedModule& m, int i) {
  if (i == 0) return m;
  std::vector<Slot> slots = m.slots();
  for (auto& s : slots) s.second -= i;
  std::vector<Matrix> actions;
  for (size_t g = 0; g < m.algebra()->generators().size(); ++g) actions.push_back(m.action(static_cast<int>(g)));
  return GradedModule(m.algebra(), std::move(slots), std::move(actions));
}

ModuleMap shift(const ModuleMap& f, int i) { return {shift(f.source, i), shift(f.target, i), f.matrix}; }

GradedModule simple_module(const AlgebraPtr& a, int vertex) {
  std::vector<Matrix> actions(a->generators().size(), zero_matrix(1, 1));
  return GradedModule(a, {{vertex, 0}}, std::move(actions));
}

GradedModule projective_module(const AlgebraPtr& a, int vertex) {
  std::vector<int> basis;
  std::vector<int> position(static_cast<size_t>(a->dim()), -1);
  std::vector<Slot> slots;
  for (int b = 0; b < a->dim(); ++b) {
    const auto& e = a->element(b);
    if (e.source != vertex) continue;
    position[static_cast<size_t>(b)] = static_cast<int>(basis.size());
    basis.push_back(b);
    slots.push_back({e.target, e.degree});
  }
  const Index n = static_cast<Index>(basis.size());
  std::vector<Matrix> actions;
  for (const auto& g : a->generators()) {
    Matrix m = zero_matrix(n, n);
    for (Index c = 0; c < n; ++c)
      for (int x = 0; x < a->dim(); ++x) {
        if (g.element(x).is_zero()) continue;
        for (const auto& [k, coeff] : a->product(x, basis[static_cast<size_t>(c)]))
          m(position[static_cast<size_t>(k)], c) += g.element(x) * coeff;
      }
    actions.push_back(std::move(m));
  }
  return GradedModule(a, std::move(slots), std::move(actions));
}

GradedModule injective_module(const AlgebraPtr& a, int vertex) {
  return dual_module(projective_module(opposite(a), vertex));
}

DirectSum direct_sum(const AlgebraPtr& a, const std::vector<GradedModule>& parts) {
  std::vector<Slot> slots;
  std::vector<int> offsets;
  for (const auto& p : parts) {
    offsets.push_back(static_cast<int>(slots.size()));
    slots.insert(slots.end(), p.slots().begin(), p.slots().end());
  }
  const Index n = static_cast<Index>(slots.size());
  std::vector<Matrix> actions;
  for (int g = 0; g < static_cast<int>(a->generators().size()); ++g) {
    Matrix m = zero_matrix(n, n);
    for (size_t k = 0; k < parts.size(); ++k) {
      const Index d = parts[k].dim();
      m.block(offsets[k], offsets[k], d, d) = parts[k].action(g);
    }
    actions.push_back(std::move(m));
  }
  DirectSum out;
  out.module = GradedModule(a, std::move(slots), std::move(actions));
  for (size_t k = 0; k < parts.size(); ++k) {
    const Index d = parts[k].dim();
    Matrix inc = zero_matrix(n, d);
    inc.block(offsets[k], 0, d, d) = identity_matrix(d, a->field());
    out.inclusions.push_back({parts[k], out.module, inc});
    out.projections.push_back({out.module, parts[k], Matrix(inc.transpose())});
  }
  return out;
}

ModuleMap block_map(const DirectSum& from, const DirectSum& to, const std::vector<std::vector<Matrix>>& blocks) {
  Matrix m = zero_matrix(to.module.dim(), from.module.dim());
  Index row = 0;
  for (size_t r = 0; r < to.inclusions.size(); ++r) {
    const Index h = to.inclusions[r].source.dim();
    Index col = 0;
    for (size_t c = 0; c < from.inclusions.size(); ++c) {
      const Index w = from.inclusions[c].source.dim();
      if (r < blocks.size() && c < blocks[r].size() && blocks[r][c].size() > 0) m.block(row, col, h, w) = blocks[r][c];
      col += w;
    }
    row += h;
  }
  return {from.module, to.module, m};
}

std::vector<ModuleMap> hom_basis(const GradedModule& m, const GradedModule& n, int j) {
  const GradedModule t = shift(n, j);
  const auto& gens = m.algebra()->generators();
  // unknowns: one block per common slot
  std::map<Slot, Index> offset;
  Index unknowns = 0;
  for (const auto& s : m.support()) {
    const Index rows = t.dim_at(s);
    if (rows == 0) continue;
    offset[s] = unknowns;
    unknowns += rows * m.dim_at(s);
  }
  if (unknowns == 0) return {};
  auto var = [&](const Slot& s, Index r, Index c) { return offset.at(s) + c * t.dim_at(s) + r; };

  std::vector<std::vector<std::pair<Index, Scalar>>> equations;
  for (size_t g = 0; g < gens.size(); ++g) {
    const Matrix& tm = t.action(static_cast<int>(g));
    const Matrix& mm = m.action(static_cast<int>(g));
    for (const auto& s : m.support()) {
      if (s.first != gens[g].source) continue;
      const Slot ts = target_slot(gens[g], s);
      const auto& trows = t.indices(ts);
      if (trows.empty()) continue;
      const auto& mcols = m.indices(s);
      const auto& t_s = t.indices(s);
      const auto& m_ts = m.indices(ts);
      for (size_t c = 0; c < mcols.size(); ++c)
        for (size_t r = 0; r < trows.size(); ++r) {
          std::vector<std::pair<Index, Scalar>> eq;
          // (t_g F)(r, c): F's column c lives in slot s
          for (size_t k = 0; k < t_s.size(); ++k) {
            const Scalar& x = tm(trows[r], t_s[k]);
            if (!x.is_zero()) eq.emplace_back(var(s, static_cast<Index>(k), static_cast<Index>(c)), x);
          }
          // (F m_g)(r, c): F's row r lives in slot ts
          for (size_t k = 0; k < m_ts.size(); ++k) {
            const Scalar& x = mm(m_ts[k], mcols[c]);
            if (!x.is_zero()) eq.emplace_back(var(ts, static_cast<Index>(r), static_cast<Index>(k)), -x);
          }
          if (!eq.empty()) equations.push_back(std::move(eq));
        }
    }
  }
  Matrix system = zero_matrix(static_cast<Index>(equations.size()), unknowns);
  for (size_t e = 0; e < equations.size(); ++e)
    for (const auto& [k, x] : equations[e]) system(static_cast<Index>(e), k) += x;
  Matrix sol = equations.empty() ? identity_matrix(unknowns, m.field()) : kernel(system);

  std::vector<ModuleMap> out;
  for (Index k = 0; k < sol.cols(); ++k) {
    Matrix f = zero_matrix(t.dim(), m.dim());
    for (const auto& [s, off] : offset) {
      const auto& rows = t.indices(s);
      const auto& cols = m.indices(s);
      for (size_t c = 0; c < cols.size(); ++c)
        for (size_t r = 0; r < rows.size(); ++r) f(rows[r], cols[c]) = sol(var(s, static_cast<Index>(r), static_cast<Index>(c)), k);
    }
    out.push_back({m, t, std::move(f)});
  }
  return out;
}

int hom_dim(const GradedModule& m, const GradedModule& n, int j) { return static_cast<int>(hom_basis(m, n, j).size()); }

namespace {

Matrix independent(const Matrix& cols) {
  const auto idx = independent_columns(cols);
  Matrix out(cols.rows(), static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out.col(static_cast<Index>(k)) = cols.col(idx[k]);
  return out;
}

Index columns_of(const GradedSubspace& sub, const Slot& s) {
  auto it = sub.find(s);
  return it == sub.end() ? 0 : it->second.cols();
}

}  // namespace

GradedSubspace generated_subspace(const GradedModule& m, const GradedSubspace& seeds) {
  GradedSubspace sub;
  std::vector<Slot> work;
  for (const auto& [s, cols] : seeds) {
    if (m.dim_at(s) == 0) continue;
    Matrix basis = independent(cols);
    if (basis.cols() == 0) continue;
    sub[s] = basis;
    work.push_back(s);
  }
  const auto& gens = m.algebra()->generators();
  while (!work.empty()) {
    const Slot s = work.back();
    work.pop_back();
    const Matrix basis = sub[s];
    for (size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].source != s.first) continue;
      const Slot ts = target_slot(gens[g], s);
      if (m.dim_at(ts) == 0) continue;
      const Matrix images = mul(sub_block(m.action(static_cast<int>(g)), m.indices(ts), m.indices(s)), basis);
      if (is_zero(images)) continue;
      const Index before = columns_of(sub, ts);
      Matrix merged = before ? hcat({sub[ts], images}, images.rows()) : images;
      Matrix basis_t = independent(merged);
      if (basis_t.cols() > before) {
        sub[ts] = basis_t;
        work.push_back(ts);
      }
    }
  }
  return sub;
}

Submodule submodule(const GradedModule& m, const GradedSubspace& closed) {
  std::vector<Slot> slots;
  std::map<Slot, Index> offset;
  std::map<Slot, Coordinates> coords;
  for (const auto& s : m.support()) {
    const Index k = columns_of(closed, s);
    if (k == 0) continue;
    offset[s] = static_cast<Index>(slots.size());
    for (Index i = 0; i < k; ++i) slots.push_back(s);
    coords.emplace(s, Coordinates(closed.at(s)));
  }
  const Index n = static_cast<Index>(slots.size());
  Matrix inc = zero_matrix(m.dim(), n);
  for (const auto& [s, off] : offset) {
    const Matrix& b = closed.at(s);
    const auto& idx = m.indices(s);
    for (Index c = 0; c < b.cols(); ++c)
      for (size_t r = 0; r < idx.size(); ++r) inc(idx[r], off + c) = b(static_cast<Index>(r), c);
  }
  const auto& gens = m.algebra()->generators();
  std::vector<Matrix> actions;
  for (size_t g = 0; g < gens.size(); ++g) {
    Matrix a = zero_matrix(n, n);
    for (const auto& [s, off] : offset) {
      if (gens[g].source != s.first) continue;
      const Slot ts = target_slot(gens[g], s);
      if (m.dim_at(ts) == 0) continue;
      const Matrix images = mul(sub_block(m.action(static_cast<int>(g)), m.indices(ts), m.indices(s)), closed.at(s));
      if (is_zero(images)) continue;
      auto cit = coords.find(ts);
      if (cit == coords.end()) throw std::invalid_argument("subspace is not closed under the action");
      for (Index c = 0; c < images.cols(); ++c) {
        auto x = cit->second.of(images.col(c));
        if (!x) throw std::invalid_argument("subspace is not closed under the action");
        a.block(offset.at(ts), off + c, x->size(), 1) = *x;
      }
    }
    actions.push_back(std::move(a));
  }
  GradedModule sub(m.algebra(), std::move(slots), std::move(actions));
  return {sub, {sub, m, inc}};
}

Quotient quotient(const GradedModule& m, const GradedSubspace& closed) {
  std::vector<Slot> slots;
  std::map<Slot, Index> offset;
  std::map<Slot, QuotientMap> maps;
  for (const auto& s : m.support()) {
    const Index k = m.dim_at(s);
    QuotientMap q = quotient_map(columns_of(closed, s) ? closed.at(s) : zero_matrix(k, 0), k, m.field());
    if (q.projection.rows() == 0) continue;
    offset[s] = static_cast<Index>(slots.size());
    for (Index i = 0; i < q.projection.rows(); ++i) slots.push_back(s);
    maps.emplace(s, std::move(q));
  }
  const Index n = static_cast<Index>(slots.size());
  Matrix proj = zero_matrix(n, m.dim());
  for (const auto& [s, off] : offset) {
    const auto& idx = m.indices(s);
    const Matrix& q = maps.at(s).projection;
    for (Index r = 0; r < q.rows(); ++r)
      for (size_t c = 0; c < idx.size(); ++c) proj(off + r, idx[c]) = q(r, static_cast<Index>(c));
  }
  const auto& gens = m.algebra()->generators();
  std::vector<Matrix> actions;
  for (size_t g = 0; g < gens.size(); ++g) {
    Matrix a = zero_matrix(n, n);
    for (const auto& [s, off] : offset) {
      if (gens[g].source != s.first) continue;
      const Slot ts = target_slot(gens[g], s);
      auto it = maps.find(ts);
      if (it == maps.end()) continue;
      const Matrix blk = mul(mul(it->second.projection, sub_block(m.action(static_cast<int>(g)), m.indices(ts), m.indices(s))),
                             maps.at(s).section);
      a.block(offset.at(ts), off, blk.rows(), blk.cols()) = blk;
    }
    actions.push_back(std::move(a));
  }
  GradedModule q(m.algebra(), std::move(slots), std::move(actions));
  return {q, {m, q, proj}};
}

GradedSubspace subspace_of(const GradedModule& m, const Matrix& columns) {
  GradedSubspace out;
  for (const auto& s : m.support()) {
    const auto& idx = m.indices(s);
    Matrix blk(static_cast<Index>(idx.size()), columns.cols());
    for (Index c = 0; c < columns.cols(); ++c)
      for (size_t r = 0; r < idx.size(); ++r) blk(static_cast<Index>(r), c) = columns(idx[r], c);
    Matrix b = independent(blk);
    if (b.cols() > 0) out[s] = b;
  }
  return out;
}

MapSpaces map_spaces(const ModuleMap& f) {
  const GradedModule& m = f.source;
  const GradedModule& n = f.target;
  GradedSubspace ker, img;
  for (const auto& s : m.support()) {
    const auto& cols = m.indices(s);
    const auto& rows = n.indices(s);
    if (rows.empty()) {
      ker[s] = identity_matrix(static_cast<Index>(cols.size()), m.field());
      continue;
    }
    const Matrix blk = sub_block(f.matrix, rows, cols);
    const auto rr = row_reduce(blk);
    if (rr.kernel_basis.cols() > 0) ker[s] = rr.kernel_basis;
    if (rr.image_basis.cols() > 0) img[s] = rr.image_basis;
  }
  MapSpaces out;
  out.kernel = submodule(m, ker);
  out.image = submodule(n, img);
  out.cokernel = quotient(n, img);
  // corestriction: coordinates of f(v) in the image basis
  const GradedModule& im = out.image.module;
  Matrix co = zero_matrix(im.dim(), m.dim());
  for (const auto& s : m.support()) {
    auto it = img.find(s);
    if (it == img.end()) continue;
    const Coordinates c(it->second);
    const auto& cols = m.indices(s);
    const Matrix blk = sub_block(f.matrix, n.indices(s), cols);
    const auto& imidx = im.indices(s);
    for (size_t k = 0; k < cols.size(); ++k) {
      const Vector x = c.of_unchecked(blk.col(static_cast<Index>(k)));
      for (Index r = 0; r < x.size(); ++r) co(imidx[static_cast<size_t>(r)], cols[k]) = x(r);
    }
  }
  out.corestriction = {m, im, co};
  return out;
}

namespace {

GradedSubspace radical_subspace(const GradedModule& m) {
  const auto& gens = m.algebra()->generators();
  std::vector<Matrix> parts;
  for (size_t g = 0; g < gens.size(); ++g) parts.push_back(m.action(static_cast<int>(g)));
  if (parts.empty()) return {};
  return generated_subspace(m, subspace_of(m, hcat(parts, m.dim())));
}

}  // namespace

TopRadSocle top_rad_socle(const GradedModule& m) {
  const GradedSubspace rad = radical_subspace(m);
  GradedSubspace soc;
  const auto& gens = m.algebra()->generators();
  for (const auto& s : m.support()) {
    std::vector<Matrix> rows;
    for (size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].source != s.first) continue;
      const Slot ts = target_slot(gens[g], s);
      if (m.dim_at(ts) == 0) continue;
      rows.push_back(sub_block(m.action(static_cast<int>(g)), m.indices(ts), m.indices(s)));
    }
    const Index k = m.dim_at(s);
    Matrix kern = rows.empty() ? identity_matrix(k, m.field()) : kernel(vcat(rows, k));
    if (kern.cols() > 0) soc[s] = kern;
  }
  return {quotient(m, rad), submodule(m, rad), submodule(m, soc)};
}

Cover projective_cover(const GradedModule& m) {
  const AlgebraPtr& a = m.algebra();
  const GradedSubspace rad = radical_subspace(m);
  std::vector<std::pair<ShiftedIndex, int>> generators;  // summand, module basis index of its image
  for (const auto& s : m.support()) {
    const Index k = m.dim_at(s);
    const Matrix sub = columns_of(rad, s) ? rad.at(s) : zero_matrix(k, 0);
    for (Index r : complement_indices(sub)) generators.push_back({{s.first, -s.second}, m.indices(s)[static_cast<size_t>(r)]});
  }
  std::map<int, GradedModule> projectives;
  std::vector<GradedModule> parts;
  Cover out;
  for (const auto& [si, idx] : generators) {
    auto it = projectives.find(si.vertex);
    if (it == projectives.end()) it = projectives.emplace(si.vertex, projective_module(a, si.vertex)).first;
    parts.push_back(shift(it->second, si.shift));
    out.summands.push_back(si);
  }
  out.sum = direct_sum(a, parts);
  Matrix map = zero_matrix(m.dim(), out.sum.module.dim());
  Index col = 0;
  for (size_t k = 0; k < generators.size(); ++k) {
    const int v = generators[k].first.vertex;
    const Vector gen = unit_vector(m.dim(), generators[k].second, m.field());
    for (int b = 0; b < a->dim(); ++b) {
      if (a->element(b).source != v) continue;
      map.col(col++) = m.act(b, gen);
    }
  }
  out.map = {out.sum.module, m, map};
  return out;
}

GradedModule dual_module(const GradedModule& m) {
  std::vector<Slot> slots = m.slots();
  for (auto& s : slots) s.second = -s.second;
  std::vector<Matrix> actions;
  for (size_t g = 0; g < m.algebra()->generators().size(); ++g)
    actions.push_back(m.action(static_cast<int>(g)).transpose());
  return GradedModule(opposite(m.algebra()), std::move(slots), std::move(actions));
}

ModuleMap dual_map(const ModuleMap& f) {
  return {dual_module(f.target), dual_module(f.source), f.matrix.transpose()};
}

Envelope injective_envelope(const GradedModule& m) {
  const Cover c = projective_cover(dual_module(m));
  Envelope out;
  for (const auto& s : c.summands) out.summands.push_back({s.vertex, -s.shift});
  out.sum.module = dual_module(c.sum.module);
  for (size_t k = 0; k < c.sum.inclusions.size(); ++k) {
    out.sum.inclusions.push_back(dual_map(c.sum.projections[k]));
    out.sum.projections.push_back(dual_map(c.sum.inclusions[k]));
    out.sum.inclusions.back().target = out.sum.module;
    out.sum.projections.back().source = out.sum.module;
  }
  out.map = {m, out.sum.module, c.map.matrix.transpose()};
  return out;
}

namespace {

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

// Local endomorphism ring: the trace form on End(m) has rank one.
bool local_endomorphisms(const std::vector<ModuleMap>& ends) {
  if (ends.size() <= 1) return true;
  const Index k = static_cast<Index>(ends.size());
  Matrix gram = zero_matrix(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = i; j < k; ++j) {
      const Matrix p = mul(ends[static_cast<size_t>(i)].matrix, ends[static_cast<size_t>(j)].matrix);
      Scalar t = 0;
      for (Index d = 0; d < p.rows(); ++d) t += p(d, d);
      gram(i, j) = t;
      gram(j, i) = t;
    }
  return rank(gram) <= 1;
}

// Stable power of an endomorphism (Fitting): returns phi^k with
// rank(phi^k) == rank(phi^(k+1)).
Matrix stable_power(const Matrix& phi) {
  Matrix p = phi;
  Index r = rank(p);
  while (r > 0) {
    Matrix q = mul(p, phi);
    const Index rq = rank(q);
    if (rq == r) break;
    p = std::move(q);
    r = rq;
  }
  return p;
}

struct Piece {
  GradedModule module;
  Matrix inclusion;  // columns in the coordinates of the original module
};

void split(const GradedModule& m, const Matrix& inclusion, std::vector<Piece>& out) {
  if (m.dim() == 0) return;
  const auto ends = hom_basis(m, m, 0);
  if (local_endomorphisms(ends)) {
    out.push_back({m, inclusion});
    return;
  }
  const Index n = m.dim();
  const Matrix one = identity_matrix(n, m.field());
  std::vector<Matrix> candidates;
  for (const auto& e : ends) candidates.push_back(e.matrix);
  for (const auto& e : ends)
    for (int c : {1, -1, 2, -2}) candidates.push_back(e.matrix - m.field().from_int(c) * one);
  for (size_t i = 0; i < ends.size(); ++i)
    for (size_t j = 0; j < ends.size(); ++j) {
      candidates.push_back(mul(ends[i].matrix, ends[j].matrix));
      if (i < j) {
        candidates.push_back(ends[i].matrix + ends[j].matrix);
        candidates.push_back(ends[i].matrix - ends[j].matrix);
      }
    }
  std::mt19937 rng(static_cast<unsigned>(n * 7919 + static_cast<Index>(ends.size())));
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int trial = 0; trial < 64; ++trial) {
    Matrix x = zero_matrix(n, n);
    for (const auto& e : ends) x += m.field().from_int(coeff(rng)) * e.matrix;
    for (int c : {0, 1, -1}) candidates.push_back(x - m.field().from_int(c) * one);
  }
  // Endomorphisms killing a basis vector are never invertible; a random one
  // from that annihilator is non-nilpotent whenever any of them is.
  for (Index v = 0; v < n; ++v) {
    Matrix cols(n, static_cast<Index>(ends.size()));
    for (size_t k = 0; k < ends.size(); ++k) cols.col(static_cast<Index>(k)) = ends[k].matrix.col(v);
    const Matrix ann = kernel(cols);
    if (ann.cols() == 0) continue;
    for (int trial = 0; trial < 4; ++trial) {
      Matrix x = zero_matrix(n, n);
      for (Index c = 0; c < ann.cols(); ++c) {
        const Scalar w = trial == 0 && c == 0 ? m.field().one() : m.field().from_int(coeff(rng));
        for (size_t k = 0; k < ends.size(); ++k)
          if (!ann(static_cast<Index>(k), c).is_zero()) x += (w * ann(static_cast<Index>(k), c)) * ends[k].matrix;
      }
      candidates.push_back(std::move(x));
    }
  }
  for (const Matrix& phi : candidates) {
    const Matrix p = stable_power(phi);
    const Index r = rank(p);
    if (r == 0 || r == n) continue;
    const auto rr = row_reduce(p);
    const GradedSubspace img = subspace_of(m, rr.image_basis);
    const GradedSubspace ker = subspace_of(m, rr.kernel_basis);
    const Submodule a = submodule(m, img);
    const Submodule b = submodule(m, ker);
    split(a.module, mul(inclusion, a.inclusion.matrix), out);
    split(b.module, mul(inclusion, b.inclusion.matrix), out);
    return;
  }
  throw IdempotentLiftDiverged("no splitting endomorphism found for a decomposable module of dimension " +
                               std::to_string(n));
}

}  // namespace

std::vector<Summand> decompose(const GradedModule& m) {
  std::vector<Piece> pieces;
  split(m, identity_matrix(m.dim(), m.field()), pieces);
  std::vector<Matrix> cols;
  for (const auto& p : pieces) cols.push_back(p.inclusion);
  std::vector<Summand> out;
  if (pieces.empty()) return out;
  const Matrix u = hcat(cols, m.dim());
  const Matrix uinv = *solve(u, identity_matrix(m.dim(), m.field()));
  Index row = 0;
  for (const auto& p : pieces) {
    const Index d = p.module.dim();
    out.push_back({p.module, {p.module, m, p.inclusion}, {m, p.module, uinv.block(row, 0, d, m.dim())}});
    row += d;
  }
  return out;
}

bool is_indecomposable(const GradedModule& m) { return m.dim() > 0 && local_endomorphisms(hom_basis(m, m, 0)); }

std::optional<int> isomorphic_shift(const GradedModule& x, const GradedModule& y) {
  if (x.dim() != y.dim()) return std::nullopt;
  if (x.dim() == 0) return 0;
  const int s = y.min_degree() - x.min_degree();
  const GradedModule ys = shift(y, s);
  if (ys.dims() != x.dims()) return std::nullopt;
  const auto there = hom_basis(x, ys, 0);
  if (there.empty()) return std::nullopt;
  const auto back = hom_basis(ys, x, 0);
  for (const auto& f : there)
    for (const auto& g : back)
      if (invertible(mul(g.matrix, f.matrix))) return s;
  return std::nullopt;
}

bool isomorphic(const GradedModule& x, const GradedModule& y) {
  if (x.dims() != y.dims()) return false;
  auto xs = decompose(x);
  auto ys = decompose(y);
  if (xs.size() != ys.size()) return false;
  std::vector<bool> used(ys.size(), false);
  for (const auto& a : xs) {
    bool matched = false;
    for (size_t k = 0; k < ys.size() && !matched; ++k) {
      if (used[k]) continue;
      auto s = isomorphic_shift(a.module, ys[k].module);
      if (s && *s == 0) {
        used[k] = true;
        matched = true;
      }
    }
    if (!matched) return false;
  }
  return true;
}

int ExtensionClasses::dim_at(int d) const {
  return static_cast<int>(std::count_if(classes.begin(), classes.end(), [d](const auto& c) { return c.first == d; }));
}

namespace {

Vector flatten(const Matrix& m) {
  Vector v(m.size());
  Index k = 0;
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
  return v;
}

}  // namespace

ExtensionClasses extension_classes(const GradedModule& x, const GradedModule& m) {
  ExtensionClasses out;
  out.cover = projective_cover(x);
  out.syzygy = map_spaces(out.cover.map).kernel;
  const GradedModule& omega = out.syzygy.module;
  const GradedModule& p0 = out.cover.sum.module;
  if (omega.dim() == 0 || m.dim() == 0) return out;
  // Hom(omega<d>, m) needs a common slot: d = deg(omega) - deg(m) at one vertex
  std::set<int> shifts;
  for (const auto& s : omega.support())
    for (const auto& t : m.support())
      if (s.first == t.first) shifts.insert(s.second - t.second);
  for (int d : shifts) {
    const auto h = hom_basis(shift(omega, d), m, 0);
    if (h.empty()) continue;
    const auto r = hom_basis(shift(p0, d), m, 0);
    Matrix v = zero_matrix(static_cast<Index>(m.dim()) * omega.dim(), static_cast<Index>(h.size()));
    for (size_t k = 0; k < h.size(); ++k) v.col(static_cast<Index>(k)) = flatten(h[k].matrix);
    Matrix restricted = zero_matrix(v.rows(), static_cast<Index>(r.size()));
    for (size_t k = 0; k < r.size(); ++k)
      restricted.col(static_cast<Index>(k)) = flatten(mul(r[k].matrix, out.syzygy.inclusion.matrix));
    const auto coords = solve(v, restricted);
    if (!coords) throw std::logic_error("restriction of a map from the cover is not a map from the syzygy");
    for (Index k : complement_indices(*coords)) out.classes.emplace_back(d, h[static_cast<size_t>(k)]);
  }
  return out;
}

UniversalExtension universal_extension(const GradedModule& x, const GradedModule& m) {
  const ExtensionClasses ext = extension_classes(x, m);
  const AlgebraPtr& a = m.algebra();
  if (ext.classes.empty()) return {m, identity_map(m), {}};
  std::vector<GradedModule> targets{m};
  std::vector<GradedModule> sources;
  UniversalExtension out;
  for (const auto& [d, phi] : ext.classes) {
    targets.push_back(shift(ext.cover.sum.module, d));
    sources.push_back(shift(ext.syzygy.module, d));
    out.added_shifts.push_back(d);
  }
  const DirectSum to = direct_sum(a, targets);
  const DirectSum from = direct_sum(a, sources);
  std::vector<std::vector<Matrix>> blocks(targets.size(), std::vector<Matrix>(sources.size()));
  for (size_t k = 0; k < ext.classes.size(); ++k) {
    blocks[0][k] = ext.classes[k].second.matrix;
    blocks[k + 1][k] = -ext.syzygy.inclusion.matrix;
  }
  const ModuleMap glue = block_map(from, to, blocks);
  const Quotient q = map_spaces(glue).cokernel;
  out.module = q.module;
  out.inclusion = compose(q.projection, to.inclusions[0]);
  return out;
}

}  // namespace qha
