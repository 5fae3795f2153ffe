#include "qha/homological.hpp"

#include "qha/errors.hpp"
#include "qha/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qha {

using Eigen::Index;

namespace {

Vector flatten(const Matrix& m) {
  Vector v(m.size());
  Index k = 0;
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
  return v;
}

Matrix columns(const std::vector<Vector>& vs, Index rows) {
  Matrix m = zero_matrix(rows, static_cast<Index>(vs.size()));
  for (size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Index>(k)) = vs[k];
  return m;
}

std::vector<Matrix> matrices(const std::vector<ModuleMap>& maps) {
  std::vector<Matrix> out;
  out.reserve(maps.size());
  for (const auto& f : maps) out.push_back(f.matrix);
  return out;
}

std::string dims_string(const GradedModule& m) {
  std::string s;
  for (const auto& [slot, d] : m.dims()) {
    if (!s.empty()) s += ", ";
    s += "(" + std::to_string(slot.first) + "," + std::to_string(slot.second) + "):" + std::to_string(d);
  }
  return "{" + s + "}";
}

// The direct summand of a block-diagonal module spanned by some basis indices.
GradedModule restrict_module(const GradedModule& m, const std::vector<int>& idx) {
  std::vector<Slot> slots;
  for (int i : idx) slots.push_back(m.slot(i));
  std::vector<Matrix> actions;
  const Index n = static_cast<Index>(idx.size());
  for (size_t g = 0; g < m.algebra()->generators().size(); ++g) {
    const Matrix& a = m.action(static_cast<int>(g));
    Matrix b(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) b(r, c) = a(idx[static_cast<size_t>(r)], idx[static_cast<size_t>(c)]);
    actions.push_back(std::move(b));
  }
  return GradedModule(m.algebra(), std::move(slots), std::move(actions));
}

Matrix pick(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) out(static_cast<Index>(r), static_cast<Index>(c)) = m(rows[r], cols[c]);
  return out;
}

std::vector<int> range_indices(int from, int count) {
  std::vector<int> v(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) v[static_cast<size_t>(k)] = from + k;
  return v;
}

}  // namespace

std::string describe(const Labeled& l, const std::vector<std::string>& vertex_labels) {
  std::string s = class_symbol(l.klass) + "(" + vertex_labels[static_cast<size_t>(l.vertex)] + ")";
  if (l.shift != 0) s += "<" + std::to_string(l.shift) + ">";
  return s;
}

GradedModule labeled_module(const Catalog& catalog, const Labeled& l) {
  return shift(catalog.get(l.klass, l.vertex), l.shift);
}

bool ChainComplex::empty() const {
  return std::all_of(terms.begin(), terms.end(), [](const GradedModule& m) { return m.dim() == 0; });
}

GradedModule ChainComplex::term(int pos) const {
  if (pos < lo || pos > hi()) return GradedModule::zero(algebra);
  return terms[static_cast<size_t>(pos - lo)];
}

Matrix ChainComplex::differential(int pos) const {
  if (pos >= lo && pos < hi()) return d[static_cast<size_t>(pos - lo)];
  return zero_matrix(term(pos + 1).dim(), term(pos).dim());
}

const std::vector<Labeled>& ChainComplex::pieces_at(int pos) const {
  static const std::vector<Labeled> none;
  if (!labeled || pos < lo || pos > hi()) return none;
  return pieces[static_cast<size_t>(pos - lo)];
}

bool ChainComplex::is_complex() const {
  for (int p = lo; p < hi(); ++p) {
    const ModuleMap f{term(p), term(p + 1), differential(p)};
    if (!f.is_homomorphism()) return false;
    if (p + 1 < hi() && !is_zero(mul(differential(p + 1), differential(p)))) return false;
  }
  return true;
}

void ChainComplex::trim() {
  while (!terms.empty() && terms.front().dim() == 0) {
    terms.erase(terms.begin());
    if (!d.empty()) d.erase(d.begin());
    if (labeled) pieces.erase(pieces.begin()), piece_dims.erase(piece_dims.begin());
    ++lo;
  }
  while (!terms.empty() && terms.back().dim() == 0) {
    terms.pop_back();
    if (!d.empty()) d.pop_back();
    if (labeled) pieces.pop_back(), piece_dims.pop_back();
  }
  if (terms.empty()) lo = 0;
}

ChainComplex single(const GradedModule& m, int position) {
  ChainComplex c;
  c.algebra = m.algebra();
  c.lo = position;
  c.terms = {m};
  return c;
}

ChainComplex single(const Catalog& catalog, const Labeled& l, int position) {
  return labeled_complex(catalog, position, {{l}}, {});
}

ChainComplex labeled_complex(const Catalog& catalog, int lo, std::vector<std::vector<Labeled>> pieces,
                             std::vector<Matrix> d) {
  ChainComplex c;
  c.algebra = catalog.algebra();
  c.lo = lo;
  c.labeled = true;
  for (const auto& ps : pieces) {
    std::vector<GradedModule> parts;
    std::vector<int> dims;
    for (const auto& l : ps) {
      parts.push_back(labeled_module(catalog, l));
      dims.push_back(parts.back().dim());
    }
    c.piece_dims.push_back(std::move(dims));
    c.terms.push_back(parts.empty() ? GradedModule::zero(c.algebra) : direct_sum(c.algebra, parts).module);
  }
  c.pieces = std::move(pieces);
  c.d = std::move(d);
  if (c.d.size() + 1 != c.terms.size() && !c.terms.empty())
    throw std::invalid_argument("a complex needs one differential between consecutive terms");
  return c;
}

GradedModule homology(const ChainComplex& c, int pos) {
  const GradedModule x = c.term(pos);
  if (x.dim() == 0) return x;
  const Submodule k = map_spaces({x, c.term(pos + 1), c.differential(pos)}).kernel;
  const Matrix incoming = c.differential(pos - 1);
  if (incoming.cols() == 0 || is_zero(incoming)) return k.module;
  const auto coords = solve(k.inclusion.matrix, incoming);
  if (!coords) throw std::logic_error("differentials do not compose to zero");
  return quotient(k.module, subspace_of(k.module, *coords)).module;
}

std::map<Slot, int> euler_characteristic(const ChainComplex& c) {
  std::map<Slot, int> out;
  for (int p = c.lo; p <= c.hi(); ++p)
    for (const auto& [s, d] : c.term(p).dims()) out[s] += (p % 2 == 0 ? d : -d);
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

int default_cap(const AlgebraPtr& a) { return std::max(1, 2 * a->num_vertices() - 2); }

namespace {

// Terms built outward from position 0 (index t at position sign * t), with
// maps between consecutive ones, assembled into a complex.
ChainComplex assemble(const AlgebraPtr& a, bool downward, std::vector<GradedModule> built,
                      std::vector<std::vector<Labeled>> pieces, std::vector<std::vector<int>> dims,
                      std::vector<Matrix> maps) {
  ChainComplex c;
  c.algebra = a;
  c.labeled = true;
  if (downward) {
    std::reverse(built.begin(), built.end());
    std::reverse(pieces.begin(), pieces.end());
    std::reverse(dims.begin(), dims.end());
    std::reverse(maps.begin(), maps.end());
    c.lo = -static_cast<int>(built.size()) + 1;
  }
  c.terms = std::move(built);
  c.pieces = std::move(pieces);
  c.piece_dims = std::move(dims);
  c.d = std::move(maps);
  return c;
}

}  // namespace

Resolution min_resolution(Side side, const GradedModule& m, int cap, bool truncate) {
  if (cap < 1) throw std::invalid_argument("resolution cap must be at least 1");
  const AlgebraPtr& a = m.algebra();
  std::vector<GradedModule> built;
  std::vector<std::vector<Labeled>> pieces;
  std::vector<std::vector<int>> dims;
  std::vector<Matrix> maps;
  Resolution out;
  if (side == Side::Projective) {
    Cover c = projective_cover(m);
    out.augmentation = c.map;
    Submodule k = map_spaces(c.map).kernel;
    auto push = [&](const Cover& cv) {
      built.push_back(cv.sum.module);
      std::vector<Labeled> ls;
      for (const auto& s : cv.summands) ls.push_back({ModuleClass::Projective, s.vertex, s.shift});
      pieces.push_back(std::move(ls));
      std::vector<int> ds;
      for (const auto& inc : cv.sum.inclusions) ds.push_back(inc.source.dim());
      dims.push_back(std::move(ds));
    };
    push(c);
    int steps = 0;
    while (k.module.dim() > 0) {
      if (steps == cap) {
        if (truncate) break;
        throw CapExceeded(cap, dims_string(k.module));
      }
      Cover next = projective_cover(k.module);
      maps.push_back(mul(k.inclusion.matrix, next.map.matrix));
      push(next);
      k = map_spaces(next.map).kernel;
      ++steps;
    }
    out.complex = assemble(a, true, std::move(built), std::move(pieces), std::move(dims), std::move(maps));
    if (m.dim() == 0) out.complex.terms.clear(), out.complex.pieces.clear(), out.complex.piece_dims.clear(), out.complex.d.clear(), out.complex.lo = 0;
    return out;
  }
  Envelope e = injective_envelope(m);
  out.augmentation = e.map;
  Quotient q = map_spaces(e.map).cokernel;
  auto push = [&](const Envelope& ev) {
    built.push_back(ev.sum.module);
    std::vector<Labeled> ls;
    for (const auto& s : ev.summands) ls.push_back({ModuleClass::Injective, s.vertex, s.shift});
    pieces.push_back(std::move(ls));
    std::vector<int> ds;
    for (const auto& inc : ev.sum.inclusions) ds.push_back(inc.source.dim());
    dims.push_back(std::move(ds));
  };
  push(e);
  int steps = 0;
  while (q.module.dim() > 0) {
    if (steps == cap) {
      if (truncate) break;
      throw CapExceeded(cap, dims_string(q.module));
    }
    Envelope next = injective_envelope(q.module);
    maps.push_back(mul(next.map.matrix, q.projection.matrix));
    push(next);
    q = map_spaces(next.map).cokernel;
    ++steps;
  }
  out.complex = assemble(a, false, std::move(built), std::move(pieces), std::move(dims), std::move(maps));
  if (m.dim() == 0) out.complex.terms.clear(), out.complex.pieces.clear(), out.complex.piece_dims.clear(), out.complex.d.clear();
  return out;
}

namespace {

// Hom spaces between tilting modules and the radical of their degree-0
// endomorphism rings.
class TiltingHoms {
 public:
  explicit TiltingHoms(const Catalog& cat) : cat_(cat) {}

  const std::vector<Matrix>& get(int from, int to, int k) {
    auto key = std::make_tuple(from, to, k);
    auto it = cache_.find(key);
    if (it == cache_.end())
      it = cache_.emplace(key, matrices(hom_basis(cat_.tilting(from), cat_.tilting(to), k))).first;
    return it->second;
  }

  // Endomorphisms vanishing on the one-dimensional slot (v, 0) of T(v).
  const std::vector<Matrix>& radical(int v) {
    auto it = radical_.find(v);
    if (it != radical_.end()) return it->second;
    const GradedModule& t = cat_.tilting(v);
    const int top = t.indices({v, 0}).front();
    const Matrix one = identity_matrix(t.dim(), t.field());
    std::vector<Vector> flat;
    std::vector<Matrix> candidates;
    for (const Matrix& e : get(v, v, 0)) {
      Matrix r = e - e(top, top) * one;
      if (is_zero(r)) continue;
      candidates.push_back(r);
      flat.push_back(flatten(r));
    }
    std::vector<Matrix> out;
    if (!flat.empty())
      for (Index k : independent_columns(columns(flat, flat.front().size()))) out.push_back(candidates[static_cast<size_t>(k)]);
    return radical_.emplace(v, std::move(out)).first->second;
  }

  // Non-invertible maps T(a)<x> -> T(b)<y>.
  const std::vector<Matrix>& radical_maps(int a, int x, int b, int y) {
    if (a == b && x == y) return radical(a);
    return get(a, b, y - x);
  }

 private:
  const Catalog& cat_;
  std::map<std::tuple<int, int, int>, std::vector<Matrix>> cache_;
  std::map<int, std::vector<Matrix>> radical_;
};

// Maps picked from each hom space Hom(m, T(mu)<d>) (or Hom(T(mu)<d>, m))
// complementing those factoring through radical maps between tiltings.
Approximation approximate(const Catalog& cat, const GradedModule& m, bool left) {
  TiltingHoms homs(cat);
  struct Space {
    int vertex, shift;
    std::vector<Matrix> maps;
  };
  std::vector<Space> spaces;
  for (int mu = 0; mu < cat.size(); ++mu) {
    const GradedModule& t = cat.tilting(mu);
    if (m.dim() == 0 || t.dim() == 0) continue;
    for (int d = t.min_degree() - m.max_degree(); d <= t.max_degree() - m.min_degree(); ++d) {
      auto maps = left ? matrices(hom_basis(m, t, d)) : matrices(hom_basis(shift(t, d), m, 0));
      if (!maps.empty()) spaces.push_back({mu, d, std::move(maps)});
    }
  }
  Approximation out;
  std::vector<GradedModule> parts;
  std::vector<Matrix> chosen;
  for (const auto& target : spaces) {
    std::vector<Vector> span;
    for (const auto& source : spaces)
      for (const Matrix& h : source.maps) {
        const auto& rad = left ? homs.radical_maps(source.vertex, source.shift, target.vertex, target.shift)
                               : homs.radical_maps(target.vertex, target.shift, source.vertex, source.shift);
        for (const Matrix& r : rad) span.push_back(flatten(left ? mul(r, h) : mul(h, r)));
      }
    const Index len = target.maps.front().size();
    Matrix current = columns(span, len);
    Index have = rank(current);
    for (const Matrix& h : target.maps) {
      Matrix trial = hcat({current, Matrix(flatten(h))}, len);
      const Index r = rank(trial);
      if (r == have) continue;
      current = std::move(trial);
      have = r;
      chosen.push_back(h);
      out.pieces.push_back({ModuleClass::Tilting, target.vertex, target.shift});
      parts.push_back(shift(cat.tilting(target.vertex), target.shift));
      out.dims.push_back(parts.back().dim());
    }
  }
  out.module = parts.empty() ? GradedModule::zero(m.algebra()) : direct_sum(m.algebra(), parts).module;
  if (left) {
    out.map = chosen.empty() ? zero_matrix(0, m.dim()) : vcat(chosen, m.dim());
  } else {
    out.map = chosen.empty() ? zero_matrix(m.dim(), 0) : hcat(chosen, m.dim());
  }
  if (rank(out.map) != m.dim())
    throw ApproximationFailed(std::string(left ? "left" : "right") + " add(T)-approximation of a module with dims " +
                              dims_string(m) + " is not " + (left ? "injective" : "surjective"));
  return out;
}

int tilting_cap(const Catalog& cat) { return 2 * cat.size() + 2; }

}  // namespace

Approximation left_approximation(const Catalog& catalog, const GradedModule& m) {
  return approximate(catalog, m, true);
}

Approximation right_approximation(const Catalog& catalog, const GradedModule& m) {
  return approximate(catalog, m, false);
}

Resolution tilting_coresolution(const Catalog& catalog, const GradedModule& m) {
  std::vector<GradedModule> built;
  std::vector<std::vector<Labeled>> pieces;
  std::vector<std::vector<int>> dims;
  std::vector<Matrix> maps;
  Resolution out;
  Approximation a = left_approximation(catalog, m);
  out.augmentation = {m, a.module, a.map};
  Quotient q = map_spaces(out.augmentation).cokernel;
  built.push_back(a.module);
  pieces.push_back(a.pieces);
  dims.push_back(a.dims);
  int steps = 0;
  while (q.module.dim() > 0) {
    if (++steps > tilting_cap(catalog)) throw CapExceeded(tilting_cap(catalog), dims_string(q.module));
    Approximation b = left_approximation(catalog, q.module);
    maps.push_back(mul(b.map, q.projection.matrix));
    built.push_back(b.module);
    pieces.push_back(b.pieces);
    dims.push_back(b.dims);
    q = map_spaces({q.module, b.module, b.map}).cokernel;
  }
  out.complex = assemble(catalog.algebra(), false, std::move(built), std::move(pieces), std::move(dims), std::move(maps));
  out.complex.trim();
  return out;
}

Resolution tilting_resolution(const Catalog& catalog, const GradedModule& m) {
  std::vector<GradedModule> built;
  std::vector<std::vector<Labeled>> pieces;
  std::vector<std::vector<int>> dims;
  std::vector<Matrix> maps;
  Resolution out;
  Approximation a = right_approximation(catalog, m);
  out.augmentation = {a.module, m, a.map};
  Submodule k = map_spaces(out.augmentation).kernel;
  built.push_back(a.module);
  pieces.push_back(a.pieces);
  dims.push_back(a.dims);
  int steps = 0;
  while (k.module.dim() > 0) {
    if (++steps > tilting_cap(catalog)) throw CapExceeded(tilting_cap(catalog), dims_string(k.module));
    Approximation b = right_approximation(catalog, k.module);
    maps.push_back(mul(k.inclusion.matrix, b.map));
    built.push_back(b.module);
    pieces.push_back(b.pieces);
    dims.push_back(b.dims);
    k = map_spaces({b.module, k.module, b.map}).kernel;
  }
  out.complex = assemble(catalog.algebra(), true, std::move(built), std::move(pieces), std::move(dims), std::move(maps));
  out.complex.trim();
  return out;
}

Resolution tilting_resolution(const Catalog& catalog, TiltingSide side, int vertex) {
  if (!catalog.has_tilting()) throw std::logic_error("catalog was built without tilting modules");
  return side == TiltingSide::CoresolveStandard ? tilting_coresolution(catalog, catalog.standard(vertex))
                                                : tilting_resolution(catalog, catalog.costandard(vertex));
}

namespace {

std::optional<Labeled> identify(const GradedModule& part, ModuleClass klass, const Catalog& catalog) {
  for (int v = 0; v < catalog.size(); ++v) {
    const GradedModule& s = catalog.get(klass, v);
    if (s.dim() != part.dim()) continue;
    if (auto sh = isomorphic_shift(part, s)) return Labeled{klass, v, *sh};
  }
  return std::nullopt;
}

}  // namespace

Linearity is_linear(const ChainComplex& c, ModuleClass klass, const Catalog& catalog) {
  Linearity out;
  for (int p = c.lo; p <= c.hi(); ++p) {
    std::vector<Labeled> found;
    if (c.labeled) {
      for (const auto& l : c.pieces_at(p)) {
        if (l.klass == klass) {
          found.push_back(l);
          continue;
        }
        auto id = identify(labeled_module(catalog, l), klass, catalog);
        if (!id)
          throw UnrecognizedSummand(describe(l, catalog.algebra()->vertex_labels()) + " at position " +
                                    std::to_string(p) + " is not a shifted " + class_symbol(klass));
        found.push_back(*id);
      }
    } else {
      for (const auto& part : decompose(c.term(p))) {
        auto id = identify(part.module, klass, catalog);
        if (!id)
          throw UnrecognizedSummand("summand with dims " + dims_string(part.module) + " at position " +
                                    std::to_string(p) + " is not a shifted " + class_symbol(klass));
        found.push_back(*id);
      }
    }
    for (const auto& l : found)
      if (l.shift != p) {
        out.linear = false;
        out.witness = LinearityWitness{p, l};
        return out;
      }
  }
  return out;
}

int ext_dim(const GradedModule& m, const GradedModule& n, int i, int j, Side side) {
  if (i < 0 || m.dim() == 0 || n.dim() == 0) return 0;
  auto rank_of = [](const std::vector<Vector>& vs) {
    return vs.empty() ? Index{0} : rank(columns(vs, vs.front().size()));
  };
  if (side == Side::Projective) {
    const ChainComplex p = min_resolution(Side::Projective, m, i + 1, true).complex;
    auto homs = [&](int k) { return matrices(hom_basis(p.term(-k), n, j)); };
    auto image_rank = [&](int k) {  // f |-> f o d^{-k-1} on Hom(P^-k, N)
      if (k < 0) return Index{0};
      std::vector<Vector> vs;
      const Matrix d = p.differential(-k - 1);
      for (const Matrix& f : homs(k)) vs.push_back(flatten(mul(f, d)));
      return rank_of(vs);
    };
    return static_cast<int>(homs(i).size() - static_cast<size_t>(image_rank(i)) - static_cast<size_t>(image_rank(i - 1)));
  }
  const GradedModule target = shift(n, j);
  const ChainComplex q = min_resolution(Side::Injective, target, i + 1, true).complex;
  auto homs = [&](int k) { return matrices(hom_basis(m, q.term(k), 0)); };
  auto image_rank = [&](int k) {  // g |-> d^k o g on Hom(M, Q^k)
    if (k < 0) return Index{0};
    std::vector<Vector> vs;
    const Matrix d = q.differential(k);
    for (const Matrix& g : homs(k)) vs.push_back(flatten(mul(d, g)));
    return rank_of(vs);
  };
  return static_cast<int>(homs(i).size() - static_cast<size_t>(image_rank(i)) - static_cast<size_t>(image_rank(i - 1)));
}

Vector HomotopyHom::coordinates(const ChainMap& f) const {
  Index total = 0;
  for (const auto& h : hom) total += static_cast<Index>(h.size());
  Vector c(total);
  Index off = 0;
  for (size_t k = 0; k < positions.size(); ++k) {
    const Index len = static_cast<Index>(hom[k].size());
    auto it = f.find(positions[k]);
    if (it == f.end() || is_zero(it->second)) {
      c.segment(off, len) = zero_vector(len);
    } else {
      auto x = solve(hom_flat[k], flatten(it->second));
      if (!x) throw std::invalid_argument("component is not a homomorphism of the expected kind");
      c.segment(off, len) = *x;
    }
    off += len;
  }
  const Index b = static_cast<Index>(basis.size());
  if (b == 0) return Vector(0);
  auto x = solve(solver, c);
  if (!x) throw std::invalid_argument("map is not a chain map");
  return x->head(b);
}

namespace {

void require_tilting(const ChainComplex& c) {
  if (!c.labeled) throw ComponentsNotSelfOrthogonal("complex components are not known to be tilting");
  for (const auto& ps : c.pieces)
    for (const auto& l : ps)
      if (l.klass != ModuleClass::Tilting) throw ComponentsNotSelfOrthogonal("complex has a non-tilting component");
}

}  // namespace

HomotopyHom homotopy_hom(const ChainComplex& x, const ChainComplex& y, int i, int j, bool assume_self_orthogonal) {
  if (!assume_self_orthogonal) {
    require_tilting(x);
    require_tilting(y);
  }
  HomotopyHom out;
  out.i = i;
  out.j = j;
  std::map<int, Index> offset;
  Index total = 0;
  for (int k = x.lo; k <= x.hi(); ++k) {
    const GradedModule xs = x.term(k), ys = y.term(k + i);
    if (xs.dim() == 0 || ys.dim() == 0) continue;
    auto h = matrices(hom_basis(xs, ys, j));
    if (h.empty()) continue;
    std::vector<Vector> flat;
    for (const Matrix& m : h) flat.push_back(flatten(m));
    offset[k] = total;
    total += static_cast<Index>(h.size());
    out.positions.push_back(k);
    out.hom_flat.push_back(columns(flat, flat.front().size()));
    out.hom.push_back(std::move(h));
  }
  if (total == 0) return out;
  auto slot_of = [&](int k) -> std::optional<size_t> {
    auto it = std::find(out.positions.begin(), out.positions.end(), k);
    if (it == out.positions.end()) return std::nullopt;
    return static_cast<size_t>(it - out.positions.begin());
  };

  // cycles: d_Y f^k - f^{k+1} d_X = 0 for every k
  std::vector<Matrix> blocks;
  for (int k = x.lo - 1; k <= x.hi(); ++k) {
    const Index rows = y.term(k + i + 1).dim() * x.term(k).dim();
    if (rows == 0) continue;
    Matrix blk = zero_matrix(rows, total);
    bool any = false;
    if (auto s = slot_of(k)) {
      const Matrix dy = y.differential(k + i);
      for (size_t c = 0; c < out.hom[*s].size(); ++c) {
        blk.col(offset[k] + static_cast<Index>(c)) += flatten(mul(dy, out.hom[*s][c]));
        any = true;
      }
    }
    if (auto s = slot_of(k + 1)) {
      const Matrix dx = x.differential(k);
      for (size_t c = 0; c < out.hom[*s].size(); ++c) {
        blk.col(offset[k + 1] + static_cast<Index>(c)) -= flatten(mul(out.hom[*s][c], dx));
        any = true;
      }
    }
    if (any) blocks.push_back(std::move(blk));
  }
  const Matrix cycles = blocks.empty() ? identity_matrix(total, x.algebra->field()) : kernel(vcat(blocks, total));

  // boundaries: d_Y h^k + h^{k+1} d_X for h^k : X^k -> Y^{k+i-1}<j>
  std::vector<Vector> bounds;
  for (int k = x.lo; k <= x.hi(); ++k) {
    const GradedModule xs = x.term(k), ys = y.term(k + i - 1);
    if (xs.dim() == 0 || ys.dim() == 0) continue;
    for (const auto& h : hom_basis(xs, ys, j)) {
      Vector c = zero_vector(total);
      if (auto s = slot_of(k)) {
        const Matrix f = mul(y.differential(k + i - 1), h.matrix);
        if (!is_zero(f)) c.segment(offset[k], static_cast<Index>(out.hom[*s].size())) = *solve(out.hom_flat[*s], flatten(f));
      }
      if (auto s = slot_of(k - 1)) {
        const Matrix f = mul(h.matrix, x.differential(k - 1));
        if (!is_zero(f))
          c.segment(offset[k - 1], static_cast<Index>(out.hom[*s].size())) = *solve(out.hom_flat[*s], flatten(f));
      }
      if (!is_zero(Matrix(c))) bounds.push_back(std::move(c));
    }
  }
  Matrix current = columns(bounds, total);
  if (current.cols() > 0) current = Matrix(current(Eigen::all, independent_columns(current)));
  const Index nb = current.cols();
  std::vector<Vector> reps;
  Index have = nb;
  for (Index c = 0; c < cycles.cols(); ++c) {
    Matrix trial = hcat({current, Matrix(cycles.col(c))}, total);
    const Index r = rank(trial);
    if (r == have) continue;
    current = std::move(trial);
    have = r;
    reps.push_back(cycles.col(c));
  }
  // solver = [reps | boundaries]
  std::vector<Vector> cols = reps;
  for (Index c = 0; c < nb; ++c) cols.push_back(current.col(c));
  out.solver = columns(cols, total);
  for (const Vector& r : reps) {
    ChainMap f;
    for (size_t s = 0; s < out.positions.size(); ++s) {
      const int k = out.positions[s];
      Matrix m = zero_matrix(out.hom[s].front().rows(), out.hom[s].front().cols());
      for (size_t c = 0; c < out.hom[s].size(); ++c) {
        const Scalar& w = r(offset[k] + static_cast<Index>(c));
        if (!w.is_zero()) m += w * out.hom[s][c];
      }
      f[k] = std::move(m);
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

int homotopy_hom_dim(const ChainComplex& x, const ChainComplex& y, int i, int j, bool assume_self_orthogonal) {
  return static_cast<int>(homotopy_hom(x, y, i, j, assume_self_orthogonal).basis.size());
}

ChainMap compose(const ChainMap& g, const ChainMap& f, int fi) {
  ChainMap out;
  for (const auto& [k, fk] : f) {
    auto it = g.find(k + fi);
    if (it == g.end()) continue;
    out[k] = mul(it->second, fk);
  }
  return out;
}

ChainMap identity_chain_map(const ChainComplex& x) {
  ChainMap out;
  for (int k = x.lo; k <= x.hi(); ++k) {
    const int n = x.term(k).dim();
    if (n > 0) out[k] = identity_matrix(n, x.algebra->field());
  }
  return out;
}

bool dominates(const ChainComplex& x, const ChainComplex& y) {
  if (!x.labeled || !y.labeled) throw std::invalid_argument("domination needs labeled complexes");
  for (int p = std::max(x.lo, y.lo); p <= std::min(x.hi(), y.hi()); ++p)
    for (const auto& a : x.pieces_at(p))
      for (const auto& b : y.pieces_at(p))
        if (!(-a.shift < -b.shift)) return false;
  return true;
}

ChainComplex reduce(const ChainComplex& input) {
  if (!input.labeled) throw std::invalid_argument("reduce needs a labeled complex");
  ChainComplex c = input;
  const Field& field = c.algebra->field();
  auto starts = [&](size_t k) {
    std::vector<int> off{0};
    for (int d : c.piece_dims[k]) off.push_back(off.back() + d);
    return off;
  };
  for (;;) {
    bool changed = false;
    for (size_t k = 0; k + 1 < c.terms.size() && !changed; ++k) {
      const auto sx = starts(k), sy = starts(k + 1);
      const Matrix& dk = c.d[k];
      for (size_t a = 0; a < c.pieces[k].size() && !changed; ++a)
        for (size_t b = 0; b < c.pieces[k + 1].size() && !changed; ++b) {
          if (!(c.pieces[k][a] == c.pieces[k + 1][b])) continue;
          const int n = c.piece_dims[k][a];
          const Matrix phi = dk.block(sy[b], sx[a], n, n);
          if (rank(phi) != n) continue;
          // Gaussian elimination of the isomorphism block phi
          std::vector<int> xa = range_indices(sx[a], n), yb = range_indices(sy[b], n), xr, yr;
          for (int q = 0; q < c.terms[k].dim(); ++q)
            if (q < sx[a] || q >= sx[a] + n) xr.push_back(q);
          for (int q = 0; q < c.terms[k + 1].dim(); ++q)
            if (q < sy[b] || q >= sy[b] + n) yr.push_back(q);
          const Matrix inv = *solve(phi, identity_matrix(n, field));
          const Matrix reduced = pick(dk, yr, xr) - mul(mul(pick(dk, yr, xa), inv), pick(dk, yb, xr));
          if (k > 0) c.d[k - 1] = pick(c.d[k - 1], xr, range_indices(0, c.terms[k - 1].dim()));
          if (k + 1 < c.d.size()) c.d[k + 1] = pick(c.d[k + 1], range_indices(0, c.terms[k + 2].dim()), yr);
          c.d[k] = reduced;
          c.terms[k] = restrict_module(c.terms[k], xr);
          c.terms[k + 1] = restrict_module(c.terms[k + 1], yr);
          c.pieces[k].erase(c.pieces[k].begin() + static_cast<long>(a));
          c.piece_dims[k].erase(c.piece_dims[k].begin() + static_cast<long>(a));
          c.pieces[k + 1].erase(c.pieces[k + 1].begin() + static_cast<long>(b));
          c.piece_dims[k + 1].erase(c.piece_dims[k + 1].begin() + static_cast<long>(b));
          changed = true;
        }
    }
    if (!changed) break;
  }
  c.trim();
  return c;
}

ChainComplex tilting_replacement(const Catalog& catalog, const ChainComplex& c) {
  const AlgebraPtr& a = catalog.algebra();
  ChainComplex out;
  out.algebra = a;
  out.labeled = true;
  out.lo = c.lo;
  if (c.terms.empty()) return out;
  // w sits at position p; incoming maps the previous tilting term into it
  GradedModule w = c.term(c.lo);
  Matrix w_next = c.differential(c.lo);
  std::optional<Matrix> incoming;
  for (int p = c.lo; p < c.hi(); ++p) {
    const Approximation ap = left_approximation(catalog, w);
    if (incoming) out.d.push_back(mul(ap.map, *incoming));
    out.terms.push_back(ap.module);
    out.pieces.push_back(ap.pieces);
    out.piece_dims.push_back(ap.dims);
    // pushout of X^p <- w -> C^{p+1}
    const GradedModule next = c.term(p + 1);
    const DirectSum sum = direct_sum(a, {ap.module, next});
    const Matrix glue = vcat({ap.map, Matrix(-w_next)}, w.dim());
    const Quotient q = map_spaces({w, sum.module, glue}).cokernel;
    incoming = mul(q.projection.matrix, sum.inclusions[0].matrix);
    // C^{p+1} -> C^{p+2} factors through the pushout
    const Matrix section = *solve(q.projection.matrix, identity_matrix(q.module.dim(), a->field()));
    const Matrix onward = mul(mul(c.differential(p + 1), sum.projections[1].matrix), section);
    w = q.module;
    w_next = onward;
  }
  const Resolution r = tilting_coresolution(catalog, w);
  if (incoming) out.d.push_back(mul(r.augmentation.matrix, *incoming));
  for (int p = r.complex.lo; p <= r.complex.hi(); ++p) {
    if (p > r.complex.lo) out.d.push_back(r.complex.differential(p - 1));
    out.terms.push_back(r.complex.term(p));
    out.pieces.push_back(r.complex.pieces_at(p));
    out.piece_dims.push_back(r.complex.piece_dims[static_cast<size_t>(p - r.complex.lo)]);
  }
  if (r.complex.terms.empty()) {
    // w = 0: the last approximation ends the complex
    if (!out.d.empty()) out.d.pop_back();
  }
  out.trim();
  return out;
}

ChainComplex tilting_complex_of_simple(const Catalog& catalog, int vertex) {
  const AlgebraPtr& a = catalog.algebra();
  const GradedModule& l = catalog.simple(vertex);
  const ChainComplex p = min_resolution(Side::Projective, l, default_cap(a)).complex;
  ChainComplex t = reduce(tilting_replacement(catalog, p));
  for (int pos = t.lo; pos <= t.hi(); ++pos) {
    const GradedModule h = homology(t, pos);
    if (pos == 0 ? h.dims() != l.dims() : h.dim() != 0)
      throw std::logic_error("tilting complex of a simple module has the wrong homology at position " +
                             std::to_string(pos));
  }
  return t;
}

namespace {

Scalar supertrace(const ChainMap& f, const Field& field) {
  Scalar s = field.zero();
  for (const auto& [k, m] : f) {
    Scalar t = field.zero();
    for (Index r = 0; r < std::min(m.rows(), m.cols()); ++r) t += m(r, r);
    s += (k % 2 == 0) ? t : -t;
  }
  return s;
}

struct Block {
  int source = 0, target = 0, i = 0, j = 0;
  HomotopyHom space;
  std::vector<ChainMap> elements;  // the algebra's basis in this block
  Matrix to_elements;              // space coordinates -> element coordinates
  int first = 0;                   // global index of elements[0]
};

}  // namespace

AlgebraPtr end_algebra(const std::vector<ChainComplex>& xs, EndGrading grading, bool opposite,
                       const std::string& name, const std::vector<std::string>& vertex_labels,
                       bool assume_self_orthogonal) {
  if (xs.empty()) throw std::invalid_argument("end_algebra needs at least one complex");
  const Field field = xs.front().algebra->field();
  const int n = static_cast<int>(xs.size());
  auto degree_range = [](const ChainComplex& c) {
    int lo = 0, hi = 0;
    bool any = false;
    for (const auto& t : c.terms) {
      if (t.dim() == 0) continue;
      lo = any ? std::min(lo, t.min_degree()) : t.min_degree();
      hi = any ? std::max(hi, t.max_degree()) : t.max_degree();
      any = true;
    }
    return std::make_pair(lo, hi);
  };
  std::vector<Block> blocks;
  std::map<std::tuple<int, int, int, int>, size_t> where;
  std::vector<BasisElement> basis;
  std::vector<int> idempotents(static_cast<size_t>(n), -1);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const ChainComplex& x = xs[static_cast<size_t>(s)];
      const ChainComplex& y = xs[static_cast<size_t>(t)];
      if (x.empty() || y.empty()) continue;
      const auto [xl, xh] = degree_range(x);
      const auto [yl, yh] = degree_range(y);
      std::vector<std::pair<int, int>> ij;
      const int imin = grading == EndGrading::Internal ? 0 : y.lo - x.hi();
      const int imax = grading == EndGrading::Internal ? 0 : y.hi() - x.lo;
      for (int i = imin; i <= imax; ++i) {
        if (grading == EndGrading::Linear) {
          ij.emplace_back(i, -i);
          continue;
        }
        for (int j = yl - xh; j <= yh - xl; ++j) ij.emplace_back(i, j);
      }
      for (const auto& [i, j] : ij) {
        Block b{s, t, i, j, homotopy_hom(x, y, i, j, assume_self_orthogonal), {}, {}, 0};
        const Index dim = static_cast<Index>(b.space.basis.size());
        if (dim == 0) continue;
        if (s == t && i == 0 && j == 0) {
          // identity first, then endomorphisms with vanishing supertrace
          const ChainMap one = identity_chain_map(x);
          const Scalar chi = supertrace(one, field);
          b.elements.push_back(one);
          if (dim > 1) {
            if (chi.is_zero()) throw Error("cannot separate the radical of a degree-0 endomorphism space");
            const Scalar inv = field.one() / chi;
            for (const ChainMap& e : b.space.basis) {
              ChainMap r = e;
              const Scalar c = supertrace(e, field) * inv;
              for (auto& [k, m] : r) m -= c * one.at(k);
              b.elements.push_back(std::move(r));
            }
          }
          Matrix coords = zero_matrix(dim, static_cast<Index>(b.elements.size()));
          for (size_t e = 0; e < b.elements.size(); ++e) coords.col(static_cast<Index>(e)) = b.space.coordinates(b.elements[e]);
          auto keep = independent_columns(coords);
          if (static_cast<Index>(keep.size()) != dim || keep.front() != 0)
            throw Error("identity is not a basis element of the degree-0 endomorphisms");
          std::vector<ChainMap> kept;
          for (Index k : keep) kept.push_back(b.elements[static_cast<size_t>(k)]);
          b.elements = std::move(kept);
          b.to_elements = *solve(coords(Eigen::all, keep), identity_matrix(dim, field));
        } else {
          b.elements = b.space.basis;
          b.to_elements = identity_matrix(dim, field);
        }
        b.first = static_cast<int>(basis.size());
        const int degree = grading == EndGrading::Internal ? j : i;
        for (size_t e = 0; e < b.elements.size(); ++e) basis.push_back({degree, s, t});
        if (s == t && i == 0 && j == 0) idempotents[static_cast<size_t>(s)] = b.first;
        where[{s, t, i, j}] = blocks.size();
        blocks.push_back(std::move(b));
      }
    }
  for (int v = 0; v < n; ++v)
    if (idempotents[static_cast<size_t>(v)] < 0) throw Error("a complex has no identity endomorphism");
  std::vector<std::pair<size_t, size_t>> owner;  // global index -> (block, element)
  for (size_t b = 0; b < blocks.size(); ++b)
    for (size_t e = 0; e < blocks[b].elements.size(); ++e) owner.emplace_back(b, e);
  auto product = [&](int k, int l) -> SparseVector {
    const auto [bk, ek] = owner[static_cast<size_t>(k)];
    const auto [bl, el] = owner[static_cast<size_t>(l)];
    const Block& g = blocks[bk];
    const Block& f = blocks[bl];
    auto it = where.find({f.source, g.target, f.i + g.i, f.j + g.j});
    if (it == where.end()) return {};
    const Block& h = blocks[it->second];
    const ChainMap gf = compose(g.elements[ek], f.elements[el], f.i);
    const Vector c = mul(h.to_elements, Matrix(h.space.coordinates(gf)));
    SparseVector out;
    for (Index r = 0; r < c.size(); ++r)
      if (!c(r).is_zero()) out.emplace_back(h.first + static_cast<int>(r), c(r));
    return out;
  };
  return algebra_from_products(field, name, vertex_labels, basis, idempotents, product, opposite);
}

AlgebraPtr end_algebra_of_complexes(const std::vector<ChainComplex>& xs) {
  if (xs.empty()) throw std::invalid_argument("end_algebra_of_complexes needs at least one complex");
  std::vector<std::string> labels;
  for (size_t v = 0; v < xs.size(); ++v) labels.push_back(std::to_string(v + 1));
  return end_algebra(xs, EndGrading::Linear, false, "End", labels);
}

}  // namespace qha
