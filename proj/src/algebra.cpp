#include "qha/algebra.hpp"

#include "qha/errors.hpp"
#include "qha/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qha {

using Eigen::Index;

namespace {

void axpy(Vector& y, const Scalar& c, const SparseVector& x) {
  for (const auto& [k, v] : x) y(k) += c * v;
}

using BlockKey = std::tuple<int, int, int>;  // (source, target, degree)

std::map<BlockKey, std::vector<int>> blocks_of(const GradedAlgebra::Data& d, bool radical_only,
                                               const std::vector<int>& idempotent_vertex) {
  std::map<BlockKey, std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(d.basis.size()); ++i) {
    if (radical_only && idempotent_vertex[static_cast<size_t>(i)] >= 0) continue;
    const auto& b = d.basis[static_cast<size_t>(i)];
    out[{b.source, b.target, b.degree}].push_back(i);
  }
  return out;
}

std::string word_string(const QuiverPresentation& p, const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + p.arrows[static_cast<size_t>(w[i])].label;
  return s;
}

}  // namespace

GradedAlgebra::GradedAlgebra(Data data) : data_(std::move(data)) {
  const size_t dim = data_.basis.size();
  if (data_.table.size() != dim * dim) throw std::invalid_argument("structure table has wrong size");
  if (data_.vertex_labels.size() != data_.idempotents.size())
    throw std::invalid_argument("one label per vertex required");
  idempotent_vertex_.assign(dim, -1);
  for (size_t v = 0; v < data_.idempotents.size(); ++v) {
    const auto& b = data_.basis[static_cast<size_t>(data_.idempotents[v])];
    if (b.source != static_cast<int>(v) || b.target != static_cast<int>(v) || b.degree != 0)
      throw std::invalid_argument("idempotent basis element has wrong tags");
    idempotent_vertex_[static_cast<size_t>(data_.idempotents[v])] = static_cast<int>(v);
  }
}

AlgebraPtr GradedAlgebra::create(Data data) {
  std::shared_ptr<GradedAlgebra> a(new GradedAlgebra(std::move(data)));
  a->compute_generators();
  a->compute_words();
  return a;
}

AlgebraPtr GradedAlgebra::create(Data data, std::vector<Generator> generators,
                                 std::vector<std::vector<WordTerm>> words) {
  std::shared_ptr<GradedAlgebra> a(new GradedAlgebra(std::move(data)));
  a->generators_ = std::move(generators);
  a->words_ = std::move(words);
  a->words_.resize(a->data_.basis.size());
  return a;
}

// Generators: per homogeneous block, basis elements completing rad^2 to rad.
void GradedAlgebra::compute_generators() {
  const int n = dim();
  const auto blocks = blocks_of(data_, true, idempotent_vertex_);
  std::map<BlockKey, std::vector<Vector>> squares;
  for (int i = 0; i < n; ++i) {
    if (is_idempotent(i)) continue;
    for (int j = 0; j < n; ++j) {
      if (is_idempotent(j) || product(i, j).empty()) continue;
      const auto& bi = element(i);
      const auto& bj = element(j);
      Vector v = zero_vector(n);
      axpy(v, field().one(), product(i, j));
      squares[{bj.source, bi.target, bi.degree + bj.degree}].push_back(v);
    }
  }
  generators_.clear();
  int counter = 0;
  for (const auto& [key, idx] : blocks) {
    const Index k = static_cast<Index>(idx.size());
    const auto& sq = squares[key];
    Matrix cols = zero_matrix(k, static_cast<Index>(sq.size()));
    for (Index c = 0; c < cols.cols(); ++c)
      for (Index r = 0; r < k; ++r) cols(r, c) = sq[static_cast<size_t>(c)](idx[static_cast<size_t>(r)]);
    for (Index r : complement_indices(cols)) {
      const int b = idx[static_cast<size_t>(r)];
      generators_.push_back({"x" + std::to_string(++counter), std::get<0>(key), std::get<1>(key), std::get<2>(key),
                             unit(b)});
    }
  }
}

// Words in the generators spanning each block, found by extending independent
// words one letter at a time; each radical basis element is then solved for.
void GradedAlgebra::compute_words() {
  const int n = dim();
  words_.assign(static_cast<size_t>(n), {});
  const auto blocks = blocks_of(data_, true, idempotent_vertex_);
  struct Found {
    Word word;
    Vector value;
  };
  std::map<BlockKey, std::vector<Found>> found;
  std::map<BlockKey, Matrix> spans;
  auto block_coords = [&](const BlockKey& key, const Vector& v) {
    const auto& idx = blocks.at(key);
    Vector c(static_cast<Index>(idx.size()));
    for (size_t r = 0; r < idx.size(); ++r) c(static_cast<Index>(r)) = v(idx[r]);
    return c;
  };
  auto try_add = [&](const Word& w, const Vector& value, int src, int tgt, int deg) {
    if (is_zero(Matrix(value))) return false;
    const BlockKey key{src, tgt, deg};
    auto bit = blocks.find(key);
    if (bit == blocks.end()) return false;
    Vector c = block_coords(key, value);
    Matrix& span = spans[key];
    const Index k = static_cast<Index>(bit->second.size());
    if (span.cols() == k) return false;
    Matrix ext = hcat({span.size() ? span : zero_matrix(k, 0), Matrix(c)}, k);
    if (rank(ext) == ext.cols()) {
      span = ext;
      found[key].push_back({w, value});
      return true;
    }
    return false;
  };

  struct Frontier {
    Word word;
    Vector value;
    int source, target, degree;
  };
  std::vector<Frontier> layer;
  for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
    const auto& gen = generators_[static_cast<size_t>(g)];
    if (try_add({g}, gen.element, gen.source, gen.target, gen.degree))
      layer.push_back({{g}, gen.element, gen.source, gen.target, gen.degree});
  }
  while (!layer.empty()) {
    std::vector<Frontier> next;
    for (const auto& f : layer) {
      for (int g = 0; g < static_cast<int>(generators_.size()); ++g) {
        const auto& gen = generators_[static_cast<size_t>(g)];
        if (gen.source != f.target) continue;
        Vector v = multiply(gen.element, f.value);
        Word w{g};
        w.insert(w.end(), f.word.begin(), f.word.end());
        if (try_add(w, v, f.source, gen.target, f.degree + gen.degree))
          next.push_back({w, v, f.source, gen.target, f.degree + gen.degree});
      }
    }
    layer = std::move(next);
  }
  for (const auto& [key, idx] : blocks) {
    const auto& fs = found[key];
    const Index k = static_cast<Index>(idx.size());
    if (static_cast<Index>(fs.size()) != k)
      throw std::invalid_argument("algebra is not generated by its radical generators");
    const Matrix& span = spans[key];
    auto inv = solve(span, identity_matrix(k, field()));
    for (Index r = 0; r < k; ++r) {
      auto& terms = words_[static_cast<size_t>(idx[static_cast<size_t>(r)])];
      for (Index c = 0; c < k; ++c)
        if (!(*inv)(c, r).is_zero()) terms.push_back({(*inv)(c, r), fs[static_cast<size_t>(c)].word});
    }
  }
}

Vector GradedAlgebra::multiply(const Vector& x, const Vector& y) const {
  Vector out = zero_vector(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x(i).is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y(j).is_zero()) continue;
      axpy(out, x(i) * y(j), product(i, j));
    }
  }
  return out;
}

Vector GradedAlgebra::evaluate(const Word& w) const {
  if (w.empty()) throw std::invalid_argument("empty word");
  Vector v = generators_[static_cast<size_t>(w.back())].element;
  for (size_t k = w.size() - 1; k-- > 0;) v = multiply(generators_[static_cast<size_t>(w[k])].element, v);
  return v;
}

int GradedAlgebra::min_degree() const {
  int m = 0;
  for (const auto& b : data_.basis) m = std::min(m, b.degree);
  return m;
}

int GradedAlgebra::max_degree() const {
  int m = 0;
  for (const auto& b : data_.basis) m = std::max(m, b.degree);
  return m;
}

DimTable GradedAlgebra::graded_dims() const {
  DimTable t;
  for (const auto& b : data_.basis) ++t[{b.source, b.target, b.degree}];
  return t;
}

std::vector<int> GradedAlgebra::degree_dims() const {
  const int lo = min_degree();
  std::vector<int> out(static_cast<size_t>(max_degree() - lo + 1), 0);
  for (const auto& b : data_.basis) ++out[static_cast<size_t>(b.degree - lo)];
  return out;
}

bool same_structure(const GradedAlgebra& a, const GradedAlgebra& b) {
  if (a.field() != b.field() || a.data_.basis != b.data_.basis || a.data_.idempotents != b.data_.idempotents)
    return false;
  for (size_t k = 0; k < a.data_.table.size(); ++k) {
    const auto& x = a.data_.table[k];
    const auto& y = b.data_.table[k];
    if (x.size() != y.size()) return false;
    for (size_t t = 0; t < x.size(); ++t)
      if (x[t].first != y[t].first || x[t].second != y[t].second) return false;
  }
  return true;
}

bool is_associative(const GradedAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (a.product(i, j).empty()) continue;
      for (int k = 0; k < n; ++k) {
        Vector left = zero_vector(n);
        for (const auto& [m, c] : a.product(i, j)) axpy(left, c, a.product(m, k));
        Vector right = zero_vector(n);
        for (const auto& [m, c] : a.product(j, k)) axpy(right, c, a.product(i, m));
        if (left != right) return false;
      }
    }
  return true;
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  std::lock_guard lock(a->opposite_mutex_);
  if (auto origin = a->origin_.lock()) return origin;
  if (a->opposite_) return a->opposite_;
  GradedAlgebra::Data d = a->data_;
  d.name = a->name() + "^op";
  for (auto& b : d.basis) std::swap(b.source, b.target);
  const size_t n = d.basis.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) d.table[i * n + j] = a->data_.table[j * n + i];
  std::vector<Generator> gens = a->generators_;
  for (auto& g : gens) std::swap(g.source, g.target);
  std::vector<std::vector<WordTerm>> words = a->words_;
  for (auto& terms : words)
    for (auto& t : terms) std::reverse(t.word.begin(), t.word.end());
  auto op = GradedAlgebra::create(std::move(d), std::move(gens), std::move(words));
  op->origin_ = a;
  a->opposite_ = op;
  return op;
}

int default_degree_cap(const QuiverPresentation& p) {
  int total = 0;
  for (const auto& r : p.relations) total += p.relation_degree(r);
  return 2 * (p.num_vertices() + total);
}

namespace {

// One degree of the path algebra: all composable words, the echelon form of
// the relation ideal, and the normal (non-pivot) words spanning the quotient.
struct DegreeSlice {
  std::vector<Word> words;
  std::map<Word, int> index;
  Echelon ideal;
  std::vector<int> pivot_row;   // per word: echelon row or -1
  std::vector<int> basis_index; // per word: algebra basis index or -1
};

}  // namespace

AlgebraPtr build_algebra(const QuiverPresentation& p, std::optional<int> degree_cap) {
  validate(p);
  const int cap = degree_cap.value_or(default_degree_cap(p));
  if (cap < 2) throw std::invalid_argument("degree cap must be at least 2");
  const Field& F = p.field;
  const int nv = p.num_vertices();
  const int na = static_cast<int>(p.arrows.size());
  int maxdeg = 0;
  for (const auto& a : p.arrows) maxdeg = std::max(maxdeg, a.degree);

  GradedAlgebra::Data data;
  data.field = F;
  data.name = p.name;
  data.vertex_labels = p.vertices;
  for (int v = 0; v < nv; ++v) {
    data.basis.push_back({0, v, v});
    data.idempotents.push_back(v);
  }

  std::vector<DegreeSlice> slices(1);  // slices[d], degree 0 unused
  std::vector<Word> normal_words(static_cast<size_t>(nv));
  int zero_run = 0;
  int top = 0;
  for (int d = 1; maxdeg > 0 && zero_run < maxdeg; ++d) {
    if (d > cap) {
      std::vector<std::string> surviving;
      for (int e = d - maxdeg; e < d; ++e)
        for (size_t c = 0; c < slices[static_cast<size_t>(e)].words.size(); ++c)
          if (slices[static_cast<size_t>(e)].basis_index[c] >= 0)
            surviving.push_back(word_string(p, slices[static_cast<size_t>(e)].words[c]));
      throw NotFiniteDimensional(cap, surviving);
    }
    DegreeSlice s;
    for (int a = 0; a < na; ++a) {
      const auto& arrow = p.arrows[static_cast<size_t>(a)];
      if (arrow.degree == d) s.words.push_back({a});
      if (arrow.degree >= d) continue;
      for (const Word& w : slices[static_cast<size_t>(d - arrow.degree)].words) {
        if (p.word_target(w) != arrow.source) continue;
        Word x{a};
        x.insert(x.end(), w.begin(), w.end());
        s.words.push_back(std::move(x));
      }
    }
    std::sort(s.words.begin(), s.words.end(), [](const Word& x, const Word& y) {
      return x.size() != y.size() ? x.size() > y.size() : x < y;
    });
    for (size_t c = 0; c < s.words.size(); ++c) s.index[s.words[c]] = static_cast<int>(c);
    const Index nw = static_cast<Index>(s.words.size());

    std::vector<Vector> rows;
    for (const auto& r : p.relations) {
      if (p.relation_degree(r) != d) continue;
      Vector v = zero_vector(nw);
      for (const auto& t : r.terms) v(s.index.at(t.word)) += F.from_rational(t.coeff);
      rows.push_back(v);
    }
    for (int a = 0; a < na; ++a) {
      const auto& arrow = p.arrows[static_cast<size_t>(a)];
      if (arrow.degree >= d) continue;
      const DegreeSlice& lower = slices[static_cast<size_t>(d - arrow.degree)];
      for (Index r = 0; r < lower.ideal.rows.rows(); ++r) {
        Vector left = zero_vector(nw);
        Vector right = zero_vector(nw);
        bool any_left = false, any_right = false;
        for (Index c = 0; c < lower.ideal.rows.cols(); ++c) {
          const Scalar& coeff = lower.ideal.rows(r, c);
          if (coeff.is_zero()) continue;
          const Word& w = lower.words[static_cast<size_t>(c)];
          if (p.word_target(w) == arrow.source) {
            Word x{a};
            x.insert(x.end(), w.begin(), w.end());
            left(s.index.at(x)) += coeff;
            any_left = true;
          }
          if (p.word_source(w) == arrow.target) {
            Word x = w;
            x.push_back(a);
            right(s.index.at(x)) += coeff;
            any_right = true;
          }
        }
        if (any_left) rows.push_back(left);
        if (any_right) rows.push_back(right);
      }
    }
    Matrix m = zero_matrix(static_cast<Index>(rows.size()), nw);
    for (size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Index>(r)) = rows[r].transpose();
    s.ideal = echelon(m);
    s.pivot_row.assign(s.words.size(), -1);
    s.basis_index.assign(s.words.size(), -1);
    for (size_t r = 0; r < s.ideal.pivots.size(); ++r) s.pivot_row[static_cast<size_t>(s.ideal.pivots[r])] = static_cast<int>(r);
    int survivors = 0;
    for (size_t c = 0; c < s.words.size(); ++c) {
      if (s.pivot_row[c] >= 0) continue;
      s.basis_index[c] = static_cast<int>(data.basis.size());
      data.basis.push_back({d, p.word_source(s.words[c]), p.word_target(s.words[c])});
      normal_words.push_back(s.words[c]);
      ++survivors;
    }
    if (survivors == 0) {
      ++zero_run;
    } else {
      zero_run = 0;
      top = d;
    }
    slices.push_back(std::move(s));
  }

  auto reduce = [&](int d, const Word& w) -> SparseVector {
    if (d > top) return {};
    const DegreeSlice& s = slices[static_cast<size_t>(d)];
    const int c = s.index.at(w);
    if (s.basis_index[static_cast<size_t>(c)] >= 0) return {{s.basis_index[static_cast<size_t>(c)], F.one()}};
    SparseVector out;
    const Index r = s.pivot_row[static_cast<size_t>(c)];
    for (Index f = 0; f < s.ideal.rows.cols(); ++f) {
      const int b = s.basis_index[static_cast<size_t>(f)];
      if (b >= 0 && !s.ideal.rows(r, f).is_zero()) out.emplace_back(b, -s.ideal.rows(r, f));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };

  const size_t dim = data.basis.size();
  data.table.assign(dim * dim, {});
  for (size_t i = 0; i < dim; ++i) {
    const auto& bi = data.basis[i];
    for (size_t j = 0; j < dim; ++j) {
      const auto& bj = data.basis[j];
      if (bi.source != bj.target) continue;
      SparseVector& out = data.table[i * dim + j];
      if (static_cast<int>(i) < nv) {
        out = {{static_cast<int>(j), F.one()}};
      } else if (static_cast<int>(j) < nv) {
        out = {{static_cast<int>(i), F.one()}};
      } else {
        Word w = normal_words[i];
        w.insert(w.end(), normal_words[j].begin(), normal_words[j].end());
        out = reduce(bi.degree + bj.degree, w);
      }
    }
  }

  // The arrows serve as generators when they are distinct basis elements
  // independent modulo rad^2; otherwise generators are recomputed.
  std::vector<Generator> gens;
  bool arrows_minimal = true;
  std::set<int> seen;
  for (int a = 0; a < na; ++a) {
    const auto& arrow = p.arrows[static_cast<size_t>(a)];
    SparseVector img = reduce(arrow.degree, {a});
    if (img.size() != 1 || !img[0].second.is_one() || !seen.insert(img[0].first).second) arrows_minimal = false;
    Vector v = zero_vector(static_cast<Index>(dim));
    for (const auto& [k, c] : img) v(k) += c;
    gens.push_back({arrow.label, arrow.source, arrow.target, arrow.degree, v});
  }
  if (arrows_minimal) {
    for (int i = 0; i < static_cast<int>(dim); ++i)
      for (int j = 0; j < static_cast<int>(dim); ++j)
        for (const auto& [k, c] : data.table[static_cast<size_t>(i) * dim + static_cast<size_t>(j)])
          if (i >= nv && j >= nv && seen.count(k)) arrows_minimal = false;
  }
  if (!arrows_minimal) return GradedAlgebra::create(std::move(data));
  std::vector<std::vector<WordTerm>> words(dim);
  for (size_t i = static_cast<size_t>(nv); i < dim; ++i) words[i] = {{F.one(), normal_words[i]}};
  return GradedAlgebra::create(std::move(data), std::move(gens), std::move(words));
}

namespace {

// Quotient of a by a two-sided homogeneous ideal given by spanning vectors.
AlgebraPtr quotient(const AlgebraPtr& a, const std::vector<Vector>& ideal, std::string name) {
  const int n = a->dim();
  const Field& F = a->field();
  std::map<BlockKey, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    const auto& b = a->element(i);
    blocks[{b.source, b.target, b.degree}].push_back(i);
  }
  for (auto& [key, idx] : blocks)
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return a->is_idempotent(x) > a->is_idempotent(y); });

  // projection[i] = coordinates of b_i among kept elements
  std::vector<int> kept;
  std::vector<int> new_index(static_cast<size_t>(n), -1);
  std::vector<SparseVector> projection(static_cast<size_t>(n));
  std::vector<std::pair<BlockKey, std::vector<int>>> block_kept;
  for (const auto& [key, idx] : blocks) {
    const Index k = static_cast<Index>(idx.size());
    std::vector<Vector> sub;
    for (const auto& v : ideal) {
      Vector c(k);
      bool inside = true;
      for (int i = 0; i < n; ++i) {
        const auto& b = a->element(i);
        if (!v(i).is_zero() && BlockKey{b.source, b.target, b.degree} != key) inside = false;
      }
      if (!inside) continue;
      for (Index r = 0; r < k; ++r) c(r) = v(idx[static_cast<size_t>(r)]);
      sub.push_back(c);
    }
    Matrix cols = zero_matrix(k, static_cast<Index>(sub.size()));
    for (size_t c = 0; c < sub.size(); ++c) cols.col(static_cast<Index>(c)) = sub[c];
    const auto indep = independent_columns(cols);
    Matrix ideal_basis = zero_matrix(k, static_cast<Index>(indep.size()));
    for (size_t c = 0; c < indep.size(); ++c) ideal_basis.col(static_cast<Index>(c)) = cols.col(indep[c]);
    const auto comp = complement_indices(ideal_basis);
    std::vector<int> kk;
    Matrix full = zero_matrix(k, 0);
    std::vector<Matrix> parts;
    for (Index r : comp) {
      kk.push_back(idx[static_cast<size_t>(r)]);
      parts.push_back(unit_vector(k, r, F));
    }
    parts.push_back(ideal_basis);
    full = hcat(parts, k);
    Matrix inv = *solve(full, identity_matrix(k, F));
    for (Index r = 0; r < k; ++r) {
      SparseVector pv;
      for (size_t c = 0; c < comp.size(); ++c)
        if (!inv(static_cast<Index>(c), r).is_zero()) pv.emplace_back(static_cast<int>(c), inv(static_cast<Index>(c), r));
      projection[static_cast<size_t>(idx[static_cast<size_t>(r)])] = pv;
    }
    block_kept.emplace_back(key, kk);
  }
  // assign new indices: keep the original order
  std::map<BlockKey, std::vector<int>> kept_by_block(block_kept.begin(), block_kept.end());
  for (const auto& [key, kk] : block_kept) kept.insert(kept.end(), kk.begin(), kk.end());
  std::sort(kept.begin(), kept.end());
  for (size_t t = 0; t < kept.size(); ++t) new_index[static_cast<size_t>(kept[t])] = static_cast<int>(t);
  // rewrite projections in new indices
  for (int i = 0; i < n; ++i) {
    const auto& b = a->element(i);
    const auto& kk = kept_by_block[{b.source, b.target, b.degree}];
    for (auto& [c, s] : projection[static_cast<size_t>(i)]) c = new_index[static_cast<size_t>(kk[static_cast<size_t>(c)])];
    std::sort(projection[static_cast<size_t>(i)].begin(), projection[static_cast<size_t>(i)].end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  // surviving vertices
  std::vector<int> vertex_map(static_cast<size_t>(a->num_vertices()), -1);
  GradedAlgebra::Data d;
  d.field = F;
  d.name = std::move(name);
  int nv = 0;
  for (int v = 0; v < a->num_vertices(); ++v)
    if (new_index[static_cast<size_t>(a->idempotent(v))] >= 0) {
      vertex_map[static_cast<size_t>(v)] = nv++;
      d.vertex_labels.push_back(a->vertex_labels()[static_cast<size_t>(v)]);
    }
  d.idempotents.assign(static_cast<size_t>(nv), -1);
  for (int i : kept) {
    const auto& b = a->element(i);
    const int s = vertex_map[static_cast<size_t>(b.source)];
    const int t = vertex_map[static_cast<size_t>(b.target)];
    if (s < 0 || t < 0) throw std::logic_error("quotient keeps an element at a removed vertex");
    d.basis.push_back({b.degree, s, t});
    if (a->is_idempotent(i)) d.idempotents[static_cast<size_t>(s)] = new_index[static_cast<size_t>(i)];
  }
  const size_t m = kept.size();
  d.table.assign(m * m, {});
  for (size_t x = 0; x < m; ++x)
    for (size_t y = 0; y < m; ++y) {
      Vector acc = zero_vector(static_cast<Index>(m));
      bool any = false;
      for (const auto& [k, c] : a->product(kept[x], kept[y])) {
        axpy(acc, c, projection[static_cast<size_t>(k)]);
        any = true;
      }
      if (!any) continue;
      SparseVector out;
      for (Index k = 0; k < acc.size(); ++k)
        if (!acc(k).is_zero()) out.emplace_back(static_cast<int>(k), acc(k));
      d.table[x * m + y] = std::move(out);
    }
  return GradedAlgebra::create(std::move(d));
}

}  // namespace

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->field() != b->field()) throw InvalidCombination("direct sum of algebras over different fields");
  GradedAlgebra::Data d;
  d.field = a->field();
  d.name = a->name() + "+" + b->name();
  const int na = a->num_vertices();
  const int da = a->dim();
  const int db = b->dim();
  std::set<std::string> used(a->vertex_labels().begin(), a->vertex_labels().end());
  d.vertex_labels = a->vertex_labels();
  for (const auto& l : b->vertex_labels()) {
    std::string label = l;
    while (used.count(label)) label += "'";
    used.insert(label);
    d.vertex_labels.push_back(label);
  }
  d.basis = a->basis();
  for (auto x : b->basis()) {
    x.source += na;
    x.target += na;
    d.basis.push_back(x);
  }
  for (int v = 0; v < na; ++v) d.idempotents.push_back(a->idempotent(v));
  for (int v = 0; v < b->num_vertices(); ++v) d.idempotents.push_back(da + b->idempotent(v));
  const size_t n = static_cast<size_t>(da + db);
  d.table.assign(n * n, {});
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) d.table[static_cast<size_t>(i) * n + static_cast<size_t>(j)] = a->product(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      SparseVector v = b->product(i, j);
      for (auto& [k, c] : v) k += da;
      d.table[static_cast<size_t>(da + i) * n + static_cast<size_t>(da + j)] = std::move(v);
    }
  return GradedAlgebra::create(std::move(d));
}

AlgebraPtr tensor(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->field() != b->field()) throw InvalidCombination("tensor product of algebras over different fields");
  GradedAlgebra::Data d;
  d.field = a->field();
  d.name = a->name() + "(x)" + b->name();
  const int nb = b->num_vertices();
  const int da = a->dim();
  const int db = b->dim();
  for (const auto& x : a->vertex_labels())
    for (const auto& y : b->vertex_labels()) d.vertex_labels.push_back(x + "_" + y);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      const auto& x = a->element(i);
      const auto& y = b->element(j);
      d.basis.push_back({x.degree + y.degree, x.source * nb + y.source, x.target * nb + y.target});
    }
  for (int u = 0; u < a->num_vertices(); ++u)
    for (int v = 0; v < nb; ++v) d.idempotents.push_back(a->idempotent(u) * db + b->idempotent(v));
  const size_t n = static_cast<size_t>(da * db);
  d.table.assign(n * n, {});
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) {
      const auto& pa = a->product(i, k);
      if (pa.empty()) continue;
      for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l) {
          const auto& pb = b->product(j, l);
          if (pb.empty()) continue;
          SparseVector out;
          for (const auto& [x, c] : pa)
            for (const auto& [y, e] : pb) out.emplace_back(x * db + y, c * e);
          std::sort(out.begin(), out.end(), [](const auto& s, const auto& t) { return s.first < t.first; });
          d.table[static_cast<size_t>(i * db + j) * n + static_cast<size_t>(k * db + l)] = std::move(out);
        }
    }
  return GradedAlgebra::create(std::move(d));
}

AlgebraPtr truncate(const AlgebraPtr& a, int vertex) {
  if (vertex != a->num_vertices() - 1)
    throw InvalidCombination("truncation is only defined at the maximal vertex");
  const int n = a->dim();
  const int e = a->idempotent(vertex);
  std::vector<Vector> gens;
  for (int i = 0; i < n; ++i) {
    if (a->product(i, e).empty()) continue;
    for (int j = 0; j < n; ++j) {
      if (a->product(e, j).empty()) continue;
      Vector v = zero_vector(n);
      for (const auto& [k, c] : a->product(i, e)) axpy(v, c, a->product(k, j));
      if (!is_zero(Matrix(v))) gens.push_back(v);
    }
  }
  return quotient(a, gens, a->name() + "/e" + a->vertex_labels()[static_cast<size_t>(vertex)]);
}

AlgebraPtr combine(CombineMode mode, const AlgebraPtr& a, const AlgebraPtr& b, int vertex) {
  switch (mode) {
    case CombineMode::Opposite:
      return opposite(a);
    case CombineMode::DirectSum:
    case CombineMode::Tensor:
      if (!b) throw InvalidCombination("second algebra required");
      return mode == CombineMode::DirectSum ? direct_sum(a, b) : tensor(a, b);
    case CombineMode::Truncate:
      return truncate(a, vertex);
  }
  throw InvalidCombination("unknown combination");
}

AlgebraPtr algebra_from_products(const Field& field, const std::string& name,
                                 const std::vector<std::string>& vertex_labels, const std::vector<BasisElement>& basis,
                                 const std::vector<int>& idempotents,
                                 const std::function<SparseVector(int, int)>& product, bool opposite) {
  GradedAlgebra::Data d;
  d.field = field;
  d.name = name;
  d.vertex_labels = vertex_labels;
  d.basis = basis;
  d.idempotents = idempotents;
  const size_t n = basis.size();
  if (opposite)
    for (auto& b : d.basis) std::swap(b.source, b.target);
  d.table.assign(n * n, {});
  for (size_t k = 0; k < n; ++k)
    for (size_t l = 0; l < n; ++l) {
      // in the opposite algebra b_k * b_l is the original b_l * b_k
      const size_t x = opposite ? l : k, y = opposite ? k : l;
      if (basis[x].source != basis[y].target) continue;
      SparseVector v = product(static_cast<int>(x), static_cast<int>(y));
      std::erase_if(v, [](const auto& e) { return e.second.is_zero(); });
      d.table[k * n + l] = std::move(v);
    }
  return GradedAlgebra::create(std::move(d));
}

AlgebraPtr with_degrees(const AlgebraPtr& a, const std::vector<int>& degrees, const std::string& name) {
  GradedAlgebra::Data d = a->data();
  d.name = name;
  for (size_t i = 0; i < d.basis.size(); ++i) d.basis[i].degree = degrees[i];
  return GradedAlgebra::create(std::move(d));
}

namespace {

mpq_class display_coefficient(const Scalar& s) {
  mpq_class v = s.value();
  if (s.modulus() != 0 && v > s.modulus() / 2) v -= s.modulus();
  return v;
}

}  // namespace

QuiverPresentation extract_presentation(const AlgebraPtr& a) {
  int degree0 = 0;
  for (const auto& b : a->basis()) {
    if (b.degree < 0) throw Degree0NotSemisimple("algebra has basis elements of negative degree");
    if (b.degree == 0) ++degree0;
  }
  if (degree0 != a->num_vertices()) throw Degree0NotSemisimple("degree-0 part is not spanned by the idempotents");

  QuiverPresentation p;
  p.name = a->name();
  p.field = a->field();
  p.vertices = a->vertex_labels();
  const auto& gens = a->generators();
  const int ng = static_cast<int>(gens.size());
  int maxdeg = 0;
  for (const auto& g : gens) {
    p.arrows.push_back({g.label, g.source, g.target, g.degree});
    maxdeg = std::max(maxdeg, g.degree);
  }
  const int top = a->max_degree();
  const int n = a->dim();

  // Per degree: all words, their values, and an echelon basis of the ideal
  // generated so far.
  struct Slice {
    std::vector<Word> words;
    std::map<Word, int> index;
    std::vector<Vector> values;
    Echelon ideal;
  };
  std::vector<Slice> slices(1);
  for (int d = 1; d <= top + maxdeg; ++d) {
    Slice s;
    for (int g = 0; g < ng; ++g) {
      const auto& gen = gens[static_cast<size_t>(g)];
      if (gen.degree == d) {
        s.words.push_back({g});
        s.values.push_back(gen.element);
      }
      if (gen.degree >= d) continue;
      const Slice& lower = slices[static_cast<size_t>(d - gen.degree)];
      for (size_t c = 0; c < lower.words.size(); ++c) {
        const Word& w = lower.words[c];
        if (gens[static_cast<size_t>(w.front())].target != gen.source) continue;
        Word x{g};
        x.insert(x.end(), w.begin(), w.end());
        s.words.push_back(x);
        s.values.push_back(d > top ? zero_vector(n) : a->multiply(gen.element, lower.values[c]));
      }
    }
    for (size_t c = 0; c < s.words.size(); ++c) s.index[s.words[c]] = static_cast<int>(c);
    const Index nw = static_cast<Index>(s.words.size());
    std::vector<Vector> rows;
    for (int g = 0; g < ng; ++g) {
      const auto& gen = gens[static_cast<size_t>(g)];
      if (gen.degree >= d) continue;
      const Slice& lower = slices[static_cast<size_t>(d - gen.degree)];
      for (Index r = 0; r < lower.ideal.rows.rows(); ++r) {
        Vector left = zero_vector(nw), right = zero_vector(nw);
        bool any_left = false, any_right = false;
        for (Index c = 0; c < lower.ideal.rows.cols(); ++c) {
          const Scalar& coeff = lower.ideal.rows(r, c);
          if (coeff.is_zero()) continue;
          const Word& w = lower.words[static_cast<size_t>(c)];
          if (gens[static_cast<size_t>(w.front())].target == gen.source) {
            Word x{g};
            x.insert(x.end(), w.begin(), w.end());
            left(s.index.at(x)) += coeff;
            any_left = true;
          }
          if (gens[static_cast<size_t>(w.back())].source == gen.target) {
            Word x = w;
            x.push_back(g);
            right(s.index.at(x)) += coeff;
            any_right = true;
          }
        }
        if (any_left) rows.push_back(left);
        if (any_right) rows.push_back(right);
      }
    }
    Matrix generated = zero_matrix(static_cast<Index>(rows.size()), nw);
    for (size_t r = 0; r < rows.size(); ++r) generated.row(static_cast<Index>(r)) = rows[r].transpose();
    const Index have = rank(generated);

    Matrix values = zero_matrix(n, nw);
    for (Index c = 0; c < nw; ++c) values.col(c) = s.values[static_cast<size_t>(c)];
    Matrix kern = kernel(values);
    // kernel vectors in echelon form keep relations short
    Echelon ke = echelon(Matrix(kern.transpose()));
    Matrix current = generated;
    Index cur_rank = have;
    for (Index r = 0; r < ke.rows.rows(); ++r) {
      Matrix trial = vcat({current, Matrix(ke.rows.row(r))}, nw);
      const Index tr = rank(trial);
      if (tr == cur_rank) continue;
      current = trial;
      cur_rank = tr;
      Relation rel;
      for (Index c = 0; c < nw; ++c)
        if (!ke.rows(r, c).is_zero()) rel.terms.push_back({display_coefficient(ke.rows(r, c)), s.words[static_cast<size_t>(c)]});
      p.relations.push_back(std::move(rel));
    }
    s.ideal = echelon(current);
    slices.push_back(std::move(s));
  }
  return p;
}

GradingDiagnostics grading_diagnostics(const AlgebraPtr& a) {
  GradingDiagnostics g;
  g.min_degree = a->min_degree();
  g.graded_dims = a->degree_dims();
  int degree0 = 0;
  bool nonneg = true;
  for (const auto& b : a->basis()) {
    if (b.degree < 0) nonneg = false;
    if (b.degree == 0) ++degree0;
  }
  g.positively_graded = nonneg && degree0 == a->num_vertices();
  if (!g.positively_graded) return g;
  const auto p = extract_presentation(a);
  g.quadratic = std::all_of(p.arrows.begin(), p.arrows.end(), [](const Arrow& x) { return x.degree == 1; }) &&
                std::all_of(p.relations.begin(), p.relations.end(),
                            [&](const Relation& r) { return p.relation_degree(r) == 2; });
  return g;
}

}  // namespace qha
