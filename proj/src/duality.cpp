#include "qha/duality.hpp"

#include "qha/errors.hpp"
#include "qha/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>

namespace qha {

using Eigen::Index;

namespace {

std::optional<Order> certified_order(const AlgebraPtr& a) {
  for (Order o : {Order::Natural, Order::Opposite})
    if (is_quasi_hereditary(a, o).quasi_hereditary) return o;
  return std::nullopt;
}

}  // namespace

DualityResult ringel_dual(const AlgebraPtr& a, Order order) {
  const Catalog cat(a, order);
  std::vector<ChainComplex> ts;
  std::vector<std::string> labels;
  DualityResult r;
  for (int v : cat.descending()) {
    ts.push_back(single(cat, {ModuleClass::Tilting, v, 0}));
    labels.push_back(a->vertex_labels()[static_cast<size_t>(v)]);
    r.vertex_map.push_back(v);
  }
  r.algebra = end_algebra(ts, EndGrading::Internal, true, "R(" + a->name() + ")", labels);
  r.order = certified_order(r.algebra);
  r.provenance = "Ringel dual of " + a->name();
  return r;
}

DualityResult koszul_dual(const AlgebraPtr& a) {
  const Catalog cat = Catalog::basics(a);
  const int cap = default_cap(a);
  std::vector<ChainComplex> res;
  DualityResult r;
  for (int v = 0; v < a->num_vertices(); ++v) {
    res.push_back(min_resolution(Side::Projective, cat.simple(v), cap).complex);
    r.vertex_map.push_back(v);
  }
  r.algebra = end_algebra(res, EndGrading::Homological, true, "E(" + a->name() + ")", a->vertex_labels(), true);
  r.order = certified_order(r.algebra);
  r.provenance = "Koszul dual of " + a->name();
  return r;
}

std::string Nonlinearity::text(const std::vector<std::string>& vertex_labels) const {
  std::string s = complex;
  if (at) s += ": " + describe(at->summand, vertex_labels) + " at position " + std::to_string(at->position);
  if (!reason.empty()) s += (at ? " (" + reason + ")" : ": " + reason);
  return s;
}

namespace {

std::string name_of(ModuleClass c, int v, const AlgebraPtr& a) {
  return class_symbol(c) + "(" + a->vertex_labels()[static_cast<size_t>(v)] + ")";
}

// First nonlinearity of a minimal (co)resolution, if any.
std::optional<Nonlinearity> check_minimal(const Catalog& cat, Side side, ModuleClass of, int v) {
  const std::string what = std::string(side == Side::Projective ? "projective resolution of " : "injective coresolution of ") +
                           name_of(of, v, cat.algebra());
  try {
    const Resolution r = min_resolution(side, cat.get(of, v), default_cap(cat.algebra()));
    const Linearity lin = is_linear(r.complex, side == Side::Projective ? ModuleClass::Projective : ModuleClass::Injective, cat);
    if (!lin.linear) return Nonlinearity{what, lin.witness, ""};
  } catch (const CapExceeded& e) {
    return Nonlinearity{what, std::nullopt, e.what()};
  }
  return std::nullopt;
}

}  // namespace

KoszulityReport koszulity_checks(const AlgebraPtr& a, Order order) {
  KoszulityReport rep;
  const Catalog cat = Catalog::basics(a, order);
  const int n = a->num_vertices();
  for (int v = 0; v < n && !rep.koszul_witness; ++v)
    rep.koszul_witness = check_minimal(cat, Side::Projective, ModuleClass::Simple, v);
  rep.koszul = !rep.koszul_witness;
  if (!is_quasi_hereditary(a, order).quasi_hereditary) {
    rep.standard_witness = Nonlinearity{"standard modules", std::nullopt, "not quasi-hereditary for this order"};
  } else {
    for (int v = 0; v < n && !rep.standard_witness; ++v)
      rep.standard_witness = check_minimal(cat, Side::Projective, ModuleClass::Standard, v);
    for (int v = 0; v < n && !rep.standard_witness; ++v)
      rep.standard_witness = check_minimal(cat, Side::Injective, ModuleClass::Costandard, v);
  }
  rep.standard_koszul = !rep.standard_witness;
  return rep;
}

BalanceReport is_balanced(const AlgebraPtr& a, Order order) {
  BalanceReport rep;
  std::optional<Catalog> cat;
  try {
    cat.emplace(a, order);
  } catch (const NotQuasiHereditary& e) {
    rep.witness = Nonlinearity{"tilting modules", std::nullopt, e.what()};
    return rep;
  }
  for (TiltingSide side : {TiltingSide::CoresolveStandard, TiltingSide::ResolveCostandard})
    for (int v = 0; v < a->num_vertices(); ++v) {
      const bool co = side == TiltingSide::CoresolveStandard;
      const std::string what = std::string(co ? "tilting coresolution of " : "tilting resolution of ") +
                               name_of(co ? ModuleClass::Standard : ModuleClass::Costandard, v, a);
      try {
        const Resolution r = tilting_resolution(*cat, side, v);
        const Linearity lin = is_linear(r.complex, ModuleClass::Tilting, *cat);
        if (!lin.linear) {
          rep.witness = Nonlinearity{what, lin.witness, ""};
          return rep;
        }
      } catch (const Error& e) {
        rep.witness = Nonlinearity{what, std::nullopt, e.what()};
        return rep;
      }
    }
  rep.balanced = true;
  return rep;
}

std::string verdict_name(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Isomorphic:
      return "Isomorphic";
    case IsoVerdict::NotIsomorphic:
      return "NotIsomorphic";
    case IsoVerdict::Inconclusive:
      break;
  }
  return "Inconclusive";
}

namespace {

// Image of a generator word: w[0] * w[1] * ... with the last factor first.
Vector word_image(const GradedAlgebra& b, const std::vector<Vector>& images, const Word& w) {
  Vector x = images[static_cast<size_t>(w.back())];
  for (auto it = w.rbegin() + 1; it != w.rend(); ++it) x = b.multiply(images[static_cast<size_t>(*it)], x);
  return x;
}

}  // namespace

std::optional<Matrix> verify_isomorphism(const AlgebraPtr& a, const AlgebraPtr& b, const std::vector<int>& vertex_map,
                                         const std::vector<Vector>& generator_images) {
  if (a->dim() != b->dim() || a->field() != b->field()) return std::nullopt;
  const Index n = a->dim();
  Matrix phi = zero_matrix(n, n);
  for (int i = 0; i < a->dim(); ++i) {
    if (a->is_idempotent(i)) continue;
    Vector col = zero_vector(n);
    for (const WordTerm& t : a->word_expansion(i)) col += t.coeff * word_image(*b, generator_images, t.word);
    phi.col(i) = col;
  }
  for (int v = 0; v < a->num_vertices(); ++v)
    phi.col(a->idempotent(v)) = b->unit(b->idempotent(vertex_map[static_cast<size_t>(v)]));
  if (rank(phi) != n) return std::nullopt;
  for (int i = 0; i < a->dim(); ++i)
    for (int j = 0; j < a->dim(); ++j) {
      if (a->element(i).source != a->element(j).target) continue;
      Vector lhs = zero_vector(n);
      for (const auto& [k, c] : a->product(i, j)) lhs += c * phi.col(k);
      if (lhs != b->multiply(phi.col(i), phi.col(j))) return std::nullopt;
    }
  return phi;
}

namespace {

using CellKey = std::tuple<int, int, int>;

std::map<CellKey, int> table_of(const AlgebraPtr& a, IsoMode mode) {
  std::map<CellKey, int> t;
  for (const auto& [k, d] : a->graded_dims()) {
    auto [s, tt, deg] = k;
    t[{s, tt, mode == IsoMode::Graded ? deg : 0}] += d;
  }
  return t;
}

std::uint64_t content_hash(const AlgebraPtr& a, std::uint64_t h) {
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(a->dim()));
  mix(a->field().characteristic());
  for (const auto& [k, d] : a->graded_dims()) {
    mix(static_cast<std::uint64_t>(std::get<0>(k)));
    mix(static_cast<std::uint64_t>(std::get<1>(k)));
    mix(static_cast<std::uint64_t>(std::get<2>(k) + 1000));
    mix(static_cast<std::uint64_t>(d));
  }
  return h;
}

// All vertex bijections sigma with table_a(s, t) == table_b(sigma s, sigma t).
void bijections(const std::map<CellKey, int>& ta, const std::map<CellKey, int>& tb, int n, std::vector<int>& sigma,
                std::vector<bool>& used, std::vector<std::vector<int>>& out) {
  const int k = static_cast<int>(sigma.size());
  if (k == n) {
    out.push_back(sigma);
    return;
  }
  auto cell = [](const std::map<CellKey, int>& t, int s, int u) {
    std::map<int, int> r;
    for (auto it = t.lower_bound({s, u, INT32_MIN}); it != t.end() && std::get<0>(it->first) == s && std::get<1>(it->first) == u;
         ++it)
      if (it->second) r[std::get<2>(it->first)] = it->second;
    return r;
  };
  for (int c = 0; c < n; ++c) {
    if (used[static_cast<size_t>(c)]) continue;
    bool ok = true;
    for (int p = 0; p <= k && ok; ++p) {
      const int q = p == k ? c : sigma[static_cast<size_t>(p)];
      ok = cell(ta, k, p) == cell(tb, c, q) && cell(ta, p, k) == cell(tb, q, c);
    }
    if (!ok) continue;
    sigma.push_back(c);
    used[static_cast<size_t>(c)] = true;
    bijections(ta, tb, n, sigma, used, out);
    used[static_cast<size_t>(c)] = false;
    sigma.pop_back();
  }
}

std::string cell_text(const CellKey& k, IsoMode mode) {
  std::string s = "(" + std::to_string(std::get<0>(k)) + " -> " + std::to_string(std::get<1>(k));
  if (mode == IsoMode::Graded) s += ", degree " + std::to_string(std::get<2>(k));
  return s + ")";
}

}  // namespace

IsoResult graded_iso_check(const AlgebraPtr& a, const AlgebraPtr& b, IsoMode mode, int max_attempts) {
  IsoResult res;
  auto fail = [&res](IsoVerdict v, std::string why) {
    res.verdict = v;
    res.certificate = std::move(why);
    return res;
  };
  if (a->field() != b->field()) return fail(IsoVerdict::NotIsomorphic, "different fields");
  if (a->dim() != b->dim())
    return fail(IsoVerdict::NotIsomorphic,
                "dimension " + std::to_string(a->dim()) + " vs " + std::to_string(b->dim()));
  if (a->num_vertices() != b->num_vertices())
    return fail(IsoVerdict::NotIsomorphic, std::to_string(a->num_vertices()) + " vs " +
                                               std::to_string(b->num_vertices()) + " vertices");
  if (mode == IsoMode::Graded) {
    std::map<int, int> da, db;
    for (int i = 0; i < a->dim(); ++i) ++da[a->element(i).degree];
    for (int i = 0; i < b->dim(); ++i) ++db[b->element(i).degree];
    for (const auto& [d, c] : da)
      if (db[d] != c)
        return fail(IsoVerdict::NotIsomorphic, "degree " + std::to_string(d) + ": dimension " + std::to_string(c) +
                                                   " vs " + std::to_string(db[d]));
    for (const auto& [d, c] : db)
      if (da[d] != c)
        return fail(IsoVerdict::NotIsomorphic, "degree " + std::to_string(d) + ": dimension " + std::to_string(da[d]) +
                                                   " vs " + std::to_string(c));
  }
  const int n = a->num_vertices();
  const auto ta = table_of(a, mode), tb = table_of(b, mode);
  std::vector<std::vector<int>> sigmas;
  {
    std::vector<int> sigma;
    std::vector<bool> used(static_cast<size_t>(n), false);
    bijections(ta, tb, n, sigma, used, sigmas);
  }
  if (sigmas.empty()) {
    // name a cell of a with no counterpart under the identity labeling
    for (const auto& [k, d] : ta) {
      auto it = tb.find(k);
      if (it == tb.end() || it->second != d)
        return fail(IsoVerdict::NotIsomorphic, "no vertex bijection matches the dimension tables; cell " +
                                                   cell_text(k, mode) + " has dimension " + std::to_string(d) +
                                                   " vs " + std::to_string(it == tb.end() ? 0 : it->second));
    }
    return fail(IsoVerdict::NotIsomorphic, "no vertex bijection matches the dimension tables");
  }

  const auto& ga = a->generators();
  const auto& gb = b->generators();
  auto key = [mode](const Generator& g, int s, int t) { return CellKey{s, t, mode == IsoMode::Graded ? g.degree : 0}; };
  std::mt19937_64 rng(content_hash(b, content_hash(a, 1469598103934665603ULL)));
  std::uniform_int_distribution<long> coeff(-3, 3);
  const Field& field = b->field();
  bool generators_matched = false;

  for (const auto& sigma : sigmas) {
    // generator blocks of a and their counterparts in b
    std::map<CellKey, std::vector<int>> block_a, block_b;
    for (size_t g = 0; g < ga.size(); ++g)
      block_a[key(ga[g], sigma[static_cast<size_t>(ga[g].source)], sigma[static_cast<size_t>(ga[g].target)])].push_back(
          static_cast<int>(g));
    for (size_t g = 0; g < gb.size(); ++g) block_b[key(gb[g], gb[g].source, gb[g].target)].push_back(static_cast<int>(g));
    bool counts = block_a.size() == block_b.size();
    for (const auto& [k, gs] : block_a) counts = counts && block_b.count(k) && block_b[k].size() == gs.size();
    if (!counts) continue;
    generators_matched = true;
    for (int attempt = 0; attempt <= max_attempts; ++attempt) {
      ++res.attempts;
      std::vector<Vector> images(ga.size(), zero_vector(b->dim()));
      for (const auto& [k, gs] : block_a) {
        const auto& hs = block_b[k];
        for (size_t r = 0; r < gs.size(); ++r)
          for (size_t c = 0; c < hs.size(); ++c) {
            const Scalar m = attempt == 0 ? (r == c ? field.one() : field.zero()) : field.from_int(coeff(rng));
            if (!m.is_zero()) images[static_cast<size_t>(gs[r])] += m * gb[static_cast<size_t>(hs[c])].element;
          }
      }
      if (verify_isomorphism(a, b, sigma, images)) {
        res.verdict = IsoVerdict::Isomorphic;
        res.vertex_map = sigma;
        res.generator_images = std::move(images);
        return res;
      }
    }
  }
  if (!generators_matched)
    return fail(IsoVerdict::NotIsomorphic,
                "no vertex bijection matches the generator counts of rad/rad^2 per vertex pair");
  return fail(IsoVerdict::Inconclusive, "no isomorphism found in " + std::to_string(res.attempts) + " attempts");
}

}  // namespace qha
