#include "qha/errors.hpp"
#include "qha/linalg.hpp"
#include "qha/module.hpp"
#include "qha/structural.hpp"

#include <doctest.h>

#include <random>

using namespace qha;

namespace {

AlgebraPtr ex24_algebra() {
  static const AlgebraPtr a = build_algebra(corpus("ex24(3)"));
  return a;
}

// Same module in a random slot-preserving basis: actions become U^-1 X U.
GradedModule scramble(const GradedModule& m, std::mt19937& rng) {
  const Field& f = m.field();
  std::uniform_int_distribution<int> entry(-2, 2);
  Matrix u = zero_matrix(m.dim(), m.dim());
  for (const auto& s : m.support()) {
    const auto& idx = m.indices(s);
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Matrix b;
    do {
      b = zero_matrix(k, k);
      for (Eigen::Index r = 0; r < k; ++r)
        for (Eigen::Index c = 0; c < k; ++c) b(r, c) = f.from_int(entry(rng));
    } while (rank(b) < k);
    for (Eigen::Index r = 0; r < k; ++r)
      for (Eigen::Index c = 0; c < k; ++c) u(idx[r], idx[c]) = b(r, c);
  }
  const Matrix uinv = *solve(u, identity_matrix(m.dim(), f));
  std::vector<Matrix> actions;
  for (size_t g = 0; g < m.algebra()->generators().size(); ++g)
    actions.push_back(mul(mul(uinv, m.action(static_cast<int>(g))), u));
  return GradedModule(m.algebra(), m.slots(), actions);
}

int total_dim(const DimMap& d) {
  int s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

}  // namespace

TEST_CASE("shifts") {
  const auto a = ex24_algebra();
  const Catalog cat = Catalog::basics(a);
  const GradedModule& p1 = cat.projective(0);
  CHECK(shift(p1, 0) == p1);
  CHECK(shift(shift(p1, 2), -2) == p1);
  const GradedModule l = shift(cat.simple(0), 1);
  CHECK(l.dims() == DimMap{{{0, -1}, 1}});
}

TEST_CASE("projective modules of ex24") {
  const auto a = ex24_algebra();
  // paths starting at vertex 1: e1, the three a_i, the nine b_j a_i
  CHECK(projective_module(a, 0).dims() == DimMap{{{0, 0}, 1}, {{1, 1}, 3}, {{0, 2}, 9}});
  CHECK(projective_module(a, 1).dims() == DimMap{{{1, 0}, 1}, {{0, 1}, 3}});
  for (int v = 0; v < 2; ++v) {
    CHECK(projective_module(a, v).satisfies_relations());
    CHECK(injective_module(a, v).satisfies_relations());
  }
}

TEST_CASE("hom spaces") {
  const auto a = ex24_algebra();
  const Catalog cat(a);
  std::vector<GradedModule> ms;
  for (int v = 0; v < 2; ++v)
    for (auto c : {ModuleClass::Simple, ModuleClass::Projective, ModuleClass::Injective, ModuleClass::Standard,
                   ModuleClass::Costandard, ModuleClass::Tilting})
      ms.push_back(cat.get(c, v));
  // projectivity: hom(P(v), M) is evaluation at the top generator
  for (const auto& m : ms)
    for (int v = 0; v < 2; ++v)
      for (int j = -2; j <= 2; ++j) CHECK(hom_dim(cat.projective(v), m, j) == shift(m, j).dim_at({v, 0}));
  CHECK(hom_dim(cat.simple(0), cat.simple(0), 0) == 1);
  for (int i = -3; i <= 0; ++i) CHECK(hom_dim(cat.tilting(0), cat.tilting(1), i) == 0);
  // every basis map is a homomorphism
  for (const auto& f : hom_basis(cat.tilting(1), cat.tilting(1), 0)) CHECK(f.is_homomorphism());

  // duality: hom(M, N<j>) = hom(D(N)<-j>, D(M))
  for (size_t x = 0; x < ms.size(); x += 3)
    for (size_t y = 1; y < ms.size(); y += 2)
      for (int j = -2; j <= 2; ++j)
        CHECK(hom_dim(ms[x], ms[y], j) == hom_dim(shift(dual_module(ms[y]), -j), dual_module(ms[x]), 0));
}

TEST_CASE("kernels, images and cokernels") {
  const auto a = ex24_algebra();
  const Catalog cat(a);
  const GradedModule& t2 = cat.tilting(1);
  auto id = map_spaces(identity_map(t2));
  CHECK(id.kernel.module.dim() == 0);
  CHECK(id.cokernel.module.dim() == 0);
  auto z = map_spaces(zero_map(t2, cat.projective(0)));
  CHECK(z.kernel.module.dims() == t2.dims());
  CHECK(z.cokernel.module.dims() == cat.projective(0).dims());

  // T(2) -> T(1)<1>^3: the cokernel of Delta(2) -> T(2)
  const auto co = map_spaces(cat.standard_inclusion(1)).cokernel;
  CHECK(co.module.dims() == DimMap{{{0, -1}, 3}});
  const auto spaces = map_spaces(co.projection);
  CHECK(spaces.kernel.module.dims() == DimMap{{{1, 0}, 1}, {{0, 1}, 3}});
  CHECK(isomorphic(spaces.kernel.module, cat.standard(1)));

  // random maps: rank-nullity per slot and f = inclusion o corestriction
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto basis = hom_basis(cat.projective(0), t2, trial % 3 - 1);
    if (basis.empty()) continue;
    ModuleMap f = zero_map(basis[0].source, basis[0].target);
    for (const auto& b : basis) f.matrix += a->field().from_int(static_cast<int>(rng() % 5) - 2) * b.matrix;
    const auto s = map_spaces(f);
    CHECK(s.kernel.inclusion.is_homomorphism());
    CHECK(s.corestriction.is_homomorphism());
    CHECK(s.cokernel.projection.is_homomorphism());
    CHECK(compose(s.image.inclusion, s.corestriction).matrix == f.matrix);
    for (const auto& slot : f.source.support())
      CHECK(s.kernel.module.dim_at(slot) + s.image.module.dim_at(slot) == f.source.dim_at(slot));
    CHECK(is_zero(Matrix(mul(s.cokernel.projection.matrix, f.matrix))));
  }
}

TEST_CASE("top, radical and socle") {
  const auto a = ex24_algebra();
  const Catalog cat(a);
  for (int v = 0; v < 2; ++v) CHECK(isomorphic(top_rad_socle(cat.projective(v)).top.module, cat.simple(v)));
  CHECK(top_rad_socle(cat.tilting(1)).socle.module.dims() == DimMap{{{0, 1}, 3}});
  const auto ss = build_algebra(semisimple(2));
  const auto m = direct_sum(ss, {simple_module(ss, 0), shift(simple_module(ss, 1), 2)}).module;
  CHECK(top_rad_socle(m).top.module.dims() == m.dims());
  CHECK(top_rad_socle(m).radical.module.dim() == 0);
}

TEST_CASE("projective covers and injective envelopes") {
  const auto a = ex24_algebra();
  const Catalog cat(a);
  for (int v = 0; v < 2; ++v) {
    const auto c = projective_cover(cat.simple(v));
    CHECK(c.summands == std::vector<ShiftedIndex>{{v, 0}});
    CHECK(c.map.is_homomorphism());
  }
  const auto c = projective_cover(cat.standard(1));
  CHECK(c.summands == std::vector<ShiftedIndex>{{1, 0}});
  CHECK(rank(c.map.matrix) == c.map.matrix.rows());
  CHECK(rank(c.map.matrix) == c.map.matrix.cols());

  const auto t = projective_cover(cat.tilting(1));
  CHECK(t.summands.size() == 3);
  CHECK(rank(t.map.matrix) == cat.tilting(1).dim());
  CHECK(t.map.is_homomorphism());

  const auto chain = build_algebra(directed_chain(2));
  const auto e = injective_envelope(simple_module(chain, 0));
  CHECK(e.summands == std::vector<ShiftedIndex>{{0, 0}});
  CHECK(e.sum.module.dims() == simple_module(chain, 0).dims());
  const auto e2 = injective_envelope(cat.tilting(1));
  CHECK(e2.map.is_homomorphism());
  CHECK(rank(e2.map.matrix) == cat.tilting(1).dim());
  CHECK(e2.summands.size() == 3);
}

TEST_CASE("duality") {
  const auto a = ex24_algebra();
  const auto op = opposite(a);
  const GradedModule l = simple_module(a, 0);
  CHECK(dual_module(l).dims() == l.dims());
  CHECK(dual_module(l).algebra() == op);
  for (int v = 0; v < 2; ++v) {
    const GradedModule p = projective_module(a, v);
    CHECK(isomorphic(dual_module(p), injective_module(op, v)));
    CHECK(dual_module(dual_module(p)) == p);
  }
}

TEST_CASE("decomposition") {
  const auto a = ex24_algebra();
  const Catalog cat(a);
  const auto two = direct_sum(a, {cat.simple(0), shift(cat.simple(0), 3)}).module;
  auto parts = decompose(two);
  REQUIRE(parts.size() == 2);
  std::vector<int> shifts;
  for (const auto& p : parts) shifts.push_back(*isomorphic_shift(p.module, cat.simple(0)));
  std::sort(shifts.begin(), shifts.end());
  CHECK(shifts == std::vector<int>{0, 3});

  CHECK(decompose(cat.projective(0)).size() == 1);
  CHECK(is_indecomposable(cat.tilting(1)));

  const auto t13 = direct_sum(a, {shift(cat.tilting(0), 1), shift(cat.tilting(0), 1), shift(cat.tilting(0), 1)});
  parts = decompose(t13.module);
  REQUIRE(parts.size() == 3);
  for (const auto& p : parts) CHECK(isomorphic_shift(p.module, cat.tilting(0)) == 1);

  // multiplicities survive a random change of basis
  std::mt19937 rng(11);
  const auto mixed = direct_sum(a, {cat.tilting(1), shift(cat.projective(1), -1), cat.tilting(1), cat.simple(0)});
  for (int trial = 0; trial < 3; ++trial) {
    const GradedModule m = scramble(mixed.module, rng);
    CHECK(m.satisfies_relations());
    parts = decompose(m);
    REQUIRE(parts.size() == 4);
    int t2 = 0, p2 = 0, l1 = 0, sum = 0;
    for (const auto& p : parts) {
      sum += p.module.dim();
      CHECK(p.inclusion.is_homomorphism());
      CHECK(p.projection.is_homomorphism());
      CHECK(compose(p.projection, p.inclusion).matrix == identity_matrix(p.module.dim(), a->field()));
      if (isomorphic_shift(p.module, cat.tilting(1)) == 0) ++t2;
      if (isomorphic_shift(p.module, cat.projective(1)) == -1) ++p2;
      if (isomorphic_shift(p.module, cat.simple(0)) == 0) ++l1;
    }
    CHECK(sum == m.dim());
    CHECK(t2 == 2);
    CHECK(p2 == 1);
    CHECK(l1 == 1);
  }
  CHECK(total_dim(mixed.module.dims()) == mixed.module.dim());
}

TEST_CASE("universal extensions") {
  const auto a = ex24_algebra();
  const Catalog cat = Catalog::basics(a);
  // Ext^1(L(1)<d>, Delta(2)) is three-dimensional at d = 1 and zero elsewhere
  const auto ext = extension_classes(cat.simple(0), cat.standard(1));
  CHECK(ext.classes.size() == 3);
  CHECK(ext.dim_at(1) == 3);
  const auto u = universal_extension(cat.simple(0), cat.standard(1));
  CHECK(u.module.dims() == DimMap{{{0, -1}, 3}, {{1, 0}, 1}, {{0, 1}, 3}});
  CHECK(u.inclusion.is_homomorphism());
  CHECK(extension_classes(cat.simple(0), u.module).classes.empty());
}
