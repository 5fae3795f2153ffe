#include "qha/duality.hpp"
#include "qha/errors.hpp"

#include <doctest.h>

using namespace qha;

namespace {

// sum over l, m of dim hom(T(l), T(m)<j>), keyed by j
std::map<int, int> tilting_hom_dims(const Catalog& cat) {
  std::map<int, int> d;
  for (int l = 0; l < cat.size(); ++l)
    for (int m = 0; m < cat.size(); ++m)
      for (int j = -8; j <= 8; ++j)
        if (int k = hom_dim(cat.tilting(l), cat.tilting(m), j)) d[j] += k;
  return d;
}

std::map<int, int> degree_map(const AlgebraPtr& a) {
  std::map<int, int> d;
  for (int i = 0; i < a->dim(); ++i) ++d[a->element(i).degree];
  return d;
}

AlgebraPtr named(const char* name) { return build_algebra(corpus(name)); }

}  // namespace

TEST_CASE("ringel dual dimensions come from tilting hom spaces") {
  for (const char* name : {"ex24(3)", "ex25", "directed_chain(3)"}) {
    const auto a = named(name);
    const auto r = ringel_dual(a);
    CHECK(degree_map(r.algebra) == tilting_hom_dims(Catalog(a)));
    CHECK(is_associative(*r.algebra));
    CHECK(r.vertex_map.size() == static_cast<size_t>(a->num_vertices()));
  }
  const auto r24 = ringel_dual(named("ex24(3)"));
  CHECK(r24.algebra->dim() == 17);
  CHECK(r24.algebra->degree_dims() == std::vector<int>{2, 6, 9});
  CHECK(r24.vertex_map == std::vector<int>{1, 0});
  CHECK(r24.order == Order::Natural);
}

TEST_CASE("koszul dual dimensions come from ext groups") {
  const auto a = named("ex24(2)");
  const auto e = koszul_dual(a);
  std::map<int, int> expect;
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m)
      for (int i = 0; i <= 2; ++i)
        for (int j = -4; j <= 4; ++j)
          if (int k = ext_dim(simple_module(a, l), simple_module(a, m), i, j)) expect[i] += k;
  CHECK(degree_map(e.algebra) == expect);
  CHECK(is_associative(*e.algebra));
  CHECK(e.order.has_value());
  const auto e3 = koszul_dual(named("ex24(3)"));
  CHECK(e3.algebra->degree_dims() == std::vector<int>{2, 6, 9});
  CHECK(grading_diagnostics(e3.algebra).quadratic);
}

TEST_CASE("semisimple algebras are self dual") {
  for (int n = 1; n <= 3; ++n) {
    const auto s = build_algebra(semisimple(n));
    CHECK(graded_iso_check(ringel_dual(s).algebra, s).verdict == IsoVerdict::Isomorphic);
    CHECK(graded_iso_check(koszul_dual(s).algebra, s).verdict == IsoVerdict::Isomorphic);
  }
}

TEST_CASE("ex24 and ex25 verdicts") {
  const auto a = named("ex24(3)");
  const auto k = koszulity_checks(a);
  CHECK(k.koszul);
  CHECK(k.standard_koszul);
  CHECK(is_balanced(a).balanced);

  const auto b = named("ex25");
  const auto kb = koszulity_checks(b);
  CHECK(kb.standard_koszul);
  const auto bal = is_balanced(b);
  CHECK_FALSE(bal.balanced);
  REQUIRE(bal.witness);
  REQUIRE(bal.witness->at);
  CHECK(bal.witness->text(b->vertex_labels()) == "tilting coresolution of Delta(3): T(1) at position 1");

  const auto t = named("ex25_ringel_target");
  const auto kt = koszulity_checks(t);
  CHECK_FALSE(kt.koszul);
  REQUIRE(kt.koszul_witness);
  CHECK_FALSE(grading_diagnostics(t).quadratic);
}

TEST_CASE("ringel dual of ex25") {
  const auto r = ringel_dual(named("ex25"));
  const auto t = named("ex25_ringel_target");
  CHECK_FALSE(grading_diagnostics(r.algebra).positively_graded);
  const auto iso = graded_iso_check(r.algebra, t, IsoMode::Ungraded);
  CHECK(iso.verdict == IsoVerdict::Isomorphic);
  REQUIRE(iso.vertex_map.size() == 3);
  const auto phi = verify_isomorphism(r.algebra, t, iso.vertex_map, iso.generator_images);
  CHECK(phi.has_value());
  // the hub of R is the top vertex 3 of ex25, which is vertex 3 of the target
  CHECK(iso.vertex_map[0] == 2);
  CHECK(graded_iso_check(r.algebra, t, IsoMode::Graded).verdict == IsoVerdict::NotIsomorphic);
}

TEST_CASE("isomorphism check certificates") {
  const auto a = named("ex24(3)");
  const auto same = graded_iso_check(a, a);
  CHECK(same.verdict == IsoVerdict::Isomorphic);
  CHECK(same.attempts == 1);
  CHECK(same.vertex_map == std::vector<int>{0, 1});

  const auto no = graded_iso_check(a, build_algebra(semisimple(2)));
  CHECK(no.verdict == IsoVerdict::NotIsomorphic);
  CHECK(no.certificate == "dimension 17 vs 2");

  // equal graded dimensions, different generators
  const auto cube = build_algebra(parse_presentation("algebra c\nfield Q\nvertices 1\narrow x : 1 -> 1\nrelations x*x*x\n"));
  const auto two = build_algebra(parse_presentation(
      "algebra d\nfield Q\nvertices 1\narrow x : 1 -> 1\narrow y : 1 -> 1 deg 2\nrelations x*x; x*y; y*x; y*y\n"));
  REQUIRE(cube->degree_dims() == two->degree_dims());
  const auto gen = graded_iso_check(cube, two);
  CHECK(gen.verdict == IsoVerdict::NotIsomorphic);
  CHECK(gen.certificate.find("generator") != std::string::npos);

  // same quiver listed in the other order
  const auto chain = build_algebra(directed_chain(3));
  const auto reversed = build_algebra(parse_presentation(
      "algebra r\nfield Q\nvertices 3 2 1\narrow a1 : 1 -> 2\narrow a2 : 2 -> 3\n"));
  const auto perm = graded_iso_check(chain, reversed);
  CHECK(perm.verdict == IsoVerdict::Isomorphic);
  CHECK(perm.vertex_map == std::vector<int>{2, 1, 0});
}

TEST_CASE("isomorphism search is deterministic") {
  const auto a = named("ex24(2)");
  const auto e = koszul_dual(koszul_dual(a).algebra).algebra;
  const auto x = graded_iso_check(e, a);
  const auto y = graded_iso_check(e, a);
  CHECK(x.verdict == IsoVerdict::Isomorphic);
  CHECK(x.attempts == y.attempts);
  CHECK(x.generator_images == y.generator_images);
}

TEST_CASE("double duals") {
  for (const char* name : {"ex24(1)", "ex24(2)", "directed_chain(3)", "ex25"}) {
    const auto a = named(name);
    const std::string label = name;
    CAPTURE(label);
    const auto rr = ringel_dual(ringel_dual(a).algebra);
    CHECK(graded_iso_check(rr.algebra, a).verdict == IsoVerdict::Isomorphic);
    if (koszulity_checks(a).koszul) {
      const auto ee = koszul_dual(koszul_dual(a).algebra);
      CHECK(graded_iso_check(ee.algebra, a).verdict == IsoVerdict::Isomorphic);
    }
  }
}

TEST_CASE("duals of balanced algebras") {
  for (const char* name : {"ex24(1)", "ex24(2)", "directed_chain(2)", "directed_chain(3)", "semisimple(2)"}) {
    const std::string label = name;
    CAPTURE(label);
    const auto a = named(name);
    REQUIRE(is_balanced(a).balanced);
    const auto r = ringel_dual(a);
    const auto e = koszul_dual(a);
    REQUIRE(e.order);
    CHECK(grading_diagnostics(r.algebra).positively_graded);
    CHECK(is_balanced(r.algebra, *r.order).balanced);
    CHECK(is_balanced(e.algebra, *e.order).balanced);
    // E(R(A)) keeps the vertices of R(A), listed from the top of A's order
    // down, so A's natural order is its opposite order
    const auto er = koszul_dual(r.algebra);
    CHECK(is_quasi_hereditary(er.algebra, Order::Opposite).quasi_hereditary);
    CHECK(is_balanced(er.algebra, Order::Opposite).balanced);
    const auto re = ringel_dual(e.algebra, *e.order);
    CHECK(is_balanced(re.algebra, *re.order).balanced);
    CHECK(graded_iso_check(re.algebra, er.algebra).verdict == IsoVerdict::Isomorphic);
  }
}

TEST_CASE("balanced exactly when the ringel dual is positively graded") {
  for (const char* name : {"ex24(2)", "ex25", "directed_chain(3)"}) {
    const std::string label = name;
    CAPTURE(label);
    const auto a = named(name);
    REQUIRE(koszulity_checks(a).standard_koszul);
    CHECK(is_balanced(a).balanced == grading_diagnostics(ringel_dual(a).algebra).positively_graded);
  }
}

TEST_CASE("non quasi-hereditary input") {
  const auto loop = build_algebra(parse_presentation("algebra l\nfield Q\nvertices 1\narrow x : 1 -> 1\nrelations x*x\n"));
  CHECK_THROWS_AS(ringel_dual(loop), NotQuasiHereditary);
  const auto b = is_balanced(loop);
  CHECK_FALSE(b.balanced);
  REQUIRE(b.witness);
  CHECK_FALSE(b.witness->at);
  const auto k = koszulity_checks(loop);
  CHECK_FALSE(k.standard_koszul);
  CHECK_THROWS_AS(koszul_dual(loop), CapExceeded);
}
