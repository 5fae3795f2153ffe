#include "qha/algebra.hpp"
#include "qha/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qha;

namespace {

// Brute-force count of paths in a quiver with monomial relations: a path
// survives when no relation word occurs in it as a contiguous block.
DimTable monomial_path_dims(const QuiverPresentation& p, int max_length) {
  DimTable dims;
  for (int v = 0; v < p.num_vertices(); ++v) dims[{v, v, 0}] = 1;
  std::vector<std::vector<int>> layer;
  for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a) layer.push_back({a});
  for (int len = 1; len <= max_length && !layer.empty(); ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      bool dead = false;
      for (const auto& r : p.relations) {
        const auto& rw = r.terms.front().word;
        if (std::search(w.begin(), w.end(), rw.begin(), rw.end()) != w.end()) dead = true;
      }
      if (dead) continue;
      ++dims[{p.word_source(w), p.word_target(w), p.word_degree(w)}];
      for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a)
        if (p.arrows[a].source == p.word_target(w)) {
          auto x = w;
          x.insert(x.begin(), a);
          next.push_back(x);
        }
    }
    layer = std::move(next);
  }
  return dims;
}

int total(const DimTable& t) {
  int s = 0;
  for (const auto& [k, v] : t) s += v;
  return s;
}

}  // namespace

TEST_CASE("graded dimensions of the corpus match path enumeration") {
  for (const char* name : {"ex24", "ex24(1)", "ex24(2)", "ex25", "ex25_ringel_target", "directed_chain(4)",
                           "semisimple(3)"}) {
    CAPTURE(name);
    const auto p = corpus(name);
    const auto a = build_algebra(p);
    CHECK(a->graded_dims() == monomial_path_dims(p, 12));
    CHECK(is_associative(*a));
  }
}

TEST_CASE("ex24 algebra") {
  const auto a = build_algebra(corpus("ex24(3)"));
  CHECK(a->dim() == 17);
  CHECK(a->degree_dims() == std::vector<int>{2, 6, 9});
  CHECK(a->generators().size() == 6);
  const auto chain = build_algebra(directed_chain(2));
  CHECK(chain->dim() == 3);
  const auto ss = build_algebra(semisimple(4));
  CHECK(ss->dim() == 4);
  CHECK(ss->degree_dims() == std::vector<int>{4});
}

TEST_CASE("non-monomial relations") {
  // commutative square: two paths 1 -> 4 identified, so A_2 is one-dimensional
  auto p = parse_presentation(
      "algebra square\nfield Q\nvertices 1 2 3 4\narrow x : 1 -> 2\narrow y : 2 -> 4\narrow u : 1 -> 3\n"
      "arrow v : 3 -> 4\nrelations\ny*x - v*u;\n");
  const auto a = build_algebra(p);
  CHECK(a->dim() == 4 + 4 + 1);
  CHECK(is_associative(*a));
  const auto& g = a->generators();
  CHECK(a->multiply(g[1].element, g[0].element) == a->multiply(g[3].element, g[2].element));

  // anticommutative version over F_3
  p.field = Field::prime(3);
  p.relations[0].terms[1].coeff = 1;
  const auto b = build_algebra(p);
  CHECK(b->dim() == 9);
  CHECK(b->multiply(b->generators()[1].element, b->generators()[0].element) ==
        -b->multiply(b->generators()[3].element, b->generators()[2].element));
}

TEST_CASE("infinite-dimensional presentations are rejected") {
  auto p = ex24(2);
  p.relations.pop_back();
  p.relations.pop_back();
  p.relations.pop_back();
  // only a1*b1 remains; a2*b2*a2*b2... survives forever
  try {
    build_algebra(p, 6);
    FAIL("expected NotFiniteDimensional");
  } catch (const NotFiniteDimensional& e) {
    CHECK(e.cap() == 6);
    CHECK(!e.surviving_paths().empty());
  }
}

TEST_CASE("opposite, direct sum, tensor and truncation") {
  const auto a = build_algebra(corpus("ex24(3)"));
  const auto op = opposite(a);
  CHECK(opposite(op) == a);
  CHECK(same_structure(*opposite(op), *a));
  CHECK(is_associative(*op));

  const auto s1 = build_algebra(semisimple(1));
  const auto sum = direct_sum(s1, s1);
  CHECK(same_structure(*sum, *build_algebra(semisimple(2))));

  const auto c2 = build_algebra(directed_chain(2));
  const auto t = tensor(c2, c2);
  CHECK(t->dim() == 9);
  CHECK(t->num_vertices() == 4);
  CHECK(is_associative(*t));
  // graded dimensions convolve: (2,1) * (2,1) = (4,4,1)
  CHECK(t->degree_dims() == std::vector<int>{4, 4, 1});
  CHECK(direct_sum(a, c2)->dim() == a->dim() + c2->dim());

  const auto tr = truncate(a, 1);
  CHECK(tr->dim() == 1);
  CHECK(tr->num_vertices() == 1);
  CHECK_THROWS_AS(truncate(a, 0), InvalidCombination);
  const auto other = build_algebra(corpus("ex25"));
  auto f7 = ex25();
  f7.field = Field::prime(7);
  CHECK_THROWS_AS(direct_sum(other, build_algebra(f7)), InvalidCombination);

  // truncating ex25 at vertex 3 leaves the path algebra of 1 <-> 2 with ab = 0
  const auto e25 = truncate(other, 2);
  CHECK(e25->dim() == 2 + 2 + 1);
  CHECK(is_associative(*e25));
}

TEST_CASE("extracting presentations") {
  const auto a = build_algebra(corpus("ex24(3)"));
  const auto p = extract_presentation(a);
  CHECK(p.arrows.size() == 6);
  int deg2 = 0;
  for (const auto& r : p.relations) deg2 += p.relation_degree(r) == 2;
  CHECK(deg2 == 9);
  CHECK(p.relations.size() == 9);
  const auto rebuilt = build_algebra(parse_presentation(render(p)));
  CHECK(rebuilt->graded_dims() == a->graded_dims());

  const auto ss = extract_presentation(build_algebra(semisimple(3)));
  CHECK(ss.num_vertices() == 3);
  CHECK(ss.arrows.empty());
  CHECK(ss.relations.empty());

  const auto chain = extract_presentation(build_algebra(directed_chain(3)));
  CHECK(chain.arrows.size() == 2);
  CHECK(chain.relations.empty());

  for (const char* name : {"ex25", "ex25_ringel_target", "ex24(2)"}) {
    CAPTURE(name);
    const auto b = build_algebra(corpus(name));
    const auto q = extract_presentation(b);
    CHECK(build_algebra(q)->graded_dims() == b->graded_dims());
  }
  // generic algebras built from structure constants also extract
  const auto t = tensor(build_algebra(directed_chain(2)), build_algebra(directed_chain(2)));
  const auto tp = extract_presentation(t);
  CHECK(tp.arrows.size() == 4);
  CHECK(tp.relations.size() == 1);
  CHECK(build_algebra(tp)->graded_dims() == t->graded_dims());
}

TEST_CASE("grading diagnostics") {
  auto g = grading_diagnostics(build_algebra(corpus("ex24(3)")));
  CHECK(g.positively_graded);
  CHECK(g.quadratic);
  g = grading_diagnostics(build_algebra(corpus("ex25_ringel_target")));
  CHECK(g.positively_graded);
  CHECK(!g.quadratic);
  g = grading_diagnostics(build_algebra(semisimple(2)));
  CHECK(g.positively_graded);
  CHECK(g.quadratic);
  const auto a = build_algebra(directed_chain(2));
  g = grading_diagnostics(with_degrees(a, {0, 0, -1}, "negative"));
  CHECK(!g.positively_graded);
  CHECK_THROWS_AS(extract_presentation(with_degrees(a, {0, 0, 0}, "flat")), Degree0NotSemisimple);
}
