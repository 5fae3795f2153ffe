#include "qha/presentation.hpp"

#include <doctest.h>

using namespace qha;

namespace {

const char* kEx24Text = R"(# two vertices, three arrows each way
algebra ex24
field Q
vertices 1 2
arrow a1 : 1 -> 2
arrow a2 : 1 -> 2
arrow a3 : 1 -> 2
arrow b1 : 2 -> 1
arrow b2 : 2 -> 1
arrow b3 : 2 -> 1
relations
a1*b1; a1*b2; a1*b3;
a2*b1; a2*b2; a2*b3;
a3*b1; a3*b2; a3*b3;
)";

const char* kEx25Text = R"(algebra ex25
field Fp:101
vertices 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 1
arrow c : 2 -> 3
arrow d : 3 -> 2
relations
a*b; c*d
)";

ParseError parse_error(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "", "");
}

}  // namespace

TEST_CASE("parsing the worked examples") {
  const auto p = parse_presentation(kEx24Text);
  CHECK(p.num_vertices() == 2);
  CHECK(p.arrows.size() == 6);
  CHECK(p.relations.size() == 9);
  for (const auto& r : p.relations) CHECK(p.relation_degree(r) == 2);
  CHECK(p.relations == ex24(3).relations);
  CHECK(p.arrows == ex24(3).arrows);

  const auto q = parse_presentation(kEx25Text);
  CHECK(q.num_vertices() == 3);
  CHECK(q.arrows.size() == 4);
  CHECK(q.relations.size() == 2);
  CHECK(q.field == Field::prime(101));
  // a*b: b acts first, so the path runs 2 -> 1 -> 2
  CHECK(q.word_source(q.relations[0].terms[0].word) == 1);
  CHECK(q.word_target(q.relations[0].terms[0].word) == 1);

  const auto one = parse_presentation("algebra point\nfield Q\nvertices x\n");
  CHECK(one.num_vertices() == 1);
  CHECK(one.arrows.empty());
  CHECK(one.relations.empty());
}

TEST_CASE("coefficients and degree annotations") {
  const auto p = parse_presentation(
      "algebra k\nfield Q\nvertices 1 2 3\narrow x : 1 -> 2\narrow y : 2 -> 3\narrow z : 1 -> 3 deg 2\n"
      "relations\n2*y*x - 3/2 z + 1/2*z;\n");
  REQUIRE(p.relations.size() == 1);
  const auto& terms = p.relations[0].terms;
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].coeff == 2);
  CHECK(terms[1].coeff == -1);
  CHECK(p.arrows[2].degree == 2);
  const std::string text = render(p);
  CHECK(text.find("deg 2") != std::string::npos);
  CHECK(parse_presentation(text) == p);
}

TEST_CASE("render round-trips the corpus") {
  for (const char* name : {"ex24", "ex24(1)", "ex24(2)", "ex25", "ex25_ringel_target", "directed_chain(4)",
                           "semisimple(3)"}) {
    CAPTURE(name);
    const auto p = corpus(name);
    CHECK_NOTHROW(validate(p));
    CHECK(parse_presentation(render(p)) == p);
  }
  const std::string ss = render(semisimple(3));
  CHECK(ss.find("arrow") == std::string::npos);
  CHECK(ss.find("vertices 1 2 3") != std::string::npos);
}

TEST_CASE("corpus entries") {
  CHECK(corpus("ex24(3)") == corpus("ex24"));
  CHECK(corpus("ex24(3)").arrows.size() == 6);
  CHECK(corpus("ex24(3)").relations.size() == 9);
  CHECK(corpus("semisimple(2)").num_vertices() == 2);
  CHECK(corpus("semisimple(2)").arrows.empty());

  const auto t = corpus("ex25_ringel_target");
  REQUIRE(t.arrows.size() == 4);
  CHECK(t.arrows[0].source == 0);
  CHECK(t.arrows[0].target == 2);
  std::vector<int> degrees;
  for (const auto& r : t.relations) degrees.push_back(t.relation_degree(r));
  CHECK(degrees == std::vector<int>{2, 2, 4});
  CHECK_THROWS_AS(corpus("ex26"), std::invalid_argument);
  CHECK_THROWS_AS(corpus("ex24(0)"), std::invalid_argument);
}

TEST_CASE("positioned parse errors") {
  auto e = parse_error("algebra x\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\nrelations\na*b;\n");
  CHECK(e.line() == 7);
  CHECK(std::string(e.what()).find("a*b") != std::string::npos);

  e = parse_error("algebra x\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow a : 2 -> 1\n");
  CHECK(e.line() == 5);
  CHECK(e.token() == "a");

  e = parse_error("algebra x\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelations\na*b + a;\n");
  CHECK(e.line() == 7);

  e = parse_error("algebra x\nfield Q\nvertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelations\na;\n");
  CHECK(e.token() == "a");

  e = parse_error("algebra x\nfield Q\nvertices 1 2\narrow a : 1 => 2\n");
  CHECK(e.line() == 4);
  CHECK(e.token() == "=>");

  e = parse_error("algebra x\nfield Fp:7\nvertices 1 2\narrow a : 1 -> 2\narrow b : 2 -> 1\nrelations\n1/7*b*a;\n");
  CHECK(e.line() == 7);
}
