#include "qha/errors.hpp"
#include "qha/report.hpp"

#include <doctest.h>

using namespace qha;

namespace {

const Verdict& find(const std::vector<Verdict>& vs, const std::string& claim) {
  for (const auto& v : vs)
    if (v.claim == claim) return v;
  FAIL("no verdict " << claim);
  return vs.front();
}

AnalysisReport without_timings(AnalysisReport r) {
  r.timings.clear();
  return r;
}

}  // namespace

TEST_CASE("ex25 does not satisfy the hypothesis") {
  const auto a = build_algebra(corpus("ex25"));
  const auto r = verify_theorem1(a);
  CHECK_FALSE(r.passed());
  const Verdict& hyp = find(r.theorem1, "hypothesis");
  CHECK(hyp.status == Status::Fail);
  CHECK(hyp.witness.at("summand").at("class") == "T");
  CHECK(hyp.witness.at("summand").at("vertex") == "1");
  CHECK(hyp.witness.at("summand").at("shift") == 0);
  CHECK(hyp.witness.at("position") == 1);
  CHECK(find(r.verdicts, "standard_koszul").status == Status::Pass);
  for (size_t k = 1; k < r.theorem1.size(); ++k) CHECK(r.theorem1[k].status == Status::Skipped);
}

TEST_CASE("semisimple algebras pass every duality claim") {
  const auto r = verify_theorem1(build_algebra(semisimple(2)));
  CHECK(r.passed());
  CHECK(r.theorem1.size() == 5);
  for (const auto& v : r.theorem1) CHECK(v.status == Status::Pass);
}

TEST_CASE("duality claims for a small balanced algebra") {
  const auto r = verify_theorem1(build_algebra(corpus("ex24(1)")));
  CHECK(r.passed());
  const Verdict& iv = r.theorem1.back();
  CHECK(iv.status == Status::Pass);
  const auto& iso = iv.witness.at("R(E(A)) -> E(R(A))");
  CHECK(iso.at("verdict") == "Isomorphic");
  CHECK(iso.at("vertex_map").size() == 2);
  CHECK(r.duals.size() == 2);
}

TEST_CASE("reports round trip through json") {
  for (const char* name : {"ex25", "directed_chain(2)"}) {
    const auto a = build_algebra(corpus(name));
    for (const auto& r : {analyze(a), verify_theorem1(a)}) {
      const auto j = to_json(r);
      CHECK(j.at("schema") == 1);
      CHECK(report_from_json(j) == r);
      CHECK(report_from_json(nlohmann::json::parse(j.dump())) == r);
    }
  }
  auto j = to_json(analyze(build_algebra(semisimple(1))));
  j["schema"] = 2;
  CHECK_THROWS_AS(report_from_json(j), std::invalid_argument);
  j.erase("schema");
  CHECK_THROWS_AS(report_from_json(j), std::invalid_argument);
}

TEST_CASE("reports are deterministic") {
  const auto a = build_algebra(corpus("ex24(2)"));
  const auto x = without_timings(verify_theorem1(a));
  const auto y = without_timings(verify_theorem1(build_algebra(corpus("ex24(2)"))));
  CHECK(x == y);
  CHECK(to_json(x).dump() == to_json(y).dump());
}

TEST_CASE("every failed verdict carries a witness") {
  for (const char* name : {"ex25", "ex25_ringel_target"}) {
    const auto r = analyze(build_algebra(corpus(name)));
    for (const Verdict* v : r.all())
      if (v->status == Status::Fail) {
        CHECK_FALSE(v->witness.is_null());
        CHECK_FALSE(v->detail.empty());
      }
  }
  const auto t = analyze(build_algebra(corpus("ex25_ringel_target")));
  CHECK(find(t.verdicts, "koszul").status == Status::Fail);
}

TEST_CASE("analysis of ex25") {
  const auto r = analyze(build_algebra(corpus("ex25")));
  CHECK(find(r.verdicts, "quasi_hereditary(natural)").status == Status::Pass);
  CHECK(find(r.verdicts, "balanced").status == Status::Fail);
  REQUIRE(r.duals.size() == 2);
  CHECK(r.duals[0].kind == "ringel");
  CHECK_FALSE(r.duals[0].presentation.has_value());
  CHECK(r.duals[0].vertex_map == std::vector<std::string>{"3", "2", "1"});
  CHECK(r.duals[1].presentation.has_value());
}

TEST_CASE("closure under truncation, sums and tensor products") {
  const auto r = verify_closure(build_algebra(corpus("ex24(2)")), build_algebra(directed_chain(2)));
  CHECK(r.passed());
  for (const char* claim : {"truncate", "direct_sum", "tensor"}) CHECK(find(r.closure, claim).status == Status::Pass);

  const auto chains = verify_closure(build_algebra(directed_chain(2)), build_algebra(directed_chain(2)));
  CHECK(chains.passed());

  const auto only = verify_closure(build_algebra(semisimple(1)));
  CHECK(find(only.closure, "truncate").status == Status::Skipped);
  CHECK(find(only.closure, "tensor").status == Status::Skipped);

  const auto bad = verify_closure(build_algebra(corpus("ex25")));
  CHECK_FALSE(bad.passed());
  CHECK(find(bad.closure, "truncate").status == Status::Skipped);
}

TEST_CASE("single checks") {
  const auto a = build_algebra(corpus("ex25"));
  CHECK(check(a, "qh").status == Status::Pass);
  CHECK(check(a, "koszul").status == Status::Pass);
  CHECK(check(a, "standard-koszul").status == Status::Pass);
  CHECK(check(a, "balanced").status == Status::Fail);
  CHECK_THROWS_AS(check(a, "tame"), std::invalid_argument);
}

TEST_CASE("text rendering") {
  const auto text = render_text(verify_theorem1(build_algebra(corpus("ex25"))));
  CHECK(text.find("hypothesis fails") != std::string::npos);
  CHECK(text.find("T(1) at position 1") != std::string::npos);
  CHECK(text.substr(text.size() - 5) == "FAIL\n");
}
