// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.  All comparisons are exact; runtime limits are in
// seconds of wall-clock time.

#include "qha/duality.hpp"
#include "qha/errors.hpp"
#include "qha/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qha;

namespace {

struct Member {
  std::string name;
  AlgebraPtr algebra;
};

Member from_corpus(const std::string& name) { return {name, build_algebra(corpus(name))}; }

std::vector<Member> balanced_members() {
  std::vector<Member> out;
  for (int m = 1; m <= 3; ++m) out.push_back(from_corpus("ex24(" + std::to_string(m) + ")"));
  for (int n = 1; n <= 4; ++n) out.push_back(from_corpus("directed_chain(" + std::to_string(n) + ")"));
  for (int n = 1; n <= 4; ++n) out.push_back(from_corpus("semisimple(" + std::to_string(n) + ")"));
  const auto chain2 = build_algebra(directed_chain(2));
  out.push_back({"ex24(1) (+) directed_chain(2)", direct_sum(build_algebra(corpus("ex24(1)")), chain2)});
  out.push_back({"directed_chain(2) (x) directed_chain(2)", tensor(chain2, chain2)});
  return out;
}

std::vector<Member> all_members() {
  auto out = balanced_members();
  out.push_back(from_corpus("ex25"));
  out.push_back(from_corpus("ex25_ringel_target"));
  return out;
}

std::optional<Order> qh_order(const AlgebraPtr& a) {
  for (Order o : {Order::Natural, Order::Opposite})
    if (is_quasi_hereditary(a, o).quasi_hereditary) return o;
  return std::nullopt;
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit, const std::function<void(Outcome&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && secs > limit) out.fail("runtime over the limit");
  if (!out.ok) ++failures;
  std::string limit_text = limit > 0 ? " (limit " + std::to_string(static_cast<int>(limit)) + " s)" : "";
  std::printf("%s %2d  %-52s exact  %7.2f s%s%s%s\n", out.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              limit_text.c_str(), out.detail.empty() ? "" : "  ", out.detail.c_str());
  std::fflush(stdout);
}

std::vector<std::string> names(const ChainComplex& c, int pos) {
  std::vector<std::string> out;
  for (const Labeled& l : c.pieces_at(pos)) out.push_back(describe(l, c.algebra->vertex_labels()));
  std::sort(out.begin(), out.end());
  return out;
}

// The same complex with every summand shifted by <internal>, moved by
// `positions` places.
ChainComplex moved(const Catalog& cat, const ChainComplex& c, int internal, int positions) {
  auto pieces = c.pieces;
  for (auto& ps : pieces)
    for (auto& l : ps) l.shift += internal;
  return labeled_complex(cat, c.lo + positions, pieces, c.d);
}

}  // namespace

int main() {
  criterion(1, "ex24(3) tilting coresolution of Delta(2)", 5, [](Outcome& o) {
    const Catalog cat(build_algebra(corpus("ex24(3)")));
    const auto r = tilting_resolution(cat, TiltingSide::CoresolveStandard, 1).complex;
    if (r.lo != 0 || r.hi() != 1) o.fail("support is not {0, 1}");
    if (names(r, 0) != std::vector<std::string>{"T(2)"}) o.fail("position 0 is not {T(2)}");
    if (names(r, 1) != std::vector<std::string>(3, "T(1)<1>")) o.fail("position 1 is not {T(1)<1> x3}");
    if (!is_linear(r, ModuleClass::Tilting, cat).linear) o.fail("not linear");
  });

  criterion(2, "ex24(3) verify theorem1, items (i)-(iv)", 60, [](Outcome& o) {
    const auto r = verify_theorem1(build_algebra(corpus("ex24(3)")));
    for (const auto& v : r.theorem1)
      if (v.status != Status::Pass) o.fail(v.claim + ": " + status_name(v.status) + " " + v.detail);
    if (r.theorem1.size() != 5) o.fail("missing items");
  });

  criterion(3, "ex25 verdicts and Ringel dual", 30, [](Outcome& o) {
    const auto a = build_algebra(corpus("ex25"));
    const auto t = build_algebra(corpus("ex25_ringel_target"));
    if (!koszulity_checks(a).standard_koszul) o.fail("ex25 not standard Koszul");
    const auto bal = is_balanced(a);
    if (bal.balanced) o.fail("ex25 balanced");
    if (!bal.witness || !bal.witness->at) o.fail("no concrete nonlinearity witness");
    const auto iso = graded_iso_check(ringel_dual(a).algebra, t, IsoMode::Ungraded);
    if (iso.verdict != IsoVerdict::Isomorphic) o.fail("R(ex25) vs target: " + verdict_name(iso.verdict));
    if (grading_diagnostics(t).quadratic) o.fail("target reported quadratic");
    if (koszulity_checks(t).koszul) o.fail("target reported Koszul");
    if (o.ok && bal.witness) o.detail = "witness: " + bal.witness->text(a->vertex_labels());
  });

  criterion(4, "Ringel duals of balanced algebras are positive", 0, [](Outcome& o) {
    for (const auto& m : balanced_members()) {
      if (!is_balanced(m.algebra).balanced) o.fail(m.name + " not balanced");
      if (!grading_diagnostics(ringel_dual(m.algebra).algebra).positively_graded)
        o.fail("R(" + m.name + ") not positively graded");
    }
    const auto a = build_algebra(corpus("ex25"));
    if (!koszulity_checks(a).standard_koszul) o.fail("ex25 not standard Koszul");
    if (is_balanced(a).balanced != grading_diagnostics(ringel_dual(a).algebra).positively_graded)
      o.fail("ex25: balanced and positivity of R disagree");
  });

  criterion(5, "Delta / Nabla orthogonality", 0, [](Outcome& o) {
    for (const auto& m : all_members()) {
      const auto order = qh_order(m.algebra);
      if (!order) continue;
      const Catalog cat = Catalog::basics(m.algebra, *order);
      const int n = cat.size();
      for (int l = 0; l < n; ++l)
        for (int u = 0; u < n; ++u)
          for (int i = 0; i <= 2 * n - 2; ++i)
            for (int j = -2 * n; j <= 2 * n; ++j) {
              const int want = l == u && i == 0 && j == 0 ? 1 : 0;
              if (ext_dim(cat.standard(l), cat.costandard(u), i, j) != want)
                o.fail(m.name + ": ext^" + std::to_string(i) + " at " + std::to_string(j));
            }
    }
  });

  criterion(6, "Domination vanishing", 0, [](Outcome& o) {
    for (const auto& m : balanced_members()) {
      const Catalog cat(m.algebra);
      const int n = cat.size();
      for (int i = 1; i <= 2 * n; ++i)
        for (int l = 0; l < n; ++l)
          for (int u = 0; u < n; ++u)
            if (hom_dim(shift(cat.tilting(l), i), cat.tilting(u), 0) != 0) o.fail(m.name + ": nonzero hom");
    }
    std::vector<std::pair<Catalog, std::vector<ChainComplex>>> pools;
    for (const char* name : {"ex24(2)", "ex24(3)", "directed_chain(3)"}) {
      Catalog cat(build_algebra(corpus(name)));
      std::vector<ChainComplex> cs;
      for (int v = 0; v < cat.size(); ++v) {
        cs.push_back(tilting_complex_of_simple(cat, v));
        cs.push_back(tilting_resolution(cat, TiltingSide::CoresolveStandard, v).complex);
        cs.push_back(tilting_resolution(cat, TiltingSide::ResolveCostandard, v).complex);
      }
      pools.emplace_back(std::move(cat), std::move(cs));
    }
    std::mt19937 rng(20240531);
    int found = 0, tries = 0;
    while (found < 20 && tries < 5000) {
      ++tries;
      const auto& [cat, cs] = pools[std::uniform_int_distribution<size_t>(0, pools.size() - 1)(rng)];
      std::uniform_int_distribution<size_t> pick(0, cs.size() - 1);
      std::uniform_int_distribution<int> internal(0, 6), pos(-1, 1);
      const ChainComplex x = moved(cat, cs[pick(rng)], internal(rng), pos(rng));
      const ChainComplex y = moved(cat, cs[pick(rng)], -internal(rng), pos(rng));
      if (!dominates(x, y)) continue;
      ++found;
      if (homotopy_hom_dim(x, y, 0, 0) != 0) o.fail("nonzero hom for a dominating pair");
    }
    if (found < 20) o.fail("only " + std::to_string(found) + " dominating pairs");
  });

  criterion(7, "Double duals E(E(A)) and R(R(A))", 0, [](Outcome& o) {
    for (const auto& m : all_members()) {
      const auto order = qh_order(m.algebra);
      if (order) {
        const auto r = ringel_dual(m.algebra, *order);
        const auto rr = ringel_dual(r.algebra, r.order.value_or(Order::Natural));
        const auto iso = graded_iso_check(rr.algebra, m.algebra);
        if (iso.verdict != IsoVerdict::Isomorphic) o.fail("R(R(" + m.name + ")): " + verdict_name(iso.verdict));
      }
      if (koszulity_checks(m.algebra).koszul) {
        const auto ee = koszul_dual(koszul_dual(m.algebra).algebra);
        const auto iso = graded_iso_check(ee.algebra, m.algebra);
        if (iso.verdict != IsoVerdict::Isomorphic) o.fail("E(E(" + m.name + ")): " + verdict_name(iso.verdict));
      }
    }
  });

  criterion(8, "Endomorphisms of simple complexes vs E(A)", 60, [](Outcome& o) {
    const auto a = build_algebra(corpus("ex24(3)"));
    const Catalog cat(a);
    std::vector<ChainComplex> xs;
    for (int v = 0; v < cat.size(); ++v) xs.push_back(tilting_complex_of_simple(cat, v));
    const auto end = end_algebra_of_complexes(xs);
    const auto e = koszul_dual(a).algebra;
    if (end->graded_dims() != e->graded_dims()) o.fail("graded dimensions differ");
    const auto iso = graded_iso_check(end, e);
    if (iso.verdict != IsoVerdict::Isomorphic) o.fail(verdict_name(iso.verdict));
  });

  criterion(9, "Simples are linear tilting complexes", 0, [](Outcome& o) {
    for (const auto& m : balanced_members()) {
      const Catalog cat(m.algebra);
      for (int v = 0; v < cat.size(); ++v)
        if (!is_linear(tilting_complex_of_simple(cat, v), ModuleClass::Tilting, cat).linear)
          o.fail(m.name + ": L(" + m.algebra->vertex_labels()[static_cast<size_t>(v)] + ")");
    }
  });

  criterion(10, "Closure under truncation, sums, tensor products", 0, [](Outcome& o) {
    const auto ex24 = build_algebra(corpus("ex24(3)"));
    const auto ex1 = build_algebra(corpus("ex24(1)"));
    const auto chain2 = build_algebra(directed_chain(2));
    const auto chain3 = build_algebra(directed_chain(3));
    const std::vector<Member> cases = {
        {"truncate ex24(3)", truncate(ex24, 1)},
        {"truncate directed_chain(3)", truncate(chain3, 2)},
        {"ex24(3) (+) ex24(3)", direct_sum(ex24, ex24)},
        {"ex24(1) (+) directed_chain(3)", direct_sum(ex1, chain3)},
        {"directed_chain(2) (x) directed_chain(2)", tensor(chain2, chain2)},
        {"ex24(1) (x) directed_chain(2)", tensor(ex1, chain2)}};
    for (const auto& c : cases)
      if (!is_balanced(c.algebra).balanced) o.fail(c.name + " not balanced");
  });

  criterion(11, "Ext via projective vs injective resolutions", 0, [](Outcome& o) {
    for (const auto& m : all_members()) {
      if (m.algebra->dim() > 20) continue;
      const Catalog cat = Catalog::basics(m.algebra, qh_order(m.algebra).value_or(Order::Natural));
      const int n = cat.size();
      for (auto klass : {ModuleClass::Simple, ModuleClass::Standard})
        for (int l = 0; l < n; ++l)
          for (int u = 0; u < n; ++u)
            for (int i = 0; i <= 3; ++i)
              for (int j = -4; j <= 4; ++j) {
                const GradedModule& x = cat.get(klass, l);
                const GradedModule& y = cat.simple(u);
                if (ext_dim(x, y, i, j) != ext_dim(x, y, i, j, Side::Injective))
                  o.fail(m.name + ": ext^" + std::to_string(i) + " at " + std::to_string(j));
              }
    }
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
