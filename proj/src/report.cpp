#include "qha/report.hpp"

#include "qha/errors.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

namespace qha {

using nlohmann::json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      break;
  }
  return "skipped";
}

namespace {

Status status_from(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "skipped") return Status::Skipped;
  throw std::invalid_argument("unknown status '" + s + "'");
}

std::string order_name(Order o) { return o == Order::Natural ? "natural" : "opposite"; }

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Verdict pass_fail(std::string claim, bool ok, json witness = nullptr, std::string detail = "") {
  return {std::move(claim), ok ? Status::Pass : Status::Fail, std::move(witness), std::move(detail)};
}

Verdict skipped(std::string claim, std::string why) { return {std::move(claim), Status::Skipped, nullptr, std::move(why)}; }

Verdict from_nonlinearity(std::string claim, const std::optional<Nonlinearity>& n, const AlgebraPtr& a) {
  if (!n) return pass_fail(std::move(claim), true);
  return pass_fail(std::move(claim), false, witness_json(*n, a->vertex_labels()), n->text(a->vertex_labels()));
}

Verdict qh_verdict(const AlgebraPtr& a, Order o) {
  const auto cert = is_quasi_hereditary(a, o);
  const std::string claim = "quasi_hereditary(" + order_name(o) + ")";
  if (cert.quasi_hereditary) return pass_fail(claim, true);
  json w = {{"vertex", cert.failing_vertex >= 0 ? a->vertex_labels()[static_cast<size_t>(cert.failing_vertex)] : ""},
            {"reason", cert.reason}};
  return pass_fail(claim, false, w, cert.reason);
}

DualSummary dual_summary(const std::string& kind, const DualityResult& d, const AlgebraPtr& input) {
  DualSummary s;
  s.kind = kind;
  s.provenance = d.provenance;
  s.algebra = summarize(d.algebra);
  if (d.order) s.order = order_name(*d.order);
  for (int v : d.vertex_map) s.vertex_map.push_back(input->vertex_labels()[static_cast<size_t>(v)]);
  try {
    s.presentation = render(extract_presentation(d.algebra));
  } catch (const Degree0NotSemisimple&) {
  }
  return s;
}

// Runs body and turns a domain error into a failed verdict tagged with the claim.
template <class F>
Verdict guarded(const std::string& claim, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return pass_fail(claim, false, json{{"error", e.what()}}, std::string("error: ") + e.what());
  }
}

}  // namespace

std::vector<const Verdict*> AnalysisReport::all() const {
  std::vector<const Verdict*> out;
  for (const auto* section : {&verdicts, &theorem1, &closure})
    for (const auto& v : *section) out.push_back(&v);
  return out;
}

bool AnalysisReport::passed() const {
  for (const Verdict* v : all())
    if (v->status == Status::Fail) return false;
  return true;
}

AlgebraSummary summarize(const AlgebraPtr& a) {
  return {a->name(), a->field().str(), a->vertex_labels(), a->dim(), a->min_degree(), a->degree_dims()};
}

json witness_json(const Nonlinearity& n, const std::vector<std::string>& vertex_labels) {
  json w = {{"complex", n.complex}};
  if (n.at) {
    w["position"] = n.at->position;
    w["summand"] = {{"class", class_symbol(n.at->summand.klass)},
                    {"vertex", vertex_labels[static_cast<size_t>(n.at->summand.vertex)]},
                    {"shift", n.at->summand.shift}};
    w["expected_shift"] = n.at->position;
  }
  if (!n.reason.empty()) w["reason"] = n.reason;
  return w;
}

json witness_json(const IsoResult& r, const AlgebraPtr& a, const AlgebraPtr& b) {
  json w = {{"verdict", verdict_name(r.verdict)}, {"attempts", r.attempts}};
  if (!r.certificate.empty()) w["certificate"] = r.certificate;
  if (r.verdict != IsoVerdict::Isomorphic) return w;
  json vm = json::object();
  for (size_t v = 0; v < r.vertex_map.size(); ++v)
    vm[a->vertex_labels()[v]] = b->vertex_labels()[static_cast<size_t>(r.vertex_map[v])];
  w["vertex_map"] = vm;
  json images = json::array();
  for (size_t g = 0; g < r.generator_images.size(); ++g) {
    const Generator& gen = a->generators()[g];
    json image = json::object();
    for (Eigen::Index k = 0; k < r.generator_images[g].size(); ++k)
      if (!r.generator_images[g](k).is_zero()) image[std::to_string(k)] = r.generator_images[g](k).str();
    images.push_back({{"generator", gen.label},
                      {"source", a->vertex_labels()[static_cast<size_t>(gen.source)]},
                      {"target", a->vertex_labels()[static_cast<size_t>(gen.target)]},
                      {"degree", gen.degree},
                      {"image", image}});
  }
  w["generator_images"] = images;
  return w;
}

Verdict check(const AlgebraPtr& a, const std::string& property, Order order) {
  if (property == "qh") {
    Verdict v = qh_verdict(a, order);
    v.claim = "quasi_hereditary";
    return v;
  }
  if (property == "koszul")
    return guarded("koszul", [&] { return from_nonlinearity("koszul", koszulity_checks(a).koszul_witness, a); });
  if (property == "standard-koszul")
    return guarded("standard_koszul",
                   [&] { return from_nonlinearity("standard_koszul", koszulity_checks(a, order).standard_witness, a); });
  if (property == "balanced")
    return guarded("balanced", [&] { return from_nonlinearity("balanced", is_balanced(a, order).witness, a); });
  throw std::invalid_argument("unknown property '" + property + "'");
}

AnalysisReport analyze(const AlgebraPtr& a) {
  AnalysisReport r;
  r.command = "analyze";
  r.algebra = summarize(a);
  Stopwatch total;
  r.verdicts.push_back(qh_verdict(a, Order::Natural));
  r.verdicts.push_back(qh_verdict(a, Order::Opposite));
  std::optional<Order> order;
  if (r.verdicts[0].status == Status::Pass)
    order = Order::Natural;
  else if (r.verdicts[1].status == Status::Pass)
    order = Order::Opposite;
  r.verdicts.push_back(check(a, "koszul"));
  if (order) {
    for (const char* property : {"standard-koszul", "balanced"}) {
      Verdict v = check(a, property, *order);
      if (*order == Order::Opposite) v.detail = "opposite order" + (v.detail.empty() ? "" : "; " + v.detail);
      r.verdicts.push_back(std::move(v));
    }
    r.duals.push_back(dual_summary("ringel", ringel_dual(a, *order), a));
  } else {
    r.verdicts.push_back(skipped("standard_koszul", "not quasi-hereditary"));
    r.verdicts.push_back(skipped("balanced", "not quasi-hereditary"));
  }
  try {
    r.duals.push_back(dual_summary("koszul", koszul_dual(a), a));
  } catch (const CapExceeded&) {
    // infinite global dimension suspected: no finite Koszul dual to summarize
  }
  r.timings["total"] = total.seconds();
  return r;
}

AnalysisReport verify_theorem1(const AlgebraPtr& a) {
  AnalysisReport r;
  r.command = "verify theorem1";
  r.algebra = summarize(a);
  Stopwatch total;

  const KoszulityReport k = koszulity_checks(a);
  r.verdicts.push_back(from_nonlinearity("koszul", k.koszul_witness, a));
  r.verdicts.push_back(from_nonlinearity("standard_koszul", k.standard_witness, a));
  const BalanceReport bal = is_balanced(a);
  r.verdicts.push_back(from_nonlinearity("balanced", bal.witness, a));
  Verdict hyp = r.verdicts.back();
  hyp.claim = "hypothesis";
  if (!bal.balanced) hyp.detail = "hypothesis fails: " + hyp.detail;
  r.theorem1.push_back(hyp);
  const std::vector<std::string> items = {"(i) koszul and standard koszul", "(ii) duals balanced",
                                          "(iii) simples are linear tilting complexes", "(iv) R(E(A)) = E(R(A))"};
  if (!bal.balanced) {
    for (const auto& c : items) r.theorem1.push_back(skipped(c, "hypothesis fails"));
    r.timings["total"] = total.seconds();
    return r;
  }

  Stopwatch watch;
  r.theorem1.push_back(guarded(items[0], [&] {
    const auto& w = k.koszul_witness ? k.koszul_witness : k.standard_witness;
    return from_nonlinearity(items[0], w, a);
  }));

  std::optional<DualityResult> R, E, ER, RE;
  r.theorem1.push_back(guarded(items[1], [&] {
    R = ringel_dual(a);
    E = koszul_dual(a);
    r.duals.push_back(dual_summary("ringel", *R, a));
    r.duals.push_back(dual_summary("koszul", *E, a));
    if (!E->order) return pass_fail(items[1], false, json{{"algebra", "E(A)"}}, "E(A) is not quasi-hereditary");
    ER = koszul_dual(R->algebra);
    RE = ringel_dual(E->algebra, *E->order);
    const std::vector<std::pair<std::string, std::pair<AlgebraPtr, std::optional<Order>>>> cases = {
        {"A", {a, Order::Natural}},
        {"R(A)", {R->algebra, R->order}},
        {"E(A)", {E->algebra, E->order}},
        {"E(R(A))", {ER->algebra, ER->order}},
        {"R(E(A))", {RE->algebra, RE->order}}};
    for (const auto& [label, what] : cases) {
      if (!what.second) return pass_fail(items[1], false, json{{"algebra", label}}, label + " is not quasi-hereditary");
      const BalanceReport b = is_balanced(what.first, *what.second);
      if (!b.balanced) {
        json w = witness_json(*b.witness, what.first->vertex_labels());
        w["algebra"] = label;
        return pass_fail(items[1], false, w, label + ": " + b.witness->text(what.first->vertex_labels()));
      }
    }
    return pass_fail(items[1], true);
  }));
  r.timings["(ii)"] = watch.seconds();

  watch = Stopwatch();
  std::vector<ChainComplex> simples;
  r.theorem1.push_back(guarded(items[2], [&] {
    const Catalog cat(a);
    for (int v = 0; v < a->num_vertices(); ++v) {
      simples.push_back(tilting_complex_of_simple(cat, v));
      const Linearity lin = is_linear(simples.back(), ModuleClass::Tilting, cat);
      if (!lin.linear) {
        const Nonlinearity n{"tilting complex of L(" + a->vertex_labels()[static_cast<size_t>(v)] + ")", lin.witness, ""};
        return pass_fail(items[2], false, witness_json(n, a->vertex_labels()), n.text(a->vertex_labels()));
      }
    }
    return pass_fail(items[2], true);
  }));
  r.timings["(iii)"] = watch.seconds();

  watch = Stopwatch();
  r.theorem1.push_back(guarded(items[3], [&] {
    if (!RE || !ER) return skipped(items[3], "duals unavailable");
    const IsoResult main = graded_iso_check(RE->algebra, ER->algebra);
    json w = {{"R(E(A)) -> E(R(A))", witness_json(main, RE->algebra, ER->algebra)}};
    std::string detail = "R(E(A)) vs E(R(A)): " + verdict_name(main.verdict);
    bool ok = main.verdict == IsoVerdict::Isomorphic;
    if (static_cast<int>(simples.size()) == a->num_vertices()) {
      const AlgebraPtr end = end_algebra_of_complexes(simples);
      const IsoResult cross = graded_iso_check(end, E->algebra);
      w["End(simple complexes) -> E(A)"] = witness_json(cross, end, E->algebra);
      detail += "; End(simple complexes) vs E(A): " + verdict_name(cross.verdict);
      ok = ok && cross.verdict == IsoVerdict::Isomorphic;
    } else {
      detail += "; tilting complexes of simples unavailable";
      ok = false;
    }
    return pass_fail(items[3], ok, w, detail);
  }));
  r.timings["(iv)"] = watch.seconds();
  r.timings["total"] = total.seconds();
  return r;
}

AnalysisReport verify_closure(const AlgebraPtr& p, const AlgebraPtr& q) {
  AnalysisReport r;
  r.command = "verify closure";
  r.algebra = summarize(p);
  Stopwatch total;
  auto balanced = [](const std::string& claim, const AlgebraPtr& a) {
    return guarded(claim, [&] { return from_nonlinearity(claim, is_balanced(a).witness, a); });
  };
  r.verdicts.push_back(balanced("balanced(" + p->name() + ")", p));
  if (q) r.verdicts.push_back(balanced("balanced(" + q->name() + ")", q));
  bool hypothesis = true;
  for (const auto& v : r.verdicts) hypothesis = hypothesis && v.status == Status::Pass;
  auto add = [&](const std::string& claim, auto make) {
    if (!hypothesis) {
      r.closure.push_back(skipped(claim, "hypothesis fails"));
      return;
    }
    Stopwatch watch;
    r.closure.push_back(guarded(claim, [&] {
      const AlgebraPtr c = make();
      Verdict v = from_nonlinearity(claim, is_balanced(c).witness, c);
      if (v.status == Status::Pass) v.detail = c->name();
      return v;
    }));
    r.timings[claim] = watch.seconds();
  };
  if (p->num_vertices() > 1)
    add("truncate", [&] { return truncate(p, p->num_vertices() - 1); });
  else
    r.closure.push_back(skipped("truncate", "a single vertex leaves nothing to truncate to"));
  if (q) {
    add("direct_sum", [&] { return direct_sum(p, q); });
    add("tensor", [&] { return tensor(p, q); });
    if (r.closure.back().status == Status::Pass) r.closure.back().detail += ", vertex pairs ordered lexicographically";
  } else {
    r.closure.push_back(skipped("direct_sum", "no second algebra"));
    r.closure.push_back(skipped("tensor", "no second algebra"));
  }
  r.timings["total"] = total.seconds();
  return r;
}

namespace {

json verdict_json(const Verdict& v) {
  return {{"claim", v.claim}, {"status", status_name(v.status)}, {"witness", v.witness}, {"detail", v.detail}};
}

Verdict verdict_from(const json& j) {
  return {j.at("claim").get<std::string>(), status_from(j.at("status").get<std::string>()), j.at("witness"),
          j.at("detail").get<std::string>()};
}

json summary_json(const AlgebraSummary& s) {
  return {{"name", s.name},           {"field", s.field},
          {"vertices", s.vertices},   {"dim", s.dim},
          {"min_degree", s.min_degree}, {"degree_dims", s.degree_dims}};
}

AlgebraSummary summary_from(const json& j) {
  return {j.at("name").get<std::string>(),
          j.at("field").get<std::string>(),
          j.at("vertices").get<std::vector<std::string>>(),
          j.at("dim").get<int>(),
          j.at("min_degree").get<int>(),
          j.at("degree_dims").get<std::vector<int>>()};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json verdicts_json(const std::vector<Verdict>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(verdict_json(v));
  return a;
}

std::vector<Verdict> verdicts_from(const json& j) {
  std::vector<Verdict> out;
  for (const auto& v : j) out.push_back(verdict_from(v));
  return out;
}

}  // namespace

json to_json(const AnalysisReport& r) {
  json duals = json::array();
  for (const auto& d : r.duals)
    duals.push_back({{"kind", d.kind},
                     {"provenance", d.provenance},
                     {"algebra", summary_json(d.algebra)},
                     {"order", optional_json(d.order)},
                     {"vertex_map", d.vertex_map},
                     {"presentation", optional_json(d.presentation)}});
  return {{"schema", r.schema},
          {"command", r.command},
          {"algebra", summary_json(r.algebra)},
          {"verdicts", verdicts_json(r.verdicts)},
          {"duals", duals},
          {"theorem1", verdicts_json(r.theorem1)},
          {"closure", verdicts_json(r.closure)},
          {"timings", r.timings},
          {"passed", r.passed()}};
}

AnalysisReport report_from_json(const json& j) {
  if (!j.contains("schema")) throw std::invalid_argument("report has no schema field");
  if (j.at("schema").get<int>() != AnalysisReport::kSchema)
    throw std::invalid_argument("unsupported report schema " + j.at("schema").dump());
  AnalysisReport r;
  r.command = j.at("command").get<std::string>();
  r.algebra = summary_from(j.at("algebra"));
  r.verdicts = verdicts_from(j.at("verdicts"));
  for (const auto& d : j.at("duals")) {
    DualSummary s;
    s.kind = d.at("kind").get<std::string>();
    s.provenance = d.at("provenance").get<std::string>();
    s.algebra = summary_from(d.at("algebra"));
    if (!d.at("order").is_null()) s.order = d.at("order").get<std::string>();
    s.vertex_map = d.at("vertex_map").get<std::vector<std::string>>();
    if (!d.at("presentation").is_null()) s.presentation = d.at("presentation").get<std::string>();
    r.duals.push_back(std::move(s));
  }
  r.theorem1 = verdicts_from(j.at("theorem1"));
  r.closure = verdicts_from(j.at("closure"));
  r.timings = j.at("timings").get<std::map<std::string, double>>();
  return r;
}

namespace {

void summary_line(std::ostringstream& out, const AlgebraSummary& s) {
  out << s.name << " over " << s.field << ", vertices";
  for (const auto& v : s.vertices) out << ' ' << v;
  out << ", dim " << s.dim << ", degrees from " << s.min_degree << ':';
  for (int d : s.degree_dims) out << ' ' << d;
  out << '\n';
}

void verdict_lines(std::ostringstream& out, const std::vector<Verdict>& vs) {
  for (const auto& v : vs) {
    std::string claim = v.claim;
    if (claim.size() < 44) claim.resize(44, ' ');
    out << "  " << claim << ' ' << status_name(v.status);
    if (!v.detail.empty()) out << "  " << v.detail;
    out << '\n';
  }
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << r.command << ": ";
  summary_line(out, r.algebra);
  if (!r.verdicts.empty()) {
    out << "verdicts\n";
    verdict_lines(out, r.verdicts);
  }
  for (const auto& d : r.duals) {
    out << d.kind << " dual: ";
    summary_line(out, d.algebra);
    out << "  order " << d.order.value_or("none") << ", vertices from";
    for (const auto& v : d.vertex_map) out << ' ' << v;
    out << (d.presentation ? "" : ", not positively graded") << '\n';
  }
  if (!r.theorem1.empty()) {
    out << "theorem1\n";
    verdict_lines(out, r.theorem1);
  }
  if (!r.closure.empty()) {
    out << "closure\n";
    verdict_lines(out, r.closure);
  }
  out << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace qha
