#pragma once

// Analysis reports: verdicts with witnesses, the verification
// drivers, and JSON / text serialization.

#include "qha/duality.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qha {

enum class Status { Pass, Fail, Skipped };

std::string status_name(Status s);  // "pass", "fail", "skipped"

struct Verdict {
  std::string claim;
  Status status = Status::Skipped;
  /// Structured evidence: a nonlinearity, an isomorphism map, a certificate.
  nlohmann::json witness;
  std::string detail;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct AlgebraSummary {
  std::string name;
  std::string field;
  std::vector<std::string> vertices;
  int dim = 0;
  int min_degree = 0;
  std::vector<int> degree_dims;
  friend bool operator==(const AlgebraSummary&, const AlgebraSummary&) = default;
};

struct DualSummary {
  std::string kind;  ///< "ringel" or "koszul"
  std::string provenance;
  AlgebraSummary algebra;
  std::optional<std::string> order;  ///< "natural" / "opposite"
  std::vector<std::string> vertex_map;  ///< input label of each result vertex
  /// Rendered presentation when the dual is positively graded.
  std::optional<std::string> presentation;
  friend bool operator==(const DualSummary&, const DualSummary&) = default;
};

struct AnalysisReport {
  static constexpr int kSchema = 1;
  int schema = kSchema;
  std::string command;
  AlgebraSummary algebra;
  std::vector<Verdict> verdicts;
  std::vector<DualSummary> duals;
  std::vector<Verdict> theorem1;
  std::vector<Verdict> closure;
  std::map<std::string, double> timings;  ///< seconds

  /// Every verdict of every section, in order.
  [[nodiscard]] std::vector<const Verdict*> all() const;
  /// No verdict failed.
  [[nodiscard]] bool passed() const;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

AlgebraSummary summarize(const AlgebraPtr& a);
nlohmann::json witness_json(const Nonlinearity& n, const std::vector<std::string>& vertex_labels);
nlohmann::json witness_json(const IsoResult& r, const AlgebraPtr& a, const AlgebraPtr& b);

/// Quasi-heredity for both orders, Koszulity, standard Koszulity, balance
/// and summaries of both duals.  The order-dependent checks use the natural
/// order, or the opposite one when only that certifies quasi-heredity.
AnalysisReport analyze(const AlgebraPtr& a);

/// One check by name: "balanced", "koszul", "standard-koszul" or "qh".
Verdict check(const AlgebraPtr& a, const std::string& property, Order order = Order::Natural);

/// Hypothesis (balance), then (i) Koszul and standard Koszul, (ii) balance
/// of A, R(A), E(A), E(R(A)), R(E(A)), (iii) linear tilting complexes of
/// the simples, (iv) R(E(A)) = E(R(A)) and End(simple complexes) = E(A).
AnalysisReport verify_theorem1(const AlgebraPtr& a);

/// Balance of the truncation at the top vertex, and with q of the direct
/// sum and the tensor product.
AnalysisReport verify_closure(const AlgebraPtr& p, const AlgebraPtr& q = nullptr);

nlohmann::json to_json(const AnalysisReport& r);
/// Throws std::invalid_argument for a missing or unknown schema.
AnalysisReport report_from_json(const nlohmann::json& j);
std::string render_text(const AnalysisReport& r);

}  // namespace qha
