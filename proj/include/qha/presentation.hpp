#pragma once

// Quivers with homogeneous relations: the text format, validation and the
// built-in corpus.
//
// Composition convention: in a word x*y the right factor y acts first, so a
// word is composable when the source of each letter equals the target of the
// letter to its right.

#include "qha/scalar.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qha {

struct Arrow {
  std::string label;
  int source = 0;
  int target = 0;
  int degree = 1;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// One term of a relation: coefficient times a word of arrow indices, stored
/// in written order (the last letter acts first).
struct Term {
  mpq_class coeff;
  std::vector<int> word;
  friend bool operator==(const Term& a, const Term& b) { return a.coeff == b.coeff && a.word == b.word; }
};

struct Relation {
  std::vector<Term> terms;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct QuiverPresentation {
  std::string name;
  Field field;
  std::vector<std::string> vertices;  ///< listed order is the quasi-hereditary order
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;

  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertices.size()); }
  [[nodiscard]] int word_source(const std::vector<int>& word) const { return arrows[word.back()].source; }
  [[nodiscard]] int word_target(const std::vector<int>& word) const { return arrows[word.front()].target; }
  [[nodiscard]] int word_degree(const std::vector<int>& word) const;
  [[nodiscard]] int relation_degree(const Relation& r) const { return word_degree(r.terms.front().word); }

  friend bool operator==(const QuiverPresentation&, const QuiverPresentation&) = default;
};

/// Parse or validation failure, positioned at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string token, const std::string& message);
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string token_;
};

QuiverPresentation parse_presentation(std::string_view text);
std::string render(const QuiverPresentation& p);

/// Checks the structural invariants (distinct labels, composable and
/// homogeneous relations of degree >= 2, coefficients defined in the field).
/// Throws ParseError with line 0 for presentations not read from text.
void validate(const QuiverPresentation& p);

/// Built-in examples: ex24, ex24(m), ex25, ex25_ringel_target,
/// directed_chain(n), semisimple(n).  Throws std::invalid_argument for
/// unknown names.
QuiverPresentation corpus(std::string_view name);
std::vector<std::string> corpus_names();

QuiverPresentation ex24(int arrows_each_way);
QuiverPresentation ex25();
QuiverPresentation ex25_ringel_target();
QuiverPresentation directed_chain(int n);
QuiverPresentation semisimple(int n);

}  // namespace qha
