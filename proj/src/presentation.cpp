#include "qha/presentation.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace qha {

ParseError::ParseError(int line, int column, std::string token, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                        message + " '" + token + "'"
                                  : message + " '" + token + "'"),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

int QuiverPresentation::word_degree(const std::vector<int>& word) const {
  int d = 0;
  for (int a : word) d += arrows[a].degree;
  return d;
}

namespace {

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

struct Token {
  std::string text;
  int line;
  int column;
};

// Splits one line (comment already stripped) into whitespace separated tokens.
std::vector<Token> split_words(const std::string& line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back({line.substr(i, j - i), lineno, static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

// Relation block scanner: tracks line/column across the remaining text.
class RelationLexer {
 public:
  struct Piece {
    enum Kind { Ident, Number, Star, Plus, Minus, Slash, Semi, End } kind;
    std::string text;
    int line;
    int column;
  };

  RelationLexer(std::vector<std::pair<std::string, int>> lines) : lines_(std::move(lines)) { advance(); }

  const Piece& peek() const { return cur_; }
  Piece take() {
    Piece p = cur_;
    advance();
    return p;
  }

 private:
  void advance() {
    while (li_ < lines_.size()) {
      const std::string& s = lines_[li_].first;
      while (ci_ < s.size() && std::isspace(static_cast<unsigned char>(s[ci_]))) ++ci_;
      if (ci_ >= s.size()) {
        ++li_;
        ci_ = 0;
        continue;
      }
      const int line = lines_[li_].second;
      const int col = static_cast<int>(ci_) + 1;
      const unsigned char c = static_cast<unsigned char>(s[ci_]);
      if (ident_start(c)) {
        size_t j = ci_;
        while (j < s.size() && ident_char(static_cast<unsigned char>(s[j]))) ++j;
        cur_ = {Piece::Ident, s.substr(ci_, j - ci_), line, col};
        ci_ = j;
        return;
      }
      if (std::isdigit(c)) {
        size_t j = ci_;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        cur_ = {Piece::Number, s.substr(ci_, j - ci_), line, col};
        ci_ = j;
        return;
      }
      Piece::Kind k;
      switch (c) {
        case '*': k = Piece::Star; break;
        case '+': k = Piece::Plus; break;
        case '-': k = Piece::Minus; break;
        case '/': k = Piece::Slash; break;
        case ';': k = Piece::Semi; break;
        default: throw ParseError(line, col, std::string(1, static_cast<char>(c)), "unexpected character");
      }
      cur_ = {k, std::string(1, static_cast<char>(c)), line, col};
      ++ci_;
      return;
    }
    cur_ = {Piece::End, "<end of input>", lines_.empty() ? 0 : lines_.back().second, 1};
  }

  std::vector<std::pair<std::string, int>> lines_;
  size_t li_ = 0;
  size_t ci_ = 0;
  Piece cur_{Piece::End, "", 0, 0};
};

struct PositionedRelation {
  Relation rel;
  std::vector<Token> words;  // first token of each term, for error messages
};

void check_relation(const QuiverPresentation& p, const Relation& r, const std::vector<Token>& where) {
  auto fail = [&](size_t term, const std::string& msg) {
    if (term < where.size()) throw ParseError(where[term].line, where[term].column, where[term].text, msg);
    std::string tok;
    for (size_t k = 0; k < r.terms[term].word.size(); ++k)
      tok += (k ? "*" : "") + p.arrows[r.terms[term].word[k]].label;
    throw ParseError(0, 0, tok, msg);
  };
  if (r.terms.empty()) throw ParseError(where.empty() ? 0 : where.front().line, 0, ";", "empty relation");
  for (size_t t = 0; t < r.terms.size(); ++t) {
    const auto& w = r.terms[t].word;
    if (w.empty()) fail(t, "relation term without arrows");
    for (size_t k = 0; k + 1 < w.size(); ++k)
      if (p.arrows[w[k]].source != p.arrows[w[k + 1]].target) fail(t, "non-composable word");
    if (!p.field.is_rational()) {
      try {
        (void)p.field.from_rational(r.terms[t].coeff);
      } catch (const std::domain_error&) {
        fail(t, "coefficient undefined in field " + p.field.str() + " for term");
      }
    }
  }
  const auto& w0 = r.terms.front().word;
  for (size_t t = 1; t < r.terms.size(); ++t) {
    const auto& w = r.terms[t].word;
    if (p.word_source(w) != p.word_source(w0) || p.word_target(w) != p.word_target(w0) ||
        p.word_degree(w) != p.word_degree(w0))
      fail(t, "inhomogeneous relation at term");
  }
  if (p.word_degree(w0) < 2) fail(0, "relation of degree < 2 at term");
}

void check_labels(const QuiverPresentation& p, const std::map<std::string, Token>& where) {
  std::set<std::string> seen;
  auto fail = [&](const std::string& label) {
    auto it = where.find(label);
    if (it != where.end()) throw ParseError(it->second.line, it->second.column, label, "duplicate label");
    throw ParseError(0, 0, label, "duplicate label");
  };
  for (const auto& v : p.vertices)
    if (!seen.insert(v).second) fail(v);
  for (const auto& a : p.arrows)
    if (!seen.insert(a.label).second) fail(a.label);
  for (const auto& a : p.arrows)
    if (a.degree < 1) throw ParseError(0, 0, a.label, "arrow degree must be positive for arrow");
}

}  // namespace

void validate(const QuiverPresentation& p) {
  check_labels(p, {});
  for (const auto& a : p.arrows)
    if (a.source < 0 || a.source >= p.num_vertices() || a.target < 0 || a.target >= p.num_vertices())
      throw ParseError(0, 0, a.label, "arrow endpoint out of range for");
  for (const auto& r : p.relations) check_relation(p, r, {});
}

QuiverPresentation parse_presentation(std::string_view text) {
  QuiverPresentation p;
  bool have_name = false;
  bool have_field = false;
  bool have_vertices = false;
  std::map<std::string, int> vertex_index;
  std::map<std::string, int> arrow_index;
  std::map<std::string, Token> label_pos;
  std::vector<std::pair<std::string, int>> relation_lines;
  bool in_relations = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (in_relations) {
      relation_lines.emplace_back(raw, lineno);
      continue;
    }
    auto toks = split_words(raw, lineno);
    if (toks.empty()) continue;
    const Token& head = toks.front();
    auto expect_count = [&](size_t n) {
      if (toks.size() < n) throw ParseError(lineno, static_cast<int>(raw.size()) + 1, head.text, "missing operand after");
      if (toks.size() > n) throw ParseError(toks[n].line, toks[n].column, toks[n].text, "unexpected token");
    };
    if (head.text == "algebra") {
      if (have_name) throw ParseError(head.line, head.column, head.text, "repeated header");
      expect_count(2);
      p.name = toks[1].text;
      have_name = true;
    } else if (head.text == "field") {
      if (have_field) throw ParseError(head.line, head.column, head.text, "repeated header");
      expect_count(2);
      try {
        p.field = Field::parse(toks[1].text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(toks[1].line, toks[1].column, toks[1].text, "invalid field");
      }
      have_field = true;
    } else if (head.text == "vertices") {
      if (have_vertices) throw ParseError(head.line, head.column, head.text, "repeated header");
      for (size_t i = 1; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (vertex_index.count(t.text)) throw ParseError(t.line, t.column, t.text, "duplicate label");
        for (unsigned char c : t.text)
          if (!ident_char(c)) throw ParseError(t.line, t.column, t.text, "invalid vertex label");
        vertex_index[t.text] = static_cast<int>(p.vertices.size());
        label_pos[t.text] = t;
        p.vertices.push_back(t.text);
      }
      if (p.vertices.empty()) throw ParseError(head.line, head.column, head.text, "no vertices listed after");
      have_vertices = true;
    } else if (head.text == "arrow") {
      if (!have_vertices) throw ParseError(head.line, head.column, head.text, "vertices must be declared before");
      // arrow LBL : SRC -> TGT [deg K]
      if (toks.size() != 6 && toks.size() != 8)
        throw ParseError(head.line, head.column, raw, "expected 'arrow LBL : SRC -> TGT [deg K]', got");
      const auto& lbl = toks[1];
      if (!ident_start(static_cast<unsigned char>(lbl.text[0])))
        throw ParseError(lbl.line, lbl.column, lbl.text, "arrow label must start with a letter:");
      for (unsigned char c : lbl.text)
        if (!ident_char(c)) throw ParseError(lbl.line, lbl.column, lbl.text, "invalid arrow label");
      if (toks[2].text != ":") throw ParseError(toks[2].line, toks[2].column, toks[2].text, "expected ':' instead of");
      if (toks[4].text != "->") throw ParseError(toks[4].line, toks[4].column, toks[4].text, "expected '->' instead of");
      auto vert = [&](const Token& t) {
        auto it = vertex_index.find(t.text);
        if (it == vertex_index.end()) throw ParseError(t.line, t.column, t.text, "unknown vertex");
        return it->second;
      };
      Arrow a{lbl.text, vert(toks[3]), vert(toks[5]), 1};
      if (toks.size() == 8) {
        if (toks[6].text != "deg") throw ParseError(toks[6].line, toks[6].column, toks[6].text, "expected 'deg' instead of");
        const auto& k = toks[7];
        int d = 0;
        for (char c : k.text) {
          if (!std::isdigit(static_cast<unsigned char>(c)) || d > 100000)
            throw ParseError(k.line, k.column, k.text, "invalid arrow degree");
          d = d * 10 + (c - '0');
        }
        if (d < 1) throw ParseError(k.line, k.column, k.text, "arrow degree must be positive:");
        a.degree = d;
      }
      if (vertex_index.count(a.label) || arrow_index.count(a.label))
        throw ParseError(lbl.line, lbl.column, lbl.text, "duplicate label");
      arrow_index[a.label] = static_cast<int>(p.arrows.size());
      label_pos[a.label] = lbl;
      p.arrows.push_back(a);
    } else if (head.text == "relations") {
      in_relations = true;
      const auto rest = raw.substr(static_cast<size_t>(head.column - 1) + head.text.size());
      std::string padded(static_cast<size_t>(head.column - 1) + head.text.size(), ' ');
      relation_lines.emplace_back(padded + rest, lineno);
    } else {
      throw ParseError(head.line, head.column, head.text, "unknown directive");
    }
  }
  if (!have_name) throw ParseError(lineno, 1, "algebra", "missing header");
  if (!have_vertices) throw ParseError(lineno, 1, "vertices", "missing header");

  RelationLexer lex(std::move(relation_lines));
  using P = RelationLexer::Piece;
  while (lex.peek().kind != P::End) {
    if (lex.peek().kind == P::Semi) {
      lex.take();
      continue;
    }
    Relation rel;
    std::vector<Token> where;
    std::map<std::vector<int>, size_t> slot;
    bool first = true;
    while (lex.peek().kind != P::End && lex.peek().kind != P::Semi) {
      int sign = 1;
      if (lex.peek().kind == P::Plus || lex.peek().kind == P::Minus) {
        sign = lex.take().kind == P::Minus ? -1 : 1;
      } else if (!first) {
        const auto& t = lex.peek();
        throw ParseError(t.line, t.column, t.text, "expected '+', '-' or ';' before");
      }
      first = false;
      mpq_class coeff(sign);
      Token term_pos{lex.peek().text, lex.peek().line, lex.peek().column};
      if (lex.peek().kind == P::Number) {
        mpz_class num(lex.take().text);
        mpz_class den(1);
        if (lex.peek().kind == P::Slash) {
          lex.take();
          if (lex.peek().kind != P::Number) {
            const auto& t = lex.peek();
            throw ParseError(t.line, t.column, t.text, "expected denominator, got");
          }
          const auto dt = lex.take();
          den = mpz_class(dt.text);
          if (den == 0) throw ParseError(dt.line, dt.column, dt.text, "zero denominator");
        }
        coeff *= mpq_class(num, den);
        coeff.canonicalize();
        if (lex.peek().kind == P::Star) lex.take();
      }
      std::vector<int> word;
      for (;;) {
        const auto t = lex.take();
        if (t.kind != P::Ident) throw ParseError(t.line, t.column, t.text, "expected arrow label, got");
        auto it = arrow_index.find(t.text);
        if (it == arrow_index.end()) throw ParseError(t.line, t.column, t.text, "unknown arrow");
        if (word.empty()) term_pos = Token{t.text, t.line, t.column};
        word.push_back(it->second);
        if (lex.peek().kind != P::Star) break;
        lex.take();
      }
      // composability is checked here so the error points at the word
      for (size_t k = 0; k + 1 < word.size(); ++k)
        if (p.arrows[word[k]].source != p.arrows[word[k + 1]].target) {
          std::string w;
          for (size_t m = 0; m < word.size(); ++m) w += (m ? "*" : "") + p.arrows[word[m]].label;
          throw ParseError(term_pos.line, term_pos.column, w, "non-composable word");
        }
      auto [it, fresh] = slot.try_emplace(word, rel.terms.size());
      if (fresh) {
        rel.terms.push_back({coeff, word});
        where.push_back(term_pos);
      } else {
        rel.terms[it->second].coeff += coeff;
      }
    }
    // drop cancelled terms
    Relation cleaned;
    std::vector<Token> cleaned_where;
    for (size_t t = 0; t < rel.terms.size(); ++t)
      if (rel.terms[t].coeff != 0) {
        cleaned.terms.push_back(rel.terms[t]);
        cleaned_where.push_back(where[t]);
      }
    if (cleaned.terms.empty()) {
      const auto& t = where.empty() ? Token{";", lex.peek().line, lex.peek().column} : where.front();
      throw ParseError(t.line, t.column, t.text, "relation is identically zero at");
    }
    check_relation(p, cleaned, cleaned_where);
    p.relations.push_back(std::move(cleaned));
  }
  return p;
}

std::string render(const QuiverPresentation& p) {
  std::ostringstream out;
  out << "algebra " << p.name << "\n";
  out << "field " << p.field.str() << "\n";
  out << "vertices";
  for (const auto& v : p.vertices) out << ' ' << v;
  out << "\n";
  for (const auto& a : p.arrows) {
    out << "arrow " << a.label << " : " << p.vertices[a.source] << " -> " << p.vertices[a.target];
    if (a.degree != 1) out << " deg " << a.degree;
    out << "\n";
  }
  if (!p.relations.empty()) {
    out << "relations\n";
    for (const auto& r : p.relations) {
      bool first = true;
      for (const auto& t : r.terms) {
        mpq_class c = t.coeff;
        if (first) {
          if (c < 0) {
            out << "-";
            c = -c;
          }
        } else {
          out << (c < 0 ? " - " : " + ");
          if (c < 0) c = -c;
        }
        first = false;
        if (c != 1) out << c.get_str() << "*";
        for (size_t k = 0; k < t.word.size(); ++k) out << (k ? "*" : "") << p.arrows[t.word[k]].label;
      }
      out << ";\n";
    }
  }
  return out.str();
}

QuiverPresentation ex24(int m) {
  if (m < 1) throw std::invalid_argument("ex24 needs at least one arrow each way");
  QuiverPresentation p;
  p.name = "ex24(" + std::to_string(m) + ")";
  p.vertices = {"1", "2"};
  for (int i = 1; i <= m; ++i) p.arrows.push_back({"a" + std::to_string(i), 0, 1, 1});
  for (int j = 1; j <= m; ++j) p.arrows.push_back({"b" + std::to_string(j), 1, 0, 1});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p.relations.push_back({{{mpq_class(1), {i, m + j}}}});
  return p;
}

QuiverPresentation ex25() {
  QuiverPresentation p;
  p.name = "ex25";
  p.vertices = {"1", "2", "3"};
  p.arrows = {{"a", 0, 1, 1}, {"b", 1, 0, 1}, {"c", 1, 2, 1}, {"d", 2, 1, 1}};
  p.relations = {{{{mpq_class(1), {0, 1}}}}, {{{mpq_class(1), {2, 3}}}}};
  return p;
}

QuiverPresentation ex25_ringel_target() {
  QuiverPresentation p;
  p.name = "ex25_ringel_target";
  p.vertices = {"1", "2", "3"};
  // alpha: 1->3, gamma: 2->3, beta: 3->1, delta: 3->2
  p.arrows = {{"alpha", 0, 2, 1}, {"gamma", 1, 2, 1}, {"beta", 2, 0, 1}, {"delta", 2, 1, 1}};
  p.relations = {{{{mpq_class(1), {2, 0}}}},         // beta*alpha
                 {{{mpq_class(1), {3, 1}}}},         // delta*gamma
                 {{{mpq_class(1), {2, 1, 3, 0}}}}};  // beta*gamma*delta*alpha
  return p;
}

QuiverPresentation directed_chain(int n) {
  if (n < 1) throw std::invalid_argument("directed_chain needs n >= 1");
  QuiverPresentation p;
  p.name = "directed_chain(" + std::to_string(n) + ")";
  for (int i = 1; i <= n; ++i) p.vertices.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) p.arrows.push_back({"a" + std::to_string(i + 1), i, i + 1, 1});
  return p;
}

QuiverPresentation semisimple(int n) {
  if (n < 1) throw std::invalid_argument("semisimple needs n >= 1");
  QuiverPresentation p;
  p.name = "semisimple(" + std::to_string(n) + ")";
  for (int i = 1; i <= n; ++i) p.vertices.push_back(std::to_string(i));
  return p;
}

namespace {

// "family(k)" -> k, or -1 when the name does not have that shape.
int family_argument(std::string_view name, std::string_view family) {
  if (name.size() < family.size() + 3 || name.substr(0, family.size()) != family) return -1;
  if (name[family.size()] != '(' || name.back() != ')') return -1;
  const auto arg = name.substr(family.size() + 1, name.size() - family.size() - 2);
  if (arg.empty() || arg.size() > 4) return -1;
  int v = 0;
  for (char c : arg) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

QuiverPresentation corpus(std::string_view name) {
  if (name == "ex24") return ex24(3);
  if (name == "ex25") return ex25();
  if (name == "ex25_ringel_target") return ex25_ringel_target();
  if (int m = family_argument(name, "ex24"); m >= 1) return ex24(m);
  if (int n = family_argument(name, "directed_chain"); n >= 1) return directed_chain(n);
  if (int n = family_argument(name, "semisimple"); n >= 1) return semisimple(n);
  throw std::invalid_argument("unknown corpus entry '" + std::string(name) + "'");
}

std::vector<std::string> corpus_names() {
  return {"ex24", "ex24(m)", "ex25", "ex25_ringel_target", "directed_chain(n)", "semisimple(n)"};
}

}  // namespace qha
