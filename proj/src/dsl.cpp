#include "bratteli/dsl.hpp"

#include <cctype>
#include <limits>
#include <set>
#include <sstream>

namespace bratteli {

bool operator==(const PremorphismDecl& a, const PremorphismDecl& b) {
  if (a.name != b.name || a.source != b.source || a.target != b.target || a.zero != b.zero ||
      a.indices != b.indices || a.rule != b.rule || a.matrices.size() != b.matrices.size())
    return false;
  for (std::size_t i = 0; i < a.matrices.size(); ++i)
    if (!same_matrix(a.matrices[i], b.matrices[i])) return false;
  return true;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error(ErrorKind::SyntaxError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), l, cl});
      advance(j - i);
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::Punct, "->", l, cl});
      advance(2);
    } else if (std::string_view("{}[]:,").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), l, cl});
      advance(1);
    } else {
      throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  SourceDocument document() {
    SourceDocument doc;
    while (peek().kind != Tok::End) {
      if (is("diagram")) doc.declarations.emplace_back(diagram());
      else if (is("premorphism")) doc.declarations.emplace_back(premorphism());
      else fail("expected 'diagram' or 'premorphism'");
    }
    return doc;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is(const char* text) const { return peek().kind != Tok::Int && peek().text == text; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, what + ", found " + found);
  }

  void expect(const char* text) {
    if (!is(text)) fail(std::string("expected '") + text + "'");
    ++pos_;
  }

  std::string name() {
    if (peek().kind != Tok::Ident) fail("expected a name");
    return toks_[pos_++].text;
  }

  BigInt integer() {
    if (peek().kind != Tok::Int) fail("expected an integer");
    return BigInt(toks_[pos_++].text);
  }

  Index index() {
    const Token& t = peek();
    const BigInt v = integer();
    if (v < 1 || v > BigInt(std::numeric_limits<long>::max()))
      throw ParseError(t.line, t.column, "index must be a positive integer");
    return v.convert_to<Index>();
  }

  std::vector<BigInt> vec() {
    expect("[");
    std::vector<BigInt> out{integer()};
    while (is(",")) {
      ++pos_;
      out.push_back(integer());
    }
    expect("]");
    return out;
  }

  LevelVector level() {
    const Token& t = peek();
    const std::vector<BigInt> v = vec();
    IntVector x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) x(i) = v[i];
    try {
      return LevelVector(std::move(x));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(t.line) + ", column " +
                                std::to_string(t.column) + ": " + e.detail());
    }
  }

  IntMatrix mat() {
    const Token& t = peek();
    expect("[");
    std::vector<std::vector<BigInt>> rows{vec()};
    while (is(",")) {
      ++pos_;
      rows.push_back(vec());
    }
    expect("]");
    for (const auto& r : rows)
      if (r.size() != rows[0].size()) throw ParseError(t.line, t.column, "ragged matrix rows");
    return make_matrix(rows, rows[0].size());
  }

  std::vector<LevelVector> levels() {
    std::vector<LevelVector> out{level()};
    while (is(",")) {
      ++pos_;
      out.push_back(level());
    }
    return out;
  }

  /// Possibly empty list; a matrix list starts with "[[".
  std::vector<IntMatrix> matrices() {
    std::vector<IntMatrix> out;
    if (!is("[")) return out;
    out.push_back(mat());
    while (is(",")) {
      ++pos_;
      out.push_back(mat());
    }
    return out;
  }

  DiagramDecl diagram() {
    expect("diagram");
    DiagramDecl d;
    d.name = name();
    expect("{");
    if (is("zero")) {
      ++pos_;
      d.presentation.zero = true;
      expect("}");
      return d;
    }
    expect("levels");
    expect(":");
    d.presentation.levels = levels();
    if (is("tail")) {
      ++pos_;
      expect("{");
      PeriodicTail tail;
      expect("levels");
      expect(":");
      tail.levels = levels();
      expect("edges");
      expect(":");
      tail.edges = matrices();
      expect("glue");
      expect(":");
      tail.glue = mat();
      if (is("scale")) {
        ++pos_;
        expect(":");
        const Token& t = peek();
        tail.scale = integer();
        if (tail.scale < 1) throw ParseError(t.line, t.column, "scale must be positive");
      }
      expect("}");
      d.presentation.tail = std::move(tail);
    }
    expect("edges");
    expect(":");
    d.presentation.edges = matrices();
    expect("}");
    return d;
  }

  PremorphismDecl premorphism() {
    expect("premorphism");
    PremorphismDecl p;
    p.name = name();
    expect(":");
    p.source = name();
    expect("->");
    p.target = name();
    expect("{");
    if (is("zero")) {
      ++pos_;
      p.zero = true;
      expect("}");
      return p;
    }
    expect("indices");
    expect(":");
    expect("[");
    p.indices.push_back(index());
    while (is(",")) {
      ++pos_;
      p.indices.push_back(index());
    }
    expect("]");
    expect("matrices");
    expect(":");
    p.matrices = matrices();
    if (is("period")) {
      ++pos_;
      expect(":");
      PeriodicRule rule;
      rule.period = index();
      expect(",");
      rule.shift = index();
      p.rule = rule;
    }
    expect("}");
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string join_levels(const std::vector<LevelVector>& levels) {
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i) out += (i ? ", " : "") + format_vector(levels[i].vector());
  return out;
}

std::string join_matrices(const std::vector<IntMatrix>& ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? ", " : "") + format_matrix(ms[i]);
  return out;
}

std::string with_space(const std::string& s) { return s.empty() ? s : " " + s; }

void emit_diagram(std::ostringstream& out, const DiagramDecl& d) {
  const DiagramPresentation& p = d.presentation;
  out << "diagram " << d.name << " {";
  if (p.zero) {
    out << " zero }\n";
    return;
  }
  out << "\n  levels: " << join_levels(p.levels) << "\n";
  if (p.tail) {
    out << "  tail {\n"
        << "    levels: " << join_levels(p.tail->levels) << "\n"
        << "    edges:" << with_space(join_matrices(p.tail->edges)) << "\n"
        << "    glue: " << format_matrix(p.tail->glue) << "\n";
    if (p.tail->scale != 1) out << "    scale: " << p.tail->scale << "\n";
    out << "  }\n";
  }
  out << "  edges:" << with_space(join_matrices(p.edges)) << "\n}\n";
}

void emit_premorphism(std::ostringstream& out, const PremorphismDecl& p) {
  out << "premorphism " << p.name << " : " << p.source << " -> " << p.target << " {";
  if (p.zero) {
    out << " zero }\n";
    return;
  }
  out << "\n  indices: [";
  for (std::size_t i = 0; i < p.indices.size(); ++i) out << (i ? "," : "") << p.indices[i];
  out << "]\n  matrices:" << with_space(join_matrices(p.matrices)) << "\n";
  if (p.rule) out << "  period: " << p.rule->period << ", " << p.rule->shift << "\n";
  out << "}\n";
}

std::string prefixed(const std::string& name, const Error& e) {
  return "in '" + name + "': " + e.detail();
}

}  // namespace

SourceDocument parse(std::string_view text) { return Parser(lex(text)).document(); }

std::string emit(const SourceDocument& doc) {
  std::ostringstream out;
  for (std::size_t i = 0; i < doc.declarations.size(); ++i) {
    if (i) out << "\n";
    std::visit(
        [&](const auto& decl) {
          if constexpr (std::is_same_v<std::decay_t<decltype(decl)>, DiagramDecl>)
            emit_diagram(out, decl);
          else
            emit_premorphism(out, decl);
        },
        doc.declarations[i]);
  }
  return out.str();
}

const DiagramPtr& Workspace::diagram(const std::string& name) const {
  auto it = diagrams.find(name);
  if (it == diagrams.end()) throw Error(ErrorKind::SemanticError, "no diagram named '" + name + "'");
  return it->second;
}

const Premorphism& Workspace::premorphism(const std::string& name) const {
  auto it = premorphisms.find(name);
  if (it == premorphisms.end())
    throw Error(ErrorKind::SemanticError, "no premorphism named '" + name + "'");
  return it->second;
}

Workspace build(const SourceDocument& doc) {
  Workspace ws;
  std::set<std::string> names;
  for (const Declaration& decl : doc.declarations) {
    if (const auto* d = std::get_if<DiagramDecl>(&decl)) {
      if (!names.insert(d->name).second)
        throw Error(ErrorKind::SemanticError, "duplicate name '" + d->name + "'");
      try {
        ws.diagrams.emplace(d->name, share(Diagram::validate(d->presentation)));
      } catch (const Error& e) {
        throw Error(e.kind(), prefixed(d->name, e), e.index());
      }
      continue;
    }
    const auto& p = std::get<PremorphismDecl>(decl);
    if (!names.insert(p.name).second)
      throw Error(ErrorKind::SemanticError, "duplicate name '" + p.name + "'");
    const DiagramPtr src = ws.diagram(p.source), tgt = ws.diagram(p.target);
    try {
      if (p.zero) {
        ws.premorphisms.emplace(p.name, Premorphism::zero(src, tgt));
      } else {
        ws.premorphisms.emplace(
            p.name, Premorphism::validate({src, tgt, p.indices, p.matrices, p.rule}));
      }
    } catch (const Error& e) {
      throw Error(e.kind(), prefixed(p.name, e), e.index());
    }
  }
  return ws;
}

std::string emit_dot(const Diagram& d, Index depth, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n";
  if (d.is_zero()) {
    out << "  \"0\" [label=\"0\"];\n}\n";
    return out.str();
  }
  if (!d.resolvable(depth))
    throw Error(ErrorKind::OutOfRange, "depth " + std::to_string(depth) + " is not resolvable",
                static_cast<long>(depth));
  for (Index n = 1; n <= depth; ++n) {
    const LevelVector v = d.level(n);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      out << "  L" << n << "_" << i + 1 << " [label=\"" << v[i] << "\"];\n";
  }
  for (Index n = 1; n < depth; ++n) {
    const IntMatrix& e = d.edge_matrix(n);
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      for (Eigen::Index i = 0; i < e.rows(); ++i)
        if (e(i, j) != 0)
          out << "  L" << n << "_" << j + 1 << " -> L" << n + 1 << "_" << i + 1 << " [label=\""
              << e(i, j) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bratteli
