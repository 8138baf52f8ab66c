#ifndef BRATTELI_DSL_HPP
#define BRATTELI_DSL_HPP

#include "bratteli/morphism.hpp"

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bratteli {

struct DiagramDecl {
  std::string name;
  DiagramPresentation presentation;

  friend bool operator==(const DiagramDecl& a, const DiagramDecl& b) {
    return a.name == b.name && a.presentation == b.presentation;
  }
};

struct PremorphismDecl {
  std::string name;
  std::string source;
  std::string target;
  bool zero = false;
  std::vector<Index> indices;
  std::vector<IntMatrix> matrices;
  std::optional<PeriodicRule> rule;

  friend bool operator==(const PremorphismDecl& a, const PremorphismDecl& b);
};

using Declaration = std::variant<DiagramDecl, PremorphismDecl>;

struct SourceDocument {
  std::vector<Declaration> declarations;

  friend bool operator==(const SourceDocument& a, const SourceDocument& b) {
    return a.declarations == b.declarations;
  }
};

/// SyntaxError carrying a 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Throws ParseError.
SourceDocument parse(std::string_view text);

/// Canonical text; parse(emit(doc)) == doc.
std::string emit(const SourceDocument& doc);

/// Validated declarations by name.
struct Workspace {
  std::map<std::string, DiagramPtr> diagrams;
  std::map<std::string, Premorphism> premorphisms;

  const DiagramPtr& diagram(const std::string& name) const;
  const Premorphism& premorphism(const std::string& name) const;
};

/// Validates every declaration in order. Throws SemanticError for duplicate
/// or unresolved names; validation errors are rethrown with the declaration
/// name prepended.
Workspace build(const SourceDocument& doc);

/// Graphviz rendering of levels 1..depth; nodes are named `L<n>_<i>`.
/// Throws OutOfRange.
std::string emit_dot(const Diagram& d, Index depth, const std::string& name = "B");

}  // namespace bratteli

#endif  // BRATTELI_DSL_HPP
