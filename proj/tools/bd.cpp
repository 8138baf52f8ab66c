#include "bratteli/dsl.hpp"
#include "bratteli/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace bratteli;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUnknown = 2;
constexpr int kInputError = 3;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Holds: return kOk;
    case Verdict::Fails: return kNegative;
    case Verdict::Unknown: return kUnknown;
  }
  return kInputError;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SemanticError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Loaded {
  SourceDocument doc;
  Workspace ws;

  const PremorphismDecl& decl(const std::string& name) const {
    for (const Declaration& d : doc.declarations)
      if (const auto* p = std::get_if<PremorphismDecl>(&d); p && p->name == name) return *p;
    throw Error(ErrorKind::SemanticError, "no premorphism named '" + name + "'");
  }
};

Loaded load(const std::string& path) {
  Loaded l;
  l.doc = parse(read_file(path));
  l.ws = build(l.doc);
  return l;
}

std::size_t max_cells() {
  if (const char* env = std::getenv("BD_MAX_CELLS")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::SemanticError, "BD_MAX_CELLS must be a non-negative integer");
    }
  }
  return 1000000;
}

/// Total edge-matrix cells between levels `from` and `to`.
void check_cells(const Diagram& d, Index from, Index to) {
  if (d.is_zero()) return;
  const std::size_t cap = max_cells();
  std::size_t cells = 0;
  for (Index n = from; n < to && d.resolvable(n + 1); ++n) {
    cells += static_cast<std::size_t>(d.width(n) * d.width(n + 1));
    if (cells > cap)
      throw Error(ErrorKind::LimitExceeded,
                  "more than " + std::to_string(cap) + " matrix cells (raise BD_MAX_CELLS)");
  }
}

/// "n:[x1,...,xk]".
K0Class parse_class(const Diagram& d, const std::string& text) {
  static const std::regex shape(R"(\s*(\d+)\s*:\s*\[\s*(-?\d+(\s*,\s*-?\d+)*)\s*\]\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, shape))
    throw Error(ErrorKind::SyntaxError, "class must look like n:[x1,...,xk], got '" + text + "'");
  std::vector<BigInt> entries;
  std::stringstream items(m[2].str());
  for (std::string item; std::getline(items, item, ',');) entries.emplace_back(item);
  IntVector v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v(i) = entries[i];
  return make_class(d, std::stoul(m[1].str()), std::move(v));
}

PremorphismDecl to_decl(const Premorphism& p, std::string name, std::string source,
                        std::string target) {
  PremorphismDecl d;
  d.name = std::move(name);
  d.source = std::move(source);
  d.target = std::move(target);
  d.zero = p.is_trivial();
  if (!d.zero) {
    d.indices = p.window().indices;
    d.matrices = p.window().matrices;
    d.rule = p.rule();
  }
  return d;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Bratteli diagrams"};
  app.require_subcommand(1);
  std::string file, a, b, cert_file, out_file, class_text, op, op_arg;
  Index n = 0, m = 0, bound = 20, depth = 12;
  std::string def = "29";

  auto* check = app.add_subcommand("check", "validate all declarations");
  check->add_option("FILE", file)->required();

  auto* telescope = app.add_subcommand("telescope", "print E_{nm}");
  telescope->add_option("FILE", file)->required();
  telescope->add_option("NAME", a)->required();
  telescope->add_option("n", n)->required();
  telescope->add_option("m", m)->required();

  auto* compose_cmd = app.add_subcommand("compose", "print G o F");
  compose_cmd->add_option("FILE", file)->required();
  compose_cmd->add_option("F", a)->required();
  compose_cmd->add_option("G", b)->required();

  auto* equiv = app.add_subcommand("equiv", "decide equivalence of two premorphisms");
  equiv->add_option("FILE", file)->required();
  equiv->add_option("F", a)->required();
  equiv->add_option("G", b)->required();
  equiv->add_option("--def", def)->check(CLI::IsMember({"25", "29", "210"}));
  equiv->add_option("--bound", bound);

  auto* iso = app.add_subcommand("iso", "search for an intertwining certificate");
  iso->add_option("FILE", file)->required();
  iso->add_option("A", a)->required();
  iso->add_option("B", b)->required();
  iso->add_option("--depth", depth);
  iso->add_option("--out", out_file);

  auto* verify = app.add_subcommand("verify", "check an intertwining certificate");
  verify->add_option("FILE", file)->required();
  verify->add_option("A", a)->required();
  verify->add_option("B", b)->required();
  verify->add_option("--cert", cert_file)->required();

  auto* uhf = app.add_subcommand("uhf", "print the supernatural number");
  uhf->add_option("FILE", file)->required();
  uhf->add_option("A", a)->required();

  auto* k0 = app.add_subcommand("k0", "K0 class calculus");
  k0->add_option("FILE", file)->required();
  k0->add_option("A", a)->required();
  k0->add_option("--class", class_text)->required();
  k0->add_option("OP", op)->required()->check(CLI::IsMember({"equal", "positive", "scale", "push"}));
  k0->add_option("ARG", op_arg);
  k0->add_option("--bound", bound);

  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  dot->add_option("FILE", file)->required();
  dot->add_option("A", a)->required();
  dot->add_option("--depth", depth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const Loaded l = load(file);
    if (check->parsed()) {
      std::cout << "ok: " << l.ws.diagrams.size() << " diagrams, " << l.ws.premorphisms.size()
                << " premorphisms\n";
      return kOk;
    }
    if (telescope->parsed()) {
      const Diagram& d = *l.ws.diagram(a);
      check_cells(d, n, m);
      std::cout << format_matrix(d.telescope_matrix(n, m)) << "\n";
      return kOk;
    }
    if (compose_cmd->parsed()) {
      const PremorphismDecl &fd = l.decl(a), &gd = l.decl(b);
      const Premorphism h = compose(l.ws.premorphism(b), l.ws.premorphism(a));
      SourceDocument out;
      out.declarations.emplace_back(to_decl(h, b + "_after_" + a, fd.source, gd.target));
      std::cout << emit(out);
      return kOk;
    }
    if (equiv->parsed()) {
      const Premorphism &f = l.ws.premorphism(a), &g = l.ws.premorphism(b);
      check_cells(f.target(), 1, bound);
      const auto which = def == "25"   ? EquivalenceDefinition::Interleaving
                         : def == "29" ? EquivalenceDefinition::Pointwise
                                       : EquivalenceDefinition::Shifted;
      const EquivalenceResult r = equivalent(f, g, which, bound);
      print(to_json(r));
      return exit_code(r.verdict);
    }
    if (iso->parsed()) {
      const Diagram &x = *l.ws.diagram(a), &y = *l.ws.diagram(b);
      check_cells(x, 1, depth);
      check_cells(y, 1, depth);
      const IsoResult r = search_intertwining(x, y, depth);
      print(to_json(r));
      if (!out_file.empty() && r.certificate) {
        std::ofstream out(out_file);
        out << to_json(*r.certificate).dump(2) << "\n";
      }
      return exit_code(r.verdict);
    }
    if (verify->parsed()) {
      Json j = Json::parse(read_file(cert_file));
      if (j.contains("certificate")) j = j["certificate"];
      const IntertwiningCertificate c = certificate_from_json(j);
      const bool ok = verify_certificate(c, *l.ws.diagram(a), *l.ws.diagram(b));
      std::cout << (ok ? "valid" : "invalid") << "\n";
      return ok ? kOk : kNegative;
    }
    if (uhf->parsed()) {
      std::cout << to_string(uhf_invariant(*l.ws.diagram(a))) << "\n";
      return kOk;
    }
    if (k0->parsed()) {
      const Diagram& d = *l.ws.diagram(a);
      const K0Class c = parse_class(d, class_text);
      if (op == "push") {
        if (op_arg.empty()) throw Error(ErrorKind::SyntaxError, "push needs a target level");
        const Index to = std::stoul(op_arg);
        check_cells(d, c.level, to);
        std::cout << to_string(push(d, c, to)) << "\n";
        return kOk;
      }
      check_cells(d, c.level, bound);
      K0Decision r;
      if (op == "equal") {
        if (op_arg.empty()) throw Error(ErrorKind::SyntaxError, "equal needs a second class");
        r = class_equal(d, c, parse_class(d, op_arg), bound);
      } else if (op == "positive") {
        r = class_positive(d, c, bound);
      } else {
        r = class_in_scale(d, c, bound);
      }
      print(to_json(r));
      return exit_code(r.verdict);
    }
    if (dot->parsed()) {
      const Diagram& d = *l.ws.diagram(a);
      check_cells(d, 1, depth);
      std::cout << emit_dot(d, depth, a);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
