#include "helpers.hpp"

#include <doctest.h>

using namespace bratteli;
using namespace bratteli::testing;

namespace {

const char* kWorked = "diagram B { levels: [1],[2,2],[6] edges: [[2],[1]], [[1,2]] }";

DiagramDecl random_diagram_decl(Rng& rng, int i) {
  DiagramDecl d;
  d.name = "D" + std::to_string(i);
  if (uniform(rng, 0, 5) == 0) {
    d.presentation = DiagramPresentation::zero_diagram();
  } else {
    d.presentation = random_periodic(rng)->presentation();
    if (uniform(rng, 0, 2) == 0) d.presentation.tail.reset();
  }
  return d;
}

PremorphismDecl random_premorphism_decl(Rng& rng, int i) {
  PremorphismDecl p;
  p.name = "f" + std::to_string(i);
  p.source = "D0";
  p.target = "D1";
  if (uniform(rng, 0, 4) == 0) {
    p.zero = true;
    return p;
  }
  for (long n = uniform(rng, 0, 3); n >= 0; --n) {
    p.indices.push_back(uniform(rng, 1, 9));
    p.matrices.push_back(random_embedding(rng, uniform(rng, 1, 3), uniform(rng, 1, 3), 4));
  }
  if (uniform(rng, 0, 1)) p.rule = PeriodicRule{static_cast<Index>(uniform(rng, 1, 3)),
                                                static_cast<Index>(uniform(rng, 1, 3))};
  return p;
}

}  // namespace

TEST_CASE("the worked example parses") {
  auto doc = parse(kWorked);
  REQUIRE(doc.declarations.size() == 1);
  auto ws = build(doc);
  CHECK(*ws.diagram("B") == *worked_example());
  CHECK(same_matrix(ws.diagram("B")->telescope_matrix(1, 3), M({{4}})));
}

TEST_CASE("zero diagrams and premorphisms") {
  auto ws = build(parse(R"(
    diagram Z { zero }
    // trailing comment
    diagram T { levels: [1] tail { levels: [2] edges: [[2]] glue: [[2]] scale: 2 } edges: }
    premorphism z : Z -> T { zero }
    premorphism s : T -> T { indices: [2,3,4] matrices: [[1]],[[1]],[[1]] period: 1, 1 }
  )"));
  CHECK(ws.diagram("Z")->is_zero());
  CHECK(ws.premorphism("z").is_trivial());
  CHECK(ws.premorphism("s").index_at(10) == 11);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("diagram B { levels: [1],[2 2],[6] edges: [[2],[1]], [[1,2]] }");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.line() == 1);
    CHECK(e.column() == 28);
  }
  try {
    parse("diagram B {\n  levels: [1]\n  edges: [[1]] [[2]]\n}");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 16);
  }
}

TEST_CASE("semantic errors name the declaration") {
  try {
    build(parse("diagram B { levels: [1],[2] edges: [[3]] }"));
    FAIL("expected MultiplicityViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultiplicityViolation);
    CHECK(std::string(e.what()).find("in 'B'") != std::string::npos);
  }
  CHECK_THROWS_AS(build(parse("diagram B { zero } diagram B { zero }")), Error);
  CHECK_THROWS_AS(build(parse("premorphism f : A -> B { zero }")), Error);
}

TEST_CASE("emit and parse round-trip") {
  auto doc = parse(kWorked);
  CHECK(parse(emit(doc)) == doc);
  CHECK(emit(parse(emit(doc))) == emit(doc));
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    SourceDocument d;
    for (int i = 0; i < 3; ++i) d.declarations.emplace_back(random_diagram_decl(rng, i));
    for (int i = 0; i < 2; ++i) d.declarations.emplace_back(random_premorphism_decl(rng, i));
    CHECK(parse(emit(d)) == d);
  }
}

TEST_CASE("DOT output") {
  const std::string expected =
      "digraph B {\n"
      "  rankdir=LR;\n"
      "  L1_1 [label=\"1\"];\n"
      "  L2_1 [label=\"2\"];\n"
      "  L2_2 [label=\"2\"];\n"
      "  L3_1 [label=\"6\"];\n"
      "  L1_1 -> L2_1 [label=\"2\"];\n"
      "  L1_1 -> L2_2 [label=\"1\"];\n"
      "  L2_1 -> L3_1 [label=\"1\"];\n"
      "  L2_2 -> L3_1 [label=\"2\"];\n"
      "}\n";
  auto d = worked_example();
  CHECK(emit_dot(*d, 3) == expected);
  CHECK(emit_dot(*d, 3) == emit_dot(*d, 3));
  CHECK(emit_dot(*d, 1).find("->") == std::string::npos);
  auto z = Diagram::validate(DiagramPresentation::zero_diagram());
  CHECK(emit_dot(z, 3).find("\"0\" [label=\"0\"]") != std::string::npos);
  CHECK_THROWS_AS(emit_dot(*d, 4), Error);
}
