#include "helpers.hpp"

#include <doctest.h>

using namespace bratteli;
using namespace bratteli::testing;

namespace {

/// Levels 1, 2, 4, ... and 1, 4, 16, ...
DiagramPtr b2() { return uhf_diagram({}, 2, {2}); }
DiagramPtr b4() { return uhf_diagram({}, 4, {4}); }

/// R_k = T_k = (2) at r_k = 2k, t_k = k + 1.
IntertwiningCertificate hand_certificate() {
  IntertwiningCertificate c;
  c.r = {2, 4, 6};
  c.t = {2, 3, 4};
  c.R = {M({{2}}), M({{2}}), M({{2}})};
  c.T = {M({{2}}), M({{2}})};
  return c;
}

IntertwiningCertificate self_certificate(const Diagram& d, Index depth) {
  IntertwiningCertificate c;
  for (Index k = 1; k <= depth; ++k) {
    c.r.push_back(k);
    c.t.push_back(k);
    c.R.push_back(identity(d.width(k)));
    if (k < depth) c.T.push_back(d.edge_matrix(k));
  }
  return c;
}

}  // namespace

TEST_CASE("factor_as_product enumerates exactly the valid pairs") {
  const MultiplicityMatrix e(M({{4}}), {1}, {6});
  const LevelVector mid{2};
  auto found = factor_as_product(e, mid);
  // Oracle: every pair of scalars up to 4.
  std::vector<std::pair<long, long>> oracle;
  for (long r = 1; r <= 4; ++r)
    for (long t = 1; t <= 4; ++t)
      if (t * r == 4 && r * 1 <= 2 && t * 2 <= 6) oracle.emplace_back(r, t);
  REQUIRE(found.size() == oracle.size());
  REQUIRE(found.size() == 1);
  CHECK(same_matrix(found[0].R, M({{2}})));
  CHECK(same_matrix(found[0].T, M({{2}})));

  const MultiplicityMatrix id(identity(2), {1, 2}, {1, 2});
  bool has_identity = false;
  for (const auto& f : factor_as_product(id, {1, 2}))
    has_identity |= same_matrix(f.R, identity(2)) && same_matrix(f.T, identity(2));
  CHECK(has_identity);

  CHECK(factor_as_product(MultiplicityMatrix(M({{4}}), {2}, {8}), {1}).empty());
}

TEST_CASE("certificate verification") {
  CHECK(verify_certificate(hand_certificate(), *b2(), *b4()));
  auto w = worked_example();
  CHECK(verify_certificate(self_certificate(*w, 3), *w, *w));
  auto bad = hand_certificate();
  bad.T[1] = M({{3}});
  CHECK_FALSE(verify_certificate(bad, *b2(), *b4()));
  bad = hand_certificate();
  bad.r[2] = 7;
  CHECK_FALSE(verify_certificate(bad, *b2(), *b4()));
  CHECK_THROWS_AS(verify_certificate(self_certificate(*w, 3), *w, *finite({{1}}, {})), Error);
}

TEST_CASE("search finds the periodic certificate for 2^infinity") {
  auto b = b2(), d = b4();
  auto r = search_intertwining(*b, *d, 12);
  REQUIRE(r.verdict == Verdict::Holds);
  REQUIRE(r.certificate);
  CHECK(r.certificate->closure == ClosureKind::Periodic);
  CHECK(verify_certificate(*r.certificate, *b, *d));
  CHECK(search_intertwining(*b, *d, 12).certificate->r == r.certificate->r);

  auto [f, g] = morphisms_from_certificate(*r.certificate, b, d);
  CHECK(f.is_periodic());
  auto gf = equivalent_def29(compose(g, f), identity_premorphism(b, 1), 20);
  CHECK(gf.verdict == Verdict::Holds);
  CHECK(gf.infinite);
  auto fg = equivalent_def29(compose(f, g), identity_premorphism(d, 1), 20);
  CHECK(fg.verdict == Verdict::Holds);
}

TEST_CASE("hand and self certificates give inverse morphisms") {
  auto b = b2(), d = b4();
  auto [f, g] = morphisms_from_certificate(hand_certificate(), b, d);
  CHECK(equivalent_def29(compose(g, f), identity_premorphism(b, 1), 20).verdict == Verdict::Holds);

  auto w = worked_example();
  auto [p, q] = morphisms_from_certificate(self_certificate(*w, 3), w, w);
  CHECK(equivalent_def29(p, identity_premorphism(w, p.window_depth()), 5).verdict ==
        Verdict::Holds);
  CHECK(equivalent_def29(compose(q, p), identity_premorphism(w, 2), 5).verdict == Verdict::Holds);

  auto bad = hand_certificate();
  bad.R[0] = M({{1}});
  try {
    morphisms_from_certificate(bad, b, d);
    FAIL("expected InvalidCertificate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidCertificate);
  }
}

TEST_CASE("obstructions") {
  auto r = search_intertwining(*b2(), *uhf_diagram({}, 3, {3}), 12);
  CHECK(r.verdict == Verdict::Fails);
  REQUIRE(r.obstruction);
  CHECK(r.obstruction->kind == "uhf-invariant");
  CHECK(r.obstruction->detail.find("prime 2") != std::string::npos);
  CHECK(check_obstruction(*r.obstruction, *b2(), *uhf_diagram({}, 3, {3})));

  auto z = share(Diagram::validate(DiagramPresentation::zero_diagram()));
  auto zr = search_intertwining(*z, *b2(), 12);
  CHECK(zr.verdict == Verdict::Fails);
  REQUIRE(zr.obstruction);
  CHECK(zr.obstruction->kind == "zero-mismatch");
  CHECK(search_intertwining(*z, *z, 12).verdict == Verdict::Holds);
}

TEST_CASE("search across presentations and UHF consistency") {
  Rng rng(21);
  int found = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto d = random_periodic(rng, 2);
    auto self = search_intertwining(*d, *d, 10);
    CHECK(self.verdict == Verdict::Holds);
    REQUIRE(self.certificate);
    CHECK(verify_certificate(*self.certificate, *d, *d));

    auto u = unroll(*d);
    CHECK_FALSE(*u == *d);
    auto r = search_intertwining(*d, *u, 10);
    CHECK(r.verdict != Verdict::Fails);
    if (r.certificate) {
      ++found;
      CHECK(verify_certificate(*r.certificate, *d, *u));
    }
  }
  CHECK(found >= 15);
  auto six = uhf_diagram({}, 6, {6});
  auto alt = uhf_diagram({}, 2, {3, 2});
  auto r = search_intertwining(*six, *alt, 12);
  CHECK(r.verdict == Verdict::Holds);
  REQUIRE(r.certificate);
  CHECK(verify_certificate(*r.certificate, *six, *alt));
}

TEST_CASE("truncated presentations stay unknown") {
  auto a = finite({{1}, {2}, {4}}, {M({{2}}), M({{2}})});
  auto b = finite({{1}, {4}}, {M({{4}})});
  CHECK(search_intertwining(*a, *b, 12).verdict == Verdict::Unknown);
}
