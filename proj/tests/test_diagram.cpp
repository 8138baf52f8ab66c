#include "helpers.hpp"

#include <doctest.h>

using namespace bratteli;
using namespace bratteli::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::SyntaxError;
}

}  // namespace

TEST_CASE("rank over the integers and rationals") {
  CHECK(rank(M({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(M({{0, 0}, {0, 0}})) == 0);
  CHECK(rank(M({{0, 1, 0}, {1, 0, 0}, {0, 0, 3}})) == 3);
  RatMatrix q(2, 2);
  q << Rational(1, 2), Rational(1, 3), Rational(3, 2), Rational(1);
  CHECK(rank(q) == 1);
}

TEST_CASE("big integers survive telescoping past 64 bits") {
  auto d = uhf_diagram({}, 2, {2});
  CHECK(d->telescope_matrix(1, 80)(0, 0) == ipow(2, 79));
  CHECK(d->level(70)[0] == ipow(2, 69));
}

TEST_CASE("worked example validates and telescopes") {
  auto d = worked_example();
  CHECK(d->width(2) == 2);
  CHECK(same_matrix(d->edge_matrix(2), M({{1, 2}})));
  CHECK(same_matrix(d->telescope_matrix(1, 3), M({{4}})));
  auto d2 = worked_example(M({{0}, {2}}));
  CHECK(same_matrix(d2->telescope_matrix(1, 3), M({{4}})));
  CHECK_FALSE(same_matrix(d->edge_matrix(1), d2->edge_matrix(1)));
  CHECK_FALSE(d->is_unital());
}

TEST_CASE("diagram validation errors") {
  CHECK(finite({{1}}, {})->depth() == 1);
  CHECK(kind_of([] { finite({{1}, {2}}, {M({{0}})}); }) == ErrorKind::NotEmbedding);
  CHECK(kind_of([] { finite({{1}, {2}}, {M({{3}})}); }) == ErrorKind::MultiplicityViolation);
  CHECK(kind_of([] { finite({{1}, {2}}, {M({{1, 1}})}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { finite({{1}, {2}}, {}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { LevelVector{0}; }) == ErrorKind::InvalidLevel);
  try {
    finite({{1, 1}, {1}}, {M({{1, 0}})});
    FAIL("expected NotEmbedding");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotEmbedding);
    CHECK(e.index() == 1);
  }
  try {
    finite({{2}, {1, 3}}, {M({{1}, {1}})});
    FAIL("expected MultiplicityViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MultiplicityViolation);
    CHECK(e.index() == 0);
  }
}

TEST_CASE("levels and edges resolve through the tail") {
  auto d = with_tail({{1}}, {}, {{2, 2}}, {M({{1, 0}, {0, 1}})}, M({{1}, {1}}));
  CHECK(d->level(7) == LevelVector{2, 2});
  CHECK(d->level(1) == LevelVector{1});
  CHECK(same_matrix(d->edge_matrix(9), identity(2)));
  CHECK(kind_of([&] { d->level(0); }) == ErrorKind::OutOfRange);
  auto f = worked_example();
  CHECK(kind_of([&] { f->level(4); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([&] { f->edge_matrix(0); }) == ErrorKind::OutOfRange);

  auto s = uhf_diagram({}, 2, {2});
  for (Index n = 2; n < 10; ++n) CHECK(same_matrix(s->edge_matrix(n), M({{2}})));
  CHECK(same_matrix(s->telescope_matrix(1, 4), M({{8}})));
  CHECK(s->is_unital());
}

TEST_CASE("telescope identities") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto d = random_periodic(rng);
    CHECK(same_matrix(d->telescope_matrix(3, 3), identity(d->width(3))));
    for (Index n = 1; n < 6; ++n)
      for (Index p = n; p < 8; ++p) {
        const Index m = p + 2;
        CHECK(same_matrix(d->telescope_matrix(n, m),
                          IntMatrix(d->telescope_matrix(p, m) * d->telescope_matrix(n, p))));
        CHECK(leq_componentwise(IntVector(d->telescope_matrix(n, m) * d->level(n).vector()),
                                d->level(m).vector()));
      }
    const Index q = d->period(), from = d->periodic_from();
    for (Index n = from; n < from + 4; ++n) {
      CHECK(same_matrix(d->edge_matrix(n + q), d->edge_matrix(n)));
      CHECK(d->level(n + q) == d->level(n).scaled(d->scale()));
    }
  }
}

TEST_CASE("mutating one entry is rejected") {
  const DiagramPresentation good = worked_example()->presentation();
  DiagramPresentation bad = good;
  bad.edges[1](0, 1) = 3;
  CHECK_THROWS_AS(Diagram::validate(bad), Error);
  bad = good;
  bad.edges[0](0, 0) = 3;
  CHECK_THROWS_AS(Diagram::validate(bad), Error);
}

TEST_CASE("zero diagram conventions") {
  auto z = share(Diagram::validate(DiagramPresentation::zero_diagram()));
  CHECK(z->is_zero());
  CHECK(z->is_unital());
  CHECK_THROWS_AS(z->level(1), Error);
}
