#include "helpers.hpp"

#include <doctest.h>

using namespace bratteli;
using namespace bratteli::testing;

namespace {

DiagramPtr twos() { return uhf_diagram({}, 2, {2}); }

/// Levels (1,1), (2,2), (4,4), ... with edges [[1,1],[1,1]].
DiagramPtr all_ones() {
  return with_tail({{1, 1}}, {}, {{2, 2}}, {M({{1, 1}, {1, 1}})}, M({{1, 1}, {1, 1}}), 2);
}

}  // namespace

TEST_CASE("push") {
  auto d = twos();
  auto c = make_class(*d, 1, vec({1}));
  auto p = push(*d, c, 3);
  CHECK(p.level == 3);
  CHECK(same_matrix(p.vector, vec({4})));
  CHECK(same_matrix(push(*d, c, 1).vector, c.vector));
  CHECK(same_matrix(push(*all_ones(), make_class(*all_ones(), 1, vec({1, -1})), 2).vector,
                    vec({0, 0})));
  CHECK_THROWS_AS(push(*d, p, 2), Error);
  CHECK_THROWS_AS(make_class(*d, 1, vec({1, 1})), Error);
  CHECK(to_string(p) == "K0@3 [4]");
}

TEST_CASE("class equality") {
  auto d = twos();
  auto r = class_equal(*d, make_class(*d, 1, vec({1})), make_class(*d, 2, vec({2})), 10);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.level == 2);
  auto o = all_ones();
  CHECK(class_equal(*o, make_class(*o, 1, vec({1, -1})), make_class(*o, 1, vec({0, 0})), 10).verdict ==
        Verdict::Holds);
  auto n = class_equal(*d, make_class(*d, 1, vec({1})), make_class(*d, 1, vec({2})), 10);
  CHECK(n.verdict == Verdict::Fails);
  REQUIRE(n.certificate);
  // Oracle: the difference -2^{m-1} is nonzero at every level checked.
  for (Index m = 1; m <= 50; ++m) CHECK(push(*d, make_class(*d, 1, vec({-1})), m).vector(0) != 0);
}

TEST_CASE("positivity and scale") {
  auto d = twos();
  for (auto e : {twos(), all_ones(), worked_example()}) {
    IntVector one = IntVector::Zero(e->width(1));
    one(0) = 1;
    CHECK(class_positive(*e, make_class(*e, 1, one), 3).verdict == Verdict::Holds);
    CHECK(class_in_scale(*e, make_class(*e, 1, one), 3).verdict == Verdict::Holds);
  }
  CHECK(class_positive(*d, make_class(*d, 1, vec({-1})), 20).verdict == Verdict::Fails);
  for (Index m = 1; m <= 20; ++m)
    CHECK(push(*d, make_class(*d, 1, vec({5})), m).vector(0) > d->level(m)[0]);
  CHECK(class_in_scale(*d, make_class(*d, 1, vec({5})), 20).verdict == Verdict::Fails);
  CHECK(class_in_scale(*d, make_class(*d, 1, vec({-1})), 20).verdict == Verdict::Fails);

  // (1,-1) pushes to zero, which lies in the scale.
  auto o = all_ones();
  CHECK(class_positive(*o, make_class(*o, 1, vec({1, -1})), 5).verdict == Verdict::Holds);
  CHECK(class_in_scale(*o, make_class(*o, 1, vec({1, -1})), 5).verdict == Verdict::Holds);
}

TEST_CASE("induced maps") {
  auto d = twos();
  auto c = make_class(*d, 2, vec({3}));
  auto id = identity_premorphism(d, 1);
  auto ic = induced_map(id, c);
  CHECK(ic.level == 2);
  CHECK(same_matrix(ic.vector, c.vector));

  auto b = uhf_diagram({}, 2, {2});
  auto t = uhf_diagram({}, 4, {4});
  PremorphismWindow w{b, t, {}, {}, std::nullopt};
  for (Index n = 1; n <= 4; ++n) {
    w.indices.push_back(n);
    w.matrices.push_back(IntMatrix::Constant(1, 1, t->level(n)[0] / b->level(n)[0]));
  }
  auto f = Premorphism::validate(w);
  auto img = induced_map(f, make_class(*b, 3, vec({1})));
  CHECK(img.level == 3);
  CHECK(same_matrix(img.vector, vec({4})));

  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    auto e = random_periodic(rng);
    auto g = shift_premorphism(e, uniform(rng, 0, 2));
    auto h = shift_premorphism(e, uniform(rng, 0, 2));
    IntVector x(e->width(2));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = uniform(rng, -3, 3);
    auto k = make_class(*e, 2, x);
    CHECK(class_equal(*e, induced_map(compose(h, g), k), induced_map(h, induced_map(g, k)), 20)
              .verdict == Verdict::Holds);
    CHECK(class_equal(*e, induced_map(g, k), induced_map(h, k), 20).verdict == Verdict::Holds);
  }
}
